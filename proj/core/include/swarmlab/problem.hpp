#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmlab {

class RandomSource;

using Vector = std::vector<double>;

/// Objective and constraint callables. Constraints are inequality functions
/// g(x) <= 0; a positive return value is the violation magnitude.
using Objective = std::function<double(const Vector&)>;
using Constraint = std::function<double(const Vector&)>;

/// Thrown when an objective produces a non-finite value; carries the
/// offending position so the failure is diagnosable.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string message, Vector position)
      : std::runtime_error(std::move(message)), position_(std::move(position)) {}

  const Vector& position() const noexcept { return position_; }

 private:
  Vector position_;
};

/// Known optimum of a problem, used for reporting and for benchmark
/// self-checks; not consulted by the optimizers.
struct OptimumInfo {
  Vector position;
  double value = 0.0;
};

/// A box-constrained minimization problem. Bounds are per-coordinate and may
/// be degenerate (lower == upper pins that coordinate); lower > upper is
/// rejected. Additional inequality constraints are folded into the fitness by
/// a static penalty (see PenaltyConfig / evaluate).
class Problem {
 public:
  Problem(std::size_t dimension, Vector lower_bounds, Vector upper_bounds,
          Objective objective, std::vector<Constraint> constraints = {},
          std::optional<OptimumInfo> known_optimum = std::nullopt);

  std::size_t dimension() const noexcept { return dimension_; }
  const Vector& lower_bounds() const noexcept { return lower_; }
  const Vector& upper_bounds() const noexcept { return upper_; }
  double width(std::size_t i) const { return upper_[i] - lower_[i]; }

  double objective(const Vector& x) const { return objective_(x); }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  const std::optional<OptimumInfo>& known_optimum() const noexcept { return optimum_; }

 private:
  std::size_t dimension_;
  Vector lower_;
  Vector upper_;
  Objective objective_;
  std::vector<Constraint> constraints_;
  std::optional<OptimumInfo> optimum_;
};

/// Static penalty: fitness = objective + coefficient * sum(max(0, g_j)^exponent).
/// The coefficient is fixed for a run (no adaptive schedule).
struct PenaltyConfig {
  double coefficient = 1e3;
  double exponent = 2.0;

  PenaltyConfig() = default;
  PenaltyConfig(double coefficient_, double exponent_);

  friend bool operator==(const PenaltyConfig&, const PenaltyConfig&) = default;
};

/// Monotone evaluation counter: +1 per objective evaluation, never reset.
/// Evaluation counts are the budget currency for every experiment.
class EvaluationCounter {
 public:
  std::uint64_t count() const noexcept { return count_; }

  /// Index assigned to the evaluation being recorded (0-based).
  std::uint64_t record() noexcept { return count_++; }

 private:
  std::uint64_t count_ = 0;
};

/// One evaluated point: position, penalized fitness, and the global order in
/// which the evaluation happened (ties between equal fitness values are
/// broken toward the earlier index).
struct EvaluatedSolution {
  Vector position;
  double fitness = 0.0;
  std::uint64_t evaluation_index = 0;
};

/// Penalized objective value of `position`; increments `counter` by exactly
/// one. Throws EvaluationError when the result is non-finite.
double evaluate(const Problem& problem, const Vector& position,
                const PenaltyConfig& penalty, EvaluationCounter& counter);

/// Coordinate-wise projection onto the problem box. Idempotent.
Vector clamp_to_bounds(Vector position, const Problem& problem);

/// n positions drawn coordinate-wise uniformly inside the box. n = 0 is an
/// error (an empty population cannot seed any optimizer).
std::vector<Vector> init_population(const Problem& problem, std::size_t n,
                                    RandomSource& rng);

/// Counted evaluator with best-so-far tracking. All optimizer evaluations go
/// through one of these, which is what makes "global best = minimum over
/// every evaluation ever made" hold even for candidates an algorithm rejects.
class Evaluator {
 public:
  Evaluator(const Problem& problem, PenaltyConfig penalty)
      : problem_(&problem), penalty_(penalty) {}

  EvaluatedSolution evaluate(Vector position);

  std::uint64_t evaluations() const noexcept { return counter_.count(); }
  const std::optional<EvaluatedSolution>& best() const noexcept { return best_; }
  const Problem& problem() const noexcept { return *problem_; }
  const PenaltyConfig& penalty() const noexcept { return penalty_; }

 private:
  const Problem* problem_;
  PenaltyConfig penalty_;
  EvaluationCounter counter_;
  std::optional<EvaluatedSolution> best_;
};

}  // namespace swarmlab
