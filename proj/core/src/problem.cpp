#include "swarmlab/problem.hpp"

#include <cmath>
#include <utility>

#include "swarmlab/random.hpp"

namespace swarmlab {

Problem::Problem(std::size_t dimension, Vector lower_bounds, Vector upper_bounds,
                 Objective objective, std::vector<Constraint> constraints,
                 std::optional<OptimumInfo> known_optimum)
    : dimension_(dimension),
      lower_(std::move(lower_bounds)),
      upper_(std::move(upper_bounds)),
      objective_(std::move(objective)),
      constraints_(std::move(constraints)),
      optimum_(std::move(known_optimum)) {
  if (dimension_ == 0) {
    throw std::invalid_argument("Problem: dimension must be positive");
  }
  if (lower_.size() != dimension_ || upper_.size() != dimension_) {
    throw std::invalid_argument("Problem: bounds must match the dimension");
  }
  for (std::size_t i = 0; i < dimension_; ++i) {
    if (!(lower_[i] <= upper_[i])) {
      throw std::invalid_argument("Problem: lower bound exceeds upper bound");
    }
  }
  if (!objective_) {
    throw std::invalid_argument("Problem: objective must be callable");
  }
}

PenaltyConfig::PenaltyConfig(double coefficient_, double exponent_)
    : coefficient(coefficient_), exponent(exponent_) {
  if (!(coefficient > 0.0)) {
    throw std::invalid_argument("PenaltyConfig: coefficient must be positive");
  }
  if (!(exponent > 0.0)) {
    throw std::invalid_argument("PenaltyConfig: exponent must be positive");
  }
}

double evaluate(const Problem& problem, const Vector& position,
                const PenaltyConfig& penalty, EvaluationCounter& counter) {
  if (position.size() != problem.dimension()) {
    throw std::invalid_argument("evaluate: position size must match dimension");
  }
  counter.record();
  double value = problem.objective(position);
  for (const auto& g : problem.constraints()) {
    const double violation = g(position);
    if (violation > 0.0) {
      value += penalty.coefficient * std::pow(violation, penalty.exponent);
    }
  }
  if (!std::isfinite(value)) {
    throw EvaluationError("evaluate: objective value is not finite", position);
  }
  return value;
}

Vector clamp_to_bounds(Vector position, const Problem& problem) {
  if (position.size() != problem.dimension()) {
    throw std::invalid_argument("clamp_to_bounds: position size must match dimension");
  }
  const Vector& lo = problem.lower_bounds();
  const Vector& hi = problem.upper_bounds();
  for (std::size_t i = 0; i < position.size(); ++i) {
    if (position[i] < lo[i]) {
      position[i] = lo[i];
    } else if (position[i] > hi[i]) {
      position[i] = hi[i];
    }
  }
  return position;
}

std::vector<Vector> init_population(const Problem& problem, std::size_t n,
                                    RandomSource& rng) {
  if (n == 0) {
    throw std::invalid_argument("init_population: population size must be positive");
  }
  std::vector<Vector> population(n, Vector(problem.dimension()));
  for (auto& x : population) {
    for (std::size_t d = 0; d < problem.dimension(); ++d) {
      x[d] = rng.uniform(problem.lower_bounds()[d], problem.upper_bounds()[d]);
    }
  }
  return population;
}

EvaluatedSolution Evaluator::evaluate(Vector position) {
  const std::uint64_t index = counter_.count();
  const double fitness = swarmlab::evaluate(*problem_, position, penalty_, counter_);
  EvaluatedSolution solution{std::move(position), fitness, index};
  if (!best_ || solution.fitness < best_->fitness) {
    best_ = solution;  // strict <: ties keep the earlier evaluation
  }
  return solution;
}

}  // namespace swarmlab
