#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "swarmlab/problem.hpp"
#include "swarmlab/random.hpp"
#include "swarmlab/run_record.hpp"

namespace swarmlab {

// One member of a population.  Only some algorithms use the auxiliary
// fields: velocity is kept by the two velocity-based methods (empty
// otherwise), personal_best only by plain particle-swarm, and the
// loudness/pulse_rate pair only by the bat method.
struct Agent {
    Vector position;
    Vector velocity;
    std::optional<EvaluatedSolution> personal_best;
    double loudness = 0.0;
    double pulse_rate = 0.0;
    double fitness = 0.0;
};

// Full algorithm state between steps.  `global_best` is the best of every
// evaluation performed so far in the run (not merely the best current agent),
// so its fitness is non-increasing over time by construction.  `noise_scale`
// carries the current randomness amplitude for the two methods with a decay
// schedule (accelerated swarm, firefly); it is zero elsewhere.
struct OptimizerState {
    std::vector<Agent> agents;
    EvaluatedSolution global_best;
    std::uint64_t iteration = 0;
    double noise_scale = 0.0;
    std::uint64_t last_step_evaluations = 0;
};

// ---------------------------------------------------------------------------
// Per-algorithm parameter sets.  Field ranges are enforced by validate(),
// which every factory calls; out-of-range values raise std::invalid_argument.
// ---------------------------------------------------------------------------

struct PsoParams {
    double global_weight = 0.1;    // pull toward the swarm-wide best, in [0, 2]
    double personal_weight = 0.1;  // pull toward the agent's own best, in [0, 2]

    void validate() const;
    friend bool operator==(const PsoParams&, const PsoParams&) = default;
};

struct ApsoParams {
    double attraction = 0.3;   // convex-combination weight toward the global best, in [0, 1]
    double noise_init = 1.0;   // initial noise amplitude, >= 0
    double noise_decay = 0.97; // geometric decay per iteration, in (0, 1)

    void validate() const;
    friend bool operator==(const ApsoParams&, const ApsoParams&) = default;
};

struct BatParams {
    double freq_min = 0.0;
    double freq_max = 2.0;           // must satisfy freq_min <= freq_max
    double loudness_decay = 0.9;     // multiplies loudness on each accepted move, in (0, 1)
    double pulse_growth = 0.9;       // rate at which pulse emission saturates, > 0
    double loudness_init = 1.0;      // > 0
    double pulse_rate_cap = 0.5;     // asymptotic pulse rate, in [0, 1]
    // The velocity update as published moves an agent away from the best
    // position when the frequency is positive; flipping this steers toward
    // it instead.  Default keeps the published direction.
    bool steer_toward_best = false;

    void validate() const;
    friend bool operator==(const BatParams&, const BatParams&) = default;
};

struct FireflyParams {
    double attractiveness = 1.0; // brightness pull at zero distance, >= 0
    double absorption = 1.0;     // distance falloff of the pull, >= 0
    double noise_init = 0.5;     // initial random-walk amplitude, >= 0
    double noise_decay = 0.97;   // geometric decay per iteration, in (0, 1)

    void validate() const;
    friend bool operator==(const FireflyParams&, const FireflyParams&) = default;
};

struct CuckooParams {
    double discovery_rate = 0.25;          // fraction of local moves that fire, in [0, 1]
    // Scale of the heavy-tailed global step.  Unset means 1% of the domain
    // width, chosen per coordinate; an explicit value applies uniformly.
    std::optional<double> step_scale;      // >= 0 when set
    double local_step_scale = 1.0;         // scale of the pairwise local move, >= 0
    double tail_exponent = 1.5;            // heavy-tail exponent, in (1, 2)

    void validate() const;
    friend bool operator==(const CuckooParams&, const CuckooParams&) = default;
};

struct FpaParams {
    double global_probability = 0.8; // chance an agent takes the global move, in [0, 1]
    double step_scale = 0.1;         // scale on the heavy-tailed global step, > 0
    double tail_exponent = 1.5;      // heavy-tail exponent, in (1, 2)

    void validate() const;
    friend bool operator==(const FpaParams&, const FpaParams&) = default;
};

using AlgoParams =
    std::variant<PsoParams, ApsoParams, BatParams, FireflyParams, CuckooParams, FpaParams>;

// ---------------------------------------------------------------------------
// The common stepping interface.  An Optimizer is immutable once built; all
// run-to-run state lives in OptimizerState, so the same instance can drive
// any number of concurrent runs.
// ---------------------------------------------------------------------------

class Optimizer {
  public:
    virtual ~Optimizer() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual std::size_t min_population() const { return 1; }

    // Draws `population` uniform positions, evaluates them, and returns a
    // ready-to-step state.  Costs exactly `population` evaluations.
    [[nodiscard]] OptimizerState initialize(const Problem& problem,
                                            std::size_t population,
                                            Evaluator& evaluator,
                                            RandomSource& rng) const;

    // Builds a state from already-evaluated solutions without spending any
    // evaluations — the hand-off path between stages of a combined run.
    // Auxiliary fields (velocities, personal bests, loudness schedules) are
    // reset to their initial values and the iteration counter starts at
    // zero, so schedules restart.  `carried_best` folds a previous stage's
    // global best into the new state even if no agent sits on it.
    [[nodiscard]] OptimizerState adopt(const Problem& problem,
                                       std::vector<EvaluatedSolution> population,
                                       std::optional<EvaluatedSolution> carried_best) const;

    // Advances the state by one iteration.  Implementations keep every
    // position inside the problem's bounds, fold each evaluation into
    // `state.global_best`, set `state.last_step_evaluations`, and increment
    // `state.iteration` exactly once.
    virtual void step(OptimizerState& state,
                      const Problem& problem,
                      Evaluator& evaluator,
                      RandomSource& rng) const = 0;

  protected:
    // Per-algorithm hook: fill in auxiliary agent fields and the noise
    // schedule on a freshly built state.
    virtual void reset_aux(OptimizerState& state, const Problem& problem) const;
};

// Folds one evaluation result into the state's running global best (strict
// improvement only, so ties keep the earliest evaluation).
void update_global_best(OptimizerState& state, const EvaluatedSolution& candidate);

// The bat method's per-acceptance schedule update: returns the new
// (loudness, pulse_rate) pair after an accepted move at iteration t, i.e.
// (loudness_decay * loudness, pulse_rate_cap * (1 - exp(-pulse_growth * t))).
// Requires loudness_decay in (0,1) and pulse_growth > 0.
[[nodiscard]] std::pair<double, double> bat_schedules(double loudness,
                                                      double pulse_rate_cap,
                                                      double loudness_decay,
                                                      double pulse_growth,
                                                      std::uint64_t t);

// The firefly attraction move with the random-walk term switched off:
// xi + attractiveness * exp(-absorption * r^2) * (xj - xi), r the Euclidean
// distance between the two.  Exposed on its own because the map is a useful
// analysis object (it is nonlinear in xj) as well as the core of the step.
[[nodiscard]] Vector firefly_attraction_move(const Vector& xi,
                                             const Vector& xj,
                                             double attractiveness,
                                             double absorption);

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

// Canonical algorithm names: {"pso", "apso", "bat", "firefly", "cuckoo", "fpa"}.
[[nodiscard]] const std::vector<std::string>& algorithm_names();

// Default parameter set for a canonical name; unknown name → invalid_argument.
[[nodiscard]] AlgoParams default_params(const std::string& name);

// Builds the optimizer for a parameter set (validating it), or for a
// canonical name with that algorithm's defaults.
[[nodiscard]] std::unique_ptr<Optimizer> make_optimizer(const AlgoParams& params);
[[nodiscard]] std::unique_ptr<Optimizer> make_optimizer(const std::string& name);

// ---------------------------------------------------------------------------
// Run driver: initialize, then step until the budget is exhausted.  The
// budget is checked between steps, so an evaluation budget can be exceeded
// by at most one step's worth.  The trace gets one row for the initial
// population and one per completed iteration.
// ---------------------------------------------------------------------------

[[nodiscard]] RunRecord run(const Optimizer& optimizer,
                            const Problem& problem,
                            std::size_t population,
                            const Budget& budget,
                            RandomSource& rng,
                            const PenaltyConfig& penalty = {});

}  // namespace swarmlab
