#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swarmlab/optimizer.hpp"
#include "swarmlab/problem.hpp"
#include "swarmlab/random.hpp"
#include "swarmlab/run_record.hpp"

namespace swarmlab {

struct HybridSpec;

// One constituent of a hybrid.  Exactly one of `algorithm` / `nested` is
// used: plain stages name a registry algorithm (with optional non-default
// parameters), while sequential composites may instead embed a whole nested
// spec as a stage.  Which of the share/probability/subpopulation fields is
// read depends on the enclosing structure.
struct HybridStage {
    std::string algorithm;
    std::optional<AlgoParams> params;          // unset → registry defaults
    double budget_share = 0.0;                 // sequential: fraction of the evaluation budget
    double switch_probability = 0.0;           // parallel_switch: chance per iteration
    std::size_t subpopulation = 0;             // parallel_split: branch size
    std::shared_ptr<const HybridSpec> nested;  // sequential only
};

// A composite optimizer: run stages one after another (sequential), pick one
// algorithm at random each iteration to step the whole population
// (parallel_switch), or evolve disjoint subpopulations that are pooled,
// ranked and re-dealt every merge_period iterations (parallel_split).
// Sequential stages may themselves be hybrid specs, up to three levels deep.
struct HybridSpec {
    enum class Structure { sequential, parallel_switch, parallel_split };

    Structure structure = Structure::sequential;
    std::vector<HybridStage> stages;
    std::uint64_t merge_period = 10;  // parallel_split only

    [[nodiscard]] static HybridSpec::Structure structure_from_name(const std::string& name);
    [[nodiscard]] static std::string structure_name(Structure structure);
};

// Deep structural equality (nested specs compared by value, not pointer).
[[nodiscard]] bool operator==(const HybridStage& a, const HybridStage& b);
[[nodiscard]] bool operator==(const HybridSpec& a, const HybridSpec& b);

// Nesting depth of a spec (a flat spec has depth 1).  Anything past 3 is
// rejected by the runners.
[[nodiscard]] int hybrid_depth(const HybridSpec& spec);

// Stage handover keeps positions, fitness values and the global best;
// per-agent extras (velocities, personal bests, loudness schedules) restart
// under each entering algorithm's own rules, as do iteration-indexed noise
// schedules.  Stage budgets are llround(share * total) evaluations, with
// rounding remainder absorbed by the final stage; a step in progress is
// never cut short, so a stage may eat a step's worth of its successor's
// budget.  Trace rows are labelled "<stage index>:<algorithm>".
[[nodiscard]] RunRecord run_sequential(const HybridSpec& spec,
                                       const Problem& problem,
                                       std::size_t population,
                                       std::uint64_t total_evaluations,
                                       RngStream rng,
                                       const PenaltyConfig& penalty = {});

// Per iteration, one algorithm is chosen by cumulative switch probability
// and steps the full shared population.  Every algorithm's auxiliary agent
// state survives between its activations (slot-indexed: extras stay attached
// to the agent slot even if another algorithm reorders or moves the
// occupants).  Stepping consumes rng.child(0); switching consumes
// rng.child(1), so the chosen-algorithm sequence is independent of how many
// draws each step makes.  Trace rows are labelled with the chosen algorithm.
[[nodiscard]] RunRecord run_parallel_switch(const HybridSpec& spec,
                                            const Problem& problem,
                                            std::size_t population,
                                            const Budget& budget,
                                            RngStream rng,
                                            const PenaltyConfig& penalty = {});

// Branch k draws from rng.child(k); the shared initial population is drawn
// from rng.child(0) before branch 0 continues on that same stream, which
// makes a single-branch split bit-identical to the pure algorithm run seeded
// with rng.child(0).  Branches step in lockstep; every merge_period
// iterations the pool is ranked (stable on fitness) and dealt round-robin,
// so each branch restarts with a fair share of the best agents and the
// merged global best.
[[nodiscard]] RunRecord run_parallel_split(const HybridSpec& spec,
                                           const Problem& problem,
                                           std::size_t population,
                                           const Budget& budget,
                                           RngStream rng,
                                           const PenaltyConfig& penalty = {});

// Dispatch on spec.structure.  Sequential specs require budget.max_evaluations
// (shares are defined over evaluations).
[[nodiscard]] RunRecord run_hybrid(const HybridSpec& spec,
                                   const Problem& problem,
                                   std::size_t population,
                                   const Budget& budget,
                                   RngStream rng,
                                   const PenaltyConfig& penalty = {});

// The merge primitive of run_parallel_split, exposed on its own: stable-sort
// the pool by fitness and deal it round-robin into slices of the given
// sizes.  Conserves the multiset of solutions.
[[nodiscard]] std::vector<std::vector<EvaluatedSolution>> rank_and_deal(
    std::vector<EvaluatedSolution> pool, const std::vector<std::size_t>& partition);

// Exact binomial coefficient C(n, k) via the multiplicative formula, exact
// at every intermediate step.  Throws std::invalid_argument for k > n and
// std::overflow_error when the value does not fit in 64 bits.
[[nodiscard]] std::uint64_t combination_count(std::uint64_t n, std::uint64_t k);

}  // namespace swarmlab
