#include "swarmlab/hybrid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

namespace swarmlab {
namespace {

constexpr int kMaxDepth = 3;

// What flows across a stage boundary: the evaluated population and the best
// evaluation made anywhere so far.
struct Flow {
    std::vector<EvaluatedSolution> population;
    std::optional<EvaluatedSolution> best;
};

Flow flow_from_state(const OptimizerState& state) {
    Flow flow;
    flow.population.reserve(state.agents.size());
    for (const Agent& agent : state.agents) {
        flow.population.push_back({agent.position, agent.fitness, 0});
    }
    flow.best = state.global_best;
    return flow;
}

void fold_best(std::optional<EvaluatedSolution>& overall, const EvaluatedSolution& candidate) {
    if (!overall || candidate.fitness < overall->fitness) overall = candidate;
}

std::unique_ptr<Optimizer> stage_optimizer(const HybridStage& stage) {
    if (stage.params) return make_optimizer(*stage.params);
    if (stage.algorithm.empty()) {
        throw std::invalid_argument("hybrid: stage needs an algorithm name or a nested spec");
    }
    return make_optimizer(stage.algorithm);
}

// Shared plumbing for one composite run: every evaluation in every stage and
// branch goes through the same Evaluator, and every iteration anywhere
// appends one row to the same trace with a monotone tick.
struct DriveContext {
    const Problem& problem;
    Evaluator& evaluator;
    std::vector<TraceRow>& trace;
    std::uint64_t tick = 0;

    [[nodiscard]] bool keep_going(std::uint64_t eval_limit,
                                  const std::optional<std::uint64_t>& iteration_limit) const {
        if (evaluator.evaluations() >= eval_limit) return false;
        if (iteration_limit && tick >= *iteration_limit) return false;
        return true;
    }

    void row(double best_fitness, const std::string& label) {
        trace.push_back({tick, evaluator.evaluations(), best_fitness, label});
    }
};

Flow drive(const HybridSpec& spec,
           DriveContext& ctx,
           std::size_t population,
           std::optional<Flow> incoming,
           RngStream rng,
           std::uint64_t eval_limit,
           std::optional<std::uint64_t> iteration_limit,
           const std::string& prefix);

Flow drive_sequential(const HybridSpec& spec,
                      DriveContext& ctx,
                      std::size_t population,
                      std::optional<Flow> incoming,
                      RngStream rng,
                      std::uint64_t eval_limit,
                      std::optional<std::uint64_t> iteration_limit,
                      const std::string& prefix) {
    if (spec.stages.size() < 2) {
        throw std::invalid_argument("hybrid: sequential composition needs at least two stages");
    }
    double share_sum = 0.0;
    for (const HybridStage& stage : spec.stages) {
        if (!(stage.budget_share >= 0.0)) {
            throw std::invalid_argument("hybrid: budget shares must be non-negative");
        }
        share_sum += stage.budget_share;
    }
    if (std::abs(share_sum - 1.0) > 1e-12) {
        throw std::invalid_argument("hybrid: budget shares must sum to 1");
    }

    const std::uint64_t spent = ctx.evaluator.evaluations();
    const std::uint64_t total = eval_limit > spent ? eval_limit - spent : 0;
    std::vector<std::uint64_t> stage_limits(spec.stages.size());
    std::uint64_t assigned = 0;
    for (std::size_t k = 0; k < spec.stages.size(); ++k) {
        const bool last = k + 1 == spec.stages.size();
        const auto stage_evals =
            last ? (assigned <= total ? total - assigned : 0)
                 : static_cast<std::uint64_t>(
                       std::llround(spec.stages[k].budget_share * static_cast<double>(total)));
        if (stage_evals == 0) {
            throw std::invalid_argument("hybrid: stage budget rounds to zero evaluations");
        }
        assigned += stage_evals;
        stage_limits[k] = spent + std::min(assigned, total);
    }

    Flow flow;
    bool have_flow = false;
    if (incoming) {
        flow = std::move(*incoming);
        have_flow = true;
    }

    for (std::size_t k = 0; k < spec.stages.size(); ++k) {
        const HybridStage& stage = spec.stages[k];
        if (stage.nested) {
            std::optional<Flow> handoff;
            if (have_flow) handoff = std::move(flow);
            flow = drive(*stage.nested, ctx, population, std::move(handoff), rng.child(k),
                         stage_limits[k], iteration_limit,
                         prefix + std::to_string(k) + ":");
            have_flow = true;
            continue;
        }

        auto optimizer = stage_optimizer(stage);
        const std::string label = prefix + std::to_string(k) + ":" + optimizer->name();
        OptimizerState state;
        if (!have_flow) {
            state = optimizer->initialize(ctx.problem, population, ctx.evaluator, rng);
            if (ctx.trace.empty()) ctx.row(state.global_best.fitness, label);
        } else {
            state = optimizer->adopt(ctx.problem, std::move(flow.population), flow.best);
        }
        while (ctx.keep_going(stage_limits[k], iteration_limit)) {
            optimizer->step(state, ctx.problem, ctx.evaluator, rng);
            ++ctx.tick;
            ctx.row(state.global_best.fitness, label);
        }
        flow = flow_from_state(state);
        have_flow = true;
    }
    return flow;
}

Flow drive_switch(const HybridSpec& spec,
                  DriveContext& ctx,
                  std::size_t population,
                  std::optional<Flow> incoming,
                  RngStream rng,
                  std::uint64_t eval_limit,
                  std::optional<std::uint64_t> iteration_limit,
                  const std::string& prefix) {
    if (spec.stages.empty()) {
        throw std::invalid_argument("hybrid: switch composition needs at least one algorithm");
    }
    double prob_sum = 0.0;
    for (const HybridStage& stage : spec.stages) {
        if (stage.nested) {
            throw std::invalid_argument("hybrid: nested specs are only allowed in sequential stages");
        }
        if (!(stage.switch_probability >= 0.0)) {
            throw std::invalid_argument("hybrid: switch probabilities must be non-negative");
        }
        prob_sum += stage.switch_probability;
    }
    if (std::abs(prob_sum - 1.0) > 1e-12) {
        throw std::invalid_argument("hybrid: switch probabilities must sum to 1");
    }

    RngStream step_rng = rng.child(0);
    RngStream switch_rng = rng.child(1);

    std::vector<std::unique_ptr<Optimizer>> optimizers;
    optimizers.reserve(spec.stages.size());
    for (const HybridStage& stage : spec.stages) optimizers.push_back(stage_optimizer(stage));

    // One state per algorithm over the same agent slots: positions and
    // fitness are synchronized after every step, auxiliary fields and
    // iteration counters belong to each algorithm alone.
    std::vector<OptimizerState> states(optimizers.size());
    if (incoming) {
        for (std::size_t k = 0; k < optimizers.size(); ++k) {
            states[k] = optimizers[k]->adopt(ctx.problem, incoming->population, incoming->best);
        }
    } else {
        states[0] = optimizers[0]->initialize(ctx.problem, population, ctx.evaluator, step_rng);
        if (ctx.trace.empty()) ctx.row(states[0].global_best.fitness, prefix + "init");
        const Flow seeded = flow_from_state(states[0]);
        for (std::size_t k = 1; k < optimizers.size(); ++k) {
            states[k] = optimizers[k]->adopt(ctx.problem, seeded.population, seeded.best);
        }
    }

    while (ctx.keep_going(eval_limit, iteration_limit)) {
        const double pick = switch_rng.uniform(0.0, 1.0);
        std::size_t chosen = optimizers.size() - 1;
        double acc = 0.0;
        for (std::size_t k = 0; k < spec.stages.size(); ++k) {
            acc += spec.stages[k].switch_probability;
            if (pick < acc) {
                chosen = k;
                break;
            }
        }

        optimizers[chosen]->step(states[chosen], ctx.problem, ctx.evaluator, step_rng);

        for (std::size_t m = 0; m < states.size(); ++m) {
            if (m == chosen) continue;
            for (std::size_t i = 0; i < states[m].agents.size(); ++i) {
                Agent& mirror = states[m].agents[i];
                const Agent& moved = states[chosen].agents[i];
                mirror.position = moved.position;
                mirror.fitness = moved.fitness;
                if (mirror.personal_best && moved.fitness < mirror.personal_best->fitness) {
                    mirror.personal_best = EvaluatedSolution{moved.position, moved.fitness, 0};
                }
            }
            states[m].global_best = states[chosen].global_best;
        }

        ++ctx.tick;
        ctx.row(states[chosen].global_best.fitness, prefix + optimizers[chosen]->name());
    }
    return flow_from_state(states[0]);
}

Flow drive_split(const HybridSpec& spec,
                 DriveContext& ctx,
                 std::size_t population,
                 std::optional<Flow> incoming,
                 RngStream rng,
                 std::uint64_t eval_limit,
                 std::optional<std::uint64_t> iteration_limit,
                 const std::string& prefix) {
    if (spec.stages.empty()) {
        throw std::invalid_argument("hybrid: split composition needs at least one branch");
    }
    if (spec.merge_period == 0) {
        throw std::invalid_argument("hybrid: merge_period must be positive");
    }

    std::vector<std::unique_ptr<Optimizer>> optimizers;
    std::vector<std::size_t> partition;
    std::size_t claimed = 0;
    for (const HybridStage& stage : spec.stages) {
        if (stage.nested) {
            throw std::invalid_argument("hybrid: nested specs are only allowed in sequential stages");
        }
        optimizers.push_back(stage_optimizer(stage));
        const std::size_t minimum = std::max<std::size_t>(3, optimizers.back()->min_population());
        if (stage.subpopulation < minimum) {
            throw std::invalid_argument("hybrid: every branch needs at least " +
                                        std::to_string(minimum) + " agents");
        }
        partition.push_back(stage.subpopulation);
        claimed += stage.subpopulation;
    }
    if (claimed != population) {
        throw std::invalid_argument("hybrid: branch sizes must sum to the population size");
    }

    std::vector<RngStream> branch_rng;
    branch_rng.reserve(optimizers.size());
    for (std::size_t k = 0; k < optimizers.size(); ++k) branch_rng.push_back(rng.child(k));

    std::optional<EvaluatedSolution> overall;
    std::vector<OptimizerState> states(optimizers.size());
    if (incoming) {
        overall = incoming->best;
        auto slices = rank_and_deal(std::move(incoming->population), partition);
        for (std::size_t k = 0; k < optimizers.size(); ++k) {
            states[k] = optimizers[k]->adopt(ctx.problem, std::move(slices[k]), overall);
        }
    } else {
        // The whole population is drawn and evaluated on branch 0's stream
        // before that stream carries on stepping branch 0, which keeps a
        // one-branch split bit-identical to the pure algorithm.
        auto positions = init_population(ctx.problem, population, branch_rng[0]);
        std::vector<EvaluatedSolution> seeded;
        seeded.reserve(population);
        for (auto& position : positions) {
            seeded.push_back(ctx.evaluator.evaluate(std::move(position)));
            fold_best(overall, seeded.back());
        }
        auto cursor = seeded.begin();
        for (std::size_t k = 0; k < optimizers.size(); ++k) {
            std::vector<EvaluatedSolution> slice(
                std::make_move_iterator(cursor),
                std::make_move_iterator(cursor + static_cast<std::ptrdiff_t>(partition[k])));
            cursor += static_cast<std::ptrdiff_t>(partition[k]);
            states[k] = optimizers[k]->adopt(ctx.problem, std::move(slice), std::nullopt);
        }
        if (ctx.trace.empty()) ctx.row(overall->fitness, prefix + "init");
    }

    std::uint64_t rounds = 0;
    while (ctx.keep_going(eval_limit, iteration_limit)) {
        for (std::size_t k = 0; k < optimizers.size(); ++k) {
            optimizers[k]->step(states[k], ctx.problem, ctx.evaluator, branch_rng[k]);
            fold_best(overall, states[k].global_best);
        }
        ++ctx.tick;
        ++rounds;
        ctx.row(overall->fitness, prefix + "split");

        // Merging a single branch with itself would only re-sort its agents
        // and restart its schedules, so it is skipped: a one-branch split is
        // exactly the pure algorithm.
        if (optimizers.size() > 1 && rounds % spec.merge_period == 0) {
            std::vector<EvaluatedSolution> pool;
            pool.reserve(population);
            for (const OptimizerState& state : states) {
                for (const Agent& agent : state.agents) {
                    pool.push_back({agent.position, agent.fitness, 0});
                }
            }
            auto slices = rank_and_deal(std::move(pool), partition);
            for (std::size_t k = 0; k < optimizers.size(); ++k) {
                states[k] = optimizers[k]->adopt(ctx.problem, std::move(slices[k]), overall);
            }
        }
    }

    Flow flow;
    flow.population.reserve(population);
    for (const OptimizerState& state : states) {
        for (const Agent& agent : state.agents) {
            flow.population.push_back({agent.position, agent.fitness, 0});
        }
    }
    flow.best = overall;
    return flow;
}

Flow drive(const HybridSpec& spec,
           DriveContext& ctx,
           std::size_t population,
           std::optional<Flow> incoming,
           RngStream rng,
           std::uint64_t eval_limit,
           std::optional<std::uint64_t> iteration_limit,
           const std::string& prefix) {
    switch (spec.structure) {
        case HybridSpec::Structure::sequential:
            return drive_sequential(spec, ctx, population, std::move(incoming), rng, eval_limit,
                                    iteration_limit, prefix);
        case HybridSpec::Structure::parallel_switch:
            return drive_switch(spec, ctx, population, std::move(incoming), rng, eval_limit,
                                iteration_limit, prefix);
        case HybridSpec::Structure::parallel_split:
            return drive_split(spec, ctx, population, std::move(incoming), rng, eval_limit,
                               iteration_limit, prefix);
    }
    throw std::logic_error("hybrid: unknown structure");
}

RunRecord run_top_level(const HybridSpec& spec,
                        const Problem& problem,
                        std::size_t population,
                        std::uint64_t eval_limit,
                        std::optional<std::uint64_t> iteration_limit,
                        RngStream rng,
                        const PenaltyConfig& penalty) {
    if (hybrid_depth(spec) > kMaxDepth) {
        throw std::invalid_argument("hybrid: nesting depth exceeds " + std::to_string(kMaxDepth));
    }
    const auto started = std::chrono::steady_clock::now();

    Evaluator evaluator(problem, penalty);
    RunRecord record;
    record.seed = rng.seed();
    DriveContext ctx{problem, evaluator, record.trace};
    const Flow flow =
        drive(spec, ctx, population, std::nullopt, rng, eval_limit, iteration_limit, "");

    record.best_position = flow.best->position;
    record.best_fitness = flow.best->fitness;
    record.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

}  // namespace

HybridSpec::Structure HybridSpec::structure_from_name(const std::string& name) {
    if (name == "sequential") return Structure::sequential;
    if (name == "parallel_switch") return Structure::parallel_switch;
    if (name == "parallel_split") return Structure::parallel_split;
    throw std::invalid_argument("unknown hybrid structure: " + name);
}

std::string HybridSpec::structure_name(Structure structure) {
    switch (structure) {
        case Structure::sequential: return "sequential";
        case Structure::parallel_switch: return "parallel_switch";
        case Structure::parallel_split: return "parallel_split";
    }
    throw std::logic_error("hybrid: unknown structure");
}

bool operator==(const HybridStage& a, const HybridStage& b) {
    if (a.algorithm != b.algorithm || a.params != b.params ||
        a.budget_share != b.budget_share || a.switch_probability != b.switch_probability ||
        a.subpopulation != b.subpopulation) {
        return false;
    }
    if (static_cast<bool>(a.nested) != static_cast<bool>(b.nested)) return false;
    return !a.nested || *a.nested == *b.nested;
}

bool operator==(const HybridSpec& a, const HybridSpec& b) {
    return a.structure == b.structure && a.merge_period == b.merge_period &&
           a.stages == b.stages;
}

int hybrid_depth(const HybridSpec& spec) {
    int deepest = 1;
    for (const HybridStage& stage : spec.stages) {
        if (stage.nested) deepest = std::max(deepest, 1 + hybrid_depth(*stage.nested));
    }
    return deepest;
}

RunRecord run_sequential(const HybridSpec& spec,
                         const Problem& problem,
                         std::size_t population,
                         std::uint64_t total_evaluations,
                         RngStream rng,
                         const PenaltyConfig& penalty) {
    if (spec.structure != HybridSpec::Structure::sequential) {
        throw std::invalid_argument("run_sequential: spec is not sequential");
    }
    if (total_evaluations == 0) {
        throw std::invalid_argument("hybrid: evaluation budget must be positive");
    }
    return run_top_level(spec, problem, population, total_evaluations, std::nullopt, rng, penalty);
}

RunRecord run_parallel_switch(const HybridSpec& spec,
                              const Problem& problem,
                              std::size_t population,
                              const Budget& budget,
                              RngStream rng,
                              const PenaltyConfig& penalty) {
    if (spec.structure != HybridSpec::Structure::parallel_switch) {
        throw std::invalid_argument("run_parallel_switch: spec is not parallel_switch");
    }
    budget.validate();
    return run_top_level(spec, problem, population,
                         budget.max_evaluations.value_or(std::numeric_limits<std::uint64_t>::max()),
                         budget.max_iterations, rng, penalty);
}

RunRecord run_parallel_split(const HybridSpec& spec,
                             const Problem& problem,
                             std::size_t population,
                             const Budget& budget,
                             RngStream rng,
                             const PenaltyConfig& penalty) {
    if (spec.structure != HybridSpec::Structure::parallel_split) {
        throw std::invalid_argument("run_parallel_split: spec is not parallel_split");
    }
    budget.validate();
    return run_top_level(spec, problem, population,
                         budget.max_evaluations.value_or(std::numeric_limits<std::uint64_t>::max()),
                         budget.max_iterations, rng, penalty);
}

RunRecord run_hybrid(const HybridSpec& spec,
                     const Problem& problem,
                     std::size_t population,
                     const Budget& budget,
                     RngStream rng,
                     const PenaltyConfig& penalty) {
    switch (spec.structure) {
        case HybridSpec::Structure::sequential:
            budget.validate();
            if (!budget.max_evaluations) {
                throw std::invalid_argument(
                    "hybrid: sequential composition needs an evaluation budget");
            }
            return run_sequential(spec, problem, population, *budget.max_evaluations, rng, penalty);
        case HybridSpec::Structure::parallel_switch:
            return run_parallel_switch(spec, problem, population, budget, rng, penalty);
        case HybridSpec::Structure::parallel_split:
            return run_parallel_split(spec, problem, population, budget, rng, penalty);
    }
    throw std::logic_error("hybrid: unknown structure");
}

std::vector<std::vector<EvaluatedSolution>> rank_and_deal(
    std::vector<EvaluatedSolution> pool, const std::vector<std::size_t>& partition) {
    std::size_t total = 0;
    for (const std::size_t size : partition) {
        if (size == 0) throw std::invalid_argument("rank_and_deal: partition sizes must be positive");
        total += size;
    }
    if (total != pool.size()) {
        throw std::invalid_argument("rank_and_deal: partition must cover the pool exactly");
    }

    std::stable_sort(pool.begin(), pool.end(),
                     [](const EvaluatedSolution& a, const EvaluatedSolution& b) {
                         return a.fitness < b.fitness;
                     });

    std::vector<std::vector<EvaluatedSolution>> slices(partition.size());
    for (std::size_t k = 0; k < partition.size(); ++k) slices[k].reserve(partition[k]);
    std::size_t cursor = 0;
    while (cursor < pool.size()) {
        for (std::size_t k = 0; k < partition.size() && cursor < pool.size(); ++k) {
            if (slices[k].size() < partition[k]) {
                slices[k].push_back(std::move(pool[cursor++]));
            }
        }
    }
    return slices;
}

std::uint64_t combination_count(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        throw std::invalid_argument("combination_count: k must not exceed n");
    }
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // Exact at every step: after the division the running value is the
        // binomial coefficient C(n - k + i, i).
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("combination_count: result does not fit in 64 bits");
        }
    }
    return static_cast<std::uint64_t>(result);
}

}  // namespace swarmlab
