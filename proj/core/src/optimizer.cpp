#include "swarmlab/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "optimizer_detail.hpp"

namespace swarmlab {

namespace {

void check_range(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void PsoParams::validate() const {
    check_range(global_weight >= 0.0 && global_weight <= 2.0,
                "pso: global_weight must lie in [0, 2]");
    check_range(personal_weight >= 0.0 && personal_weight <= 2.0,
                "pso: personal_weight must lie in [0, 2]");
}

void ApsoParams::validate() const {
    check_range(attraction >= 0.0 && attraction <= 1.0, "apso: attraction must lie in [0, 1]");
    check_range(noise_init >= 0.0, "apso: noise_init must be non-negative");
    check_range(noise_decay > 0.0 && noise_decay < 1.0, "apso: noise_decay must lie in (0, 1)");
}

void BatParams::validate() const {
    check_range(freq_min <= freq_max, "bat: freq_min must not exceed freq_max");
    check_range(loudness_decay > 0.0 && loudness_decay < 1.0,
                "bat: loudness_decay must lie in (0, 1)");
    check_range(pulse_growth > 0.0, "bat: pulse_growth must be positive");
    check_range(loudness_init > 0.0, "bat: loudness_init must be positive");
    check_range(pulse_rate_cap >= 0.0 && pulse_rate_cap <= 1.0,
                "bat: pulse_rate_cap must lie in [0, 1]");
}

void FireflyParams::validate() const {
    check_range(attractiveness >= 0.0, "firefly: attractiveness must be non-negative");
    check_range(absorption >= 0.0, "firefly: absorption must be non-negative");
    check_range(noise_init >= 0.0, "firefly: noise_init must be non-negative");
    check_range(noise_decay > 0.0 && noise_decay < 1.0,
                "firefly: noise_decay must lie in (0, 1)");
}

void CuckooParams::validate() const {
    check_range(discovery_rate >= 0.0 && discovery_rate <= 1.0,
                "cuckoo: discovery_rate must lie in [0, 1]");
    if (step_scale) {
        check_range(*step_scale >= 0.0, "cuckoo: step_scale must be non-negative");
    }
    check_range(local_step_scale >= 0.0, "cuckoo: local_step_scale must be non-negative");
    check_range(tail_exponent > 1.0 && tail_exponent < 2.0,
                "cuckoo: tail_exponent must lie in (1, 2)");
}

void FpaParams::validate() const {
    check_range(global_probability >= 0.0 && global_probability <= 1.0,
                "fpa: global_probability must lie in [0, 1]");
    check_range(step_scale > 0.0, "fpa: step_scale must be positive");
    check_range(tail_exponent > 1.0 && tail_exponent < 2.0,
                "fpa: tail_exponent must lie in (1, 2)");
}

void update_global_best(OptimizerState& state, const EvaluatedSolution& candidate) {
    if (state.global_best.position.empty() || candidate.fitness < state.global_best.fitness) {
        state.global_best = candidate;
    }
}

std::pair<double, double> bat_schedules(double loudness,
                                        double pulse_rate_cap,
                                        double loudness_decay,
                                        double pulse_growth,
                                        std::uint64_t t) {
    if (!(loudness_decay > 0.0 && loudness_decay < 1.0)) {
        throw std::invalid_argument("bat_schedules: loudness_decay must lie in (0, 1)");
    }
    if (!(pulse_growth > 0.0)) {
        throw std::invalid_argument("bat_schedules: pulse_growth must be positive");
    }
    const double rate = pulse_rate_cap * (1.0 - std::exp(-pulse_growth * static_cast<double>(t)));
    return {loudness_decay * loudness, rate};
}

Vector firefly_attraction_move(const Vector& xi,
                               const Vector& xj,
                               double attractiveness,
                               double absorption) {
    if (xi.size() != xj.size()) {
        throw std::invalid_argument("firefly_attraction_move: dimension mismatch");
    }
    double dist_sq = 0.0;
    for (std::size_t d = 0; d < xi.size(); ++d) {
        const double delta = xj[d] - xi[d];
        dist_sq += delta * delta;
    }
    const double pull = attractiveness * std::exp(-absorption * dist_sq);
    Vector moved(xi.size());
    for (std::size_t d = 0; d < xi.size(); ++d) {
        moved[d] = xi[d] + pull * (xj[d] - xi[d]);
    }
    return moved;
}

OptimizerState Optimizer::initialize(const Problem& problem,
                                     std::size_t population,
                                     Evaluator& evaluator,
                                     RandomSource& rng) const {
    if (population < min_population()) {
        throw std::invalid_argument(name() + ": population must be at least " +
                                    std::to_string(min_population()));
    }
    OptimizerState state;
    state.global_best.fitness = std::numeric_limits<double>::infinity();
    state.agents.reserve(population);
    for (auto& position : init_population(problem, population, rng)) {
        EvaluatedSolution solution = evaluator.evaluate(std::move(position));
        update_global_best(state, solution);
        Agent agent;
        agent.position = std::move(solution.position);
        agent.fitness = solution.fitness;
        state.agents.push_back(std::move(agent));
    }
    state.last_step_evaluations = population;
    reset_aux(state, problem);
    return state;
}

OptimizerState Optimizer::adopt(const Problem& problem,
                                std::vector<EvaluatedSolution> population,
                                std::optional<EvaluatedSolution> carried_best) const {
    if (population.size() < min_population()) {
        throw std::invalid_argument(name() + ": population must be at least " +
                                    std::to_string(min_population()));
    }
    OptimizerState state;
    state.global_best.fitness = std::numeric_limits<double>::infinity();
    // Fold the inherited best first so a tie resolves in favor of the earlier
    // evaluation it represents.
    if (carried_best) {
        update_global_best(state, *carried_best);
    }
    state.agents.reserve(population.size());
    for (auto& solution : population) {
        if (solution.position.size() != problem.dimension()) {
            throw std::invalid_argument(name() + ": adopted solution dimension mismatch");
        }
        update_global_best(state, solution);
        Agent agent;
        agent.position = std::move(solution.position);
        agent.fitness = solution.fitness;
        state.agents.push_back(std::move(agent));
    }
    state.last_step_evaluations = 0;
    reset_aux(state, problem);
    return state;
}

void Optimizer::reset_aux(OptimizerState&, const Problem&) const {}

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = {"pso",     "apso",   "bat",
                                                   "firefly", "cuckoo", "fpa"};
    return names;
}

AlgoParams default_params(const std::string& name) {
    if (name == "pso") return PsoParams{};
    if (name == "apso") return ApsoParams{};
    if (name == "bat") return BatParams{};
    if (name == "firefly") return FireflyParams{};
    if (name == "cuckoo") return CuckooParams{};
    if (name == "fpa") return FpaParams{};
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::unique_ptr<Optimizer> make_optimizer(const AlgoParams& params) {
    return std::visit(
        [](const auto& p) -> std::unique_ptr<Optimizer> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PsoParams>) {
                return detail::make_pso(p);
            } else if constexpr (std::is_same_v<T, ApsoParams>) {
                return detail::make_apso(p);
            } else if constexpr (std::is_same_v<T, BatParams>) {
                return detail::make_bat(p);
            } else if constexpr (std::is_same_v<T, FireflyParams>) {
                return detail::make_firefly(p);
            } else if constexpr (std::is_same_v<T, CuckooParams>) {
                return detail::make_cuckoo(p);
            } else {
                static_assert(std::is_same_v<T, FpaParams>);
                return detail::make_fpa(p);
            }
        },
        params);
}

std::unique_ptr<Optimizer> make_optimizer(const std::string& name) {
    return make_optimizer(default_params(name));
}

RunRecord run(const Optimizer& optimizer,
              const Problem& problem,
              std::size_t population,
              const Budget& budget,
              RandomSource& rng,
              const PenaltyConfig& penalty) {
    budget.validate();
    const auto started = std::chrono::steady_clock::now();

    Evaluator evaluator(problem, penalty);
    OptimizerState state = optimizer.initialize(problem, population, evaluator, rng);

    RunRecord record;
    record.trace.push_back({0, evaluator.evaluations(), state.global_best.fitness, {}});
    while (!budget.exhausted(evaluator.evaluations(), state.iteration)) {
        optimizer.step(state, problem, evaluator, rng);
        record.trace.push_back(
            {state.iteration, evaluator.evaluations(), state.global_best.fitness, {}});
    }

    record.best_position = state.global_best.position;
    record.best_fitness = state.global_best.fitness;
    record.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

}  // namespace swarmlab
