#pragma once

// Internal seams between the optimizer translation units.  Not installed.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include "swarmlab/optimizer.hpp"

namespace swarmlab::detail {

std::unique_ptr<Optimizer> make_pso(const PsoParams& params);
std::unique_ptr<Optimizer> make_apso(const ApsoParams& params);
std::unique_ptr<Optimizer> make_bat(const BatParams& params);
std::unique_ptr<Optimizer> make_firefly(const FireflyParams& params);
std::unique_ptr<Optimizer> make_cuckoo(const CuckooParams& params);
std::unique_ptr<Optimizer> make_fpa(const FpaParams& params);

// Every stepper guards against states built for a different problem.
inline void require_dimensions(const OptimizerState& state,
                               const Problem& problem,
                               const char* who) {
    for (const Agent& agent : state.agents) {
        if (agent.position.size() != problem.dimension()) {
            throw std::invalid_argument(std::string(who) +
                                        ": state/problem dimension mismatch");
        }
    }
}

// Maps a uniform draw in [0,1) to an index in [0, n).  The draw comes from
// the shared RandomSource interface so scripted sources stay in control of
// index selection.
inline std::size_t index_from_uniform(double u, std::size_t n) {
    auto idx = static_cast<std::size_t>(u * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

// Evaluates a candidate position for an agent and folds the result into the
// run-wide best regardless of whether the agent ends up accepting it.
inline EvaluatedSolution evaluate_candidate(OptimizerState& state,
                                            Evaluator& evaluator,
                                            Vector position) {
    EvaluatedSolution result = evaluator.evaluate(std::move(position));
    update_global_best(state, result);
    return result;
}

// The bat method starts each agent's pulse rate at the value its schedule
// produces for the first iteration; starting at the schedule's t = 0 value
// (exactly zero) can deadlock the search, because local walks then never
// fire and the published velocity rule alone rarely produces an improving
// move, leaving the acceptance machinery permanently idle.
inline double initial_pulse_rate(const BatParams& params) {
    return bat_schedules(params.loudness_init, params.pulse_rate_cap,
                         params.loudness_decay, params.pulse_growth, 1)
        .second;
}

}  // namespace swarmlab::detail
