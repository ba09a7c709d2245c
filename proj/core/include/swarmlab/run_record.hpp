#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmlab/problem.hpp"

namespace swarmlab {

// One point on a convergence trace: the best fitness seen anywhere in the
// run after `iteration` steps had been completed and `evaluations` objective
// calls spent.  `stage` is empty for plain runs; staged drivers label rows so
// a trace can be sliced per phase.
struct TraceRow {
    std::uint64_t iteration = 0;
    std::uint64_t evaluations = 0;
    double best_fitness = 0.0;
    std::string stage;
};

// Everything a single run produces.  `run_id` and `seed` are assigned by the
// caller (a lone run gets 0/whatever seed it was handed); wall-clock time is
// informational and never participates in any determinism contract.
struct RunRecord {
    std::uint64_t run_id = 0;
    std::uint64_t seed = 0;
    std::vector<TraceRow> trace;
    Vector best_position;
    double best_fitness = 0.0;
    double wall_clock_seconds = 0.0;
};

// Stopping rule: at least one limit must be present and nonzero.  Both may be
// set, in which case whichever trips first ends the run.  A step is never cut
// short: the limits are checked between steps, so a run may overshoot
// max_evaluations by at most one step's worth of evaluations.
struct Budget {
    std::optional<std::uint64_t> max_evaluations;
    std::optional<std::uint64_t> max_iterations;

    void validate() const {
        if (!max_evaluations && !max_iterations) {
            throw std::invalid_argument("budget: at least one of max_evaluations / max_iterations must be set");
        }
        if (max_evaluations && *max_evaluations == 0) {
            throw std::invalid_argument("budget: max_evaluations must be positive when set");
        }
        if (max_iterations && *max_iterations == 0) {
            throw std::invalid_argument("budget: max_iterations must be positive when set");
        }
    }

    [[nodiscard]] bool exhausted(std::uint64_t evaluations, std::uint64_t iterations) const {
        if (max_evaluations && evaluations >= *max_evaluations) return true;
        if (max_iterations && iterations >= *max_iterations) return true;
        return false;
    }
};

}  // namespace swarmlab
