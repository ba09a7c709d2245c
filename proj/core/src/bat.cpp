#include <utility>

#include "optimizer_detail.hpp"
#include "swarmlab/optimizer.hpp"

namespace swarmlab {
namespace {

// Echolocation-style search: a random frequency sets how hard the velocity
// reacts to the displacement from the best-known position, loud agents accept
// improvements readily, and quiet/high-pulse agents increasingly probe small
// perturbations of the best instead.  Acceptance is the only thing that
// advances an agent's loudness/pulse-rate schedules.
class BatOptimizer final : public Optimizer {
  public:
    explicit BatOptimizer(const BatParams& params) : params_(params) { params_.validate(); }

    [[nodiscard]] std::string name() const override { return "bat"; }

    void step(OptimizerState& state,
              const Problem& problem,
              Evaluator& evaluator,
              RandomSource& rng) const override {
        detail::require_dimensions(state, problem, "bat");
        const std::size_t dim = problem.dimension();

        for (Agent& agent : state.agents) {
            if (agent.velocity.size() != dim) {
                throw std::invalid_argument("bat: state is missing velocity");
            }
            const double mix = rng.uniform(0.0, 1.0);
            const double freq = params_.freq_min + (params_.freq_max - params_.freq_min) * mix;

            Vector candidate(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                const double displacement = agent.position[d] - state.global_best.position[d];
                agent.velocity[d] +=
                    (params_.steer_toward_best ? -displacement : displacement) * freq;
                candidate[d] = agent.position[d] + agent.velocity[d];
            }

            const double walk_gate = rng.uniform(0.0, 1.0);
            if (walk_gate < agent.pulse_rate) {
                for (std::size_t d = 0; d < dim; ++d) {
                    candidate[d] = state.global_best.position[d] +
                                   0.01 * problem.width(d) * rng.gaussian();
                }
            }

            candidate = clamp_to_bounds(std::move(candidate), problem);
            EvaluatedSolution moved =
                detail::evaluate_candidate(state, evaluator, std::move(candidate));
            const double accept_gate = rng.uniform(0.0, 1.0);
            if (moved.fitness < agent.fitness && accept_gate < agent.loudness) {
                agent.position = std::move(moved.position);
                agent.fitness = moved.fitness;
                const auto [loudness, pulse_rate] =
                    bat_schedules(agent.loudness, params_.pulse_rate_cap,
                                  params_.loudness_decay, params_.pulse_growth,
                                  state.iteration + 1);
                agent.loudness = loudness;
                agent.pulse_rate = pulse_rate;
            }
        }

        state.last_step_evaluations = state.agents.size();
        state.iteration += 1;
    }

  protected:
    void reset_aux(OptimizerState& state, const Problem& problem) const override {
        for (Agent& agent : state.agents) {
            agent.velocity.assign(problem.dimension(), 0.0);
            agent.loudness = params_.loudness_init;
            agent.pulse_rate = detail::initial_pulse_rate(params_);
        }
    }

  private:
    BatParams params_;
};

}  // namespace

namespace detail {

std::unique_ptr<Optimizer> make_bat(const BatParams& params) {
    return std::make_unique<BatOptimizer>(params);
}

}  // namespace detail
}  // namespace swarmlab
