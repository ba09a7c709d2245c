#include <stdexcept>
#include <utility>

#include "optimizer_detail.hpp"
#include "swarmlab/optimizer.hpp"

namespace swarmlab {
namespace {

// Particle swarm in its original form: velocities persist with unit inertia,
// and each coordinate gets its own fresh pair of uniform weights.  Best
// updates are asynchronous — an improvement found mid-step steers the agents
// that move after it.
class PsoOptimizer final : public Optimizer {
  public:
    explicit PsoOptimizer(const PsoParams& params) : params_(params) { params_.validate(); }

    [[nodiscard]] std::string name() const override { return "pso"; }

    void step(OptimizerState& state,
              const Problem& problem,
              Evaluator& evaluator,
              RandomSource& rng) const override {
        detail::require_dimensions(state, problem, "pso");
        const std::size_t dim = problem.dimension();

        for (Agent& agent : state.agents) {
            if (agent.velocity.size() != dim || !agent.personal_best) {
                throw std::invalid_argument("pso: state is missing velocity or personal best");
            }
            for (std::size_t d = 0; d < dim; ++d) {
                const double toward_global = rng.uniform(0.0, 1.0);
                const double toward_own = rng.uniform(0.0, 1.0);
                agent.velocity[d] +=
                    params_.global_weight * toward_global *
                        (state.global_best.position[d] - agent.position[d]) +
                    params_.personal_weight * toward_own *
                        (agent.personal_best->position[d] - agent.position[d]);
                agent.position[d] += agent.velocity[d];
            }
            agent.position = clamp_to_bounds(std::move(agent.position), problem);
            EvaluatedSolution moved = detail::evaluate_candidate(state, evaluator, agent.position);
            agent.fitness = moved.fitness;
            if (moved.fitness < agent.personal_best->fitness) {
                agent.personal_best = std::move(moved);
            }
        }

        state.last_step_evaluations = state.agents.size();
        state.iteration += 1;
    }

  protected:
    void reset_aux(OptimizerState& state, const Problem& problem) const override {
        for (Agent& agent : state.agents) {
            agent.velocity.assign(problem.dimension(), 0.0);
            agent.personal_best = EvaluatedSolution{agent.position, agent.fitness, 0};
        }
    }

  private:
    PsoParams params_;
};

}  // namespace

namespace detail {

std::unique_ptr<Optimizer> make_pso(const PsoParams& params) {
    return std::make_unique<PsoOptimizer>(params);
}

}  // namespace detail
}  // namespace swarmlab
