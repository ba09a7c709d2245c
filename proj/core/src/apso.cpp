#include <cmath>
#include <utility>

#include "optimizer_detail.hpp"
#include "swarmlab/optimizer.hpp"

namespace swarmlab {
namespace {

// Accelerated particle swarm: no velocities, no personal bests.  Each agent
// is pulled toward the global best by a fixed convex weight while a gaussian
// kick with geometrically decaying amplitude keeps the search stochastic.
class ApsoOptimizer final : public Optimizer {
  public:
    explicit ApsoOptimizer(const ApsoParams& params) : params_(params) { params_.validate(); }

    [[nodiscard]] std::string name() const override { return "apso"; }

    void step(OptimizerState& state,
              const Problem& problem,
              Evaluator& evaluator,
              RandomSource& rng) const override {
        detail::require_dimensions(state, problem, "apso");
        const std::size_t dim = problem.dimension();
        const double amplitude =
            params_.noise_init *
            std::pow(params_.noise_decay, static_cast<double>(state.iteration));

        for (Agent& agent : state.agents) {
            Vector moved(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                moved[d] = (1.0 - params_.attraction) * agent.position[d] +
                           params_.attraction * state.global_best.position[d] +
                           amplitude * rng.gaussian();
            }
            agent.position = clamp_to_bounds(std::move(moved), problem);
            agent.fitness =
                detail::evaluate_candidate(state, evaluator, agent.position).fitness;
        }

        state.last_step_evaluations = state.agents.size();
        state.iteration += 1;
        state.noise_scale =
            params_.noise_init *
            std::pow(params_.noise_decay, static_cast<double>(state.iteration));
    }

  protected:
    void reset_aux(OptimizerState& state, const Problem&) const override {
        state.noise_scale = params_.noise_init;
    }

  private:
    ApsoParams params_;
};

}  // namespace

namespace detail {

std::unique_ptr<Optimizer> make_apso(const ApsoParams& params) {
    return std::make_unique<ApsoOptimizer>(params);
}

}  // namespace detail
}  // namespace swarmlab
