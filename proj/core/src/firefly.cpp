#include <algorithm>
#include <cmath>
#include <utility>

#include "optimizer_detail.hpp"
#include "swarmlab/optimizer.hpp"

namespace swarmlab {
namespace {

// Firefly search: every agent is compared against every other, and whenever
// the other is fitter, the agent takes one attraction move toward it plus a
// decaying uniform jitter, keeping the move only if it helps.  The number of
// evaluations per step therefore varies with how many "brighter than me"
// pairs the loop encounters — between 0 and n·(n−1).
class FireflyOptimizer final : public Optimizer {
  public:
    explicit FireflyOptimizer(const FireflyParams& params) : params_(params) {
        params_.validate();
    }

    [[nodiscard]] std::string name() const override { return "firefly"; }

    void step(OptimizerState& state,
              const Problem& problem,
              Evaluator& evaluator,
              RandomSource& rng) const override {
        detail::require_dimensions(state, problem, "firefly");
        const std::size_t dim = problem.dimension();
        const std::size_t n = state.agents.size();
        const double amplitude =
            params_.noise_init *
            std::pow(params_.noise_decay, static_cast<double>(state.iteration));

        std::uint64_t moves = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Agent& follower = state.agents[i];
                const Agent& leader = state.agents[j];
                if (j == i || !(leader.fitness < follower.fitness)) continue;

                Vector moved = firefly_attraction_move(follower.position, leader.position,
                                                       params_.attractiveness,
                                                       params_.absorption);
                for (std::size_t d = 0; d < dim; ++d) {
                    moved[d] += amplitude * rng.uniform(-0.5, 0.5) * problem.width(d);
                }
                moved = clamp_to_bounds(std::move(moved), problem);
                EvaluatedSolution candidate =
                    detail::evaluate_candidate(state, evaluator, std::move(moved));
                ++moves;
                if (candidate.fitness < follower.fitness) {
                    follower.position = std::move(candidate.position);
                    follower.fitness = candidate.fitness;
                }
            }
        }

        std::stable_sort(state.agents.begin(), state.agents.end(),
                         [](const Agent& a, const Agent& b) { return a.fitness < b.fitness; });

        state.last_step_evaluations = moves;
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
    FireflyParams params_;
};

}  // namespace

namespace detail {

std::unique_ptr<Optimizer> make_firefly(const FireflyParams& params) {
    return std::make_unique<FireflyOptimizer>(params);
}

}  // namespace detail
}  // namespace swarmlab
