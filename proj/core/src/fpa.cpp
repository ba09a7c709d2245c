#include <cstddef>
#include <utility>

#include "optimizer_detail.hpp"
#include "swarmlab/optimizer.hpp"

namespace swarmlab {
namespace {

// Flower pollination: each agent flips a biased coin between a global move —
// a heavy-tailed step along its displacement to the best-known position —
// and a local move blending two other agents, with one shared uniform weight.
// Moves are greedy: a candidate replaces the agent only when strictly better.
class FpaOptimizer final : public Optimizer {
  public:
    explicit FpaOptimizer(const FpaParams& params) : params_(params) { params_.validate(); }

    [[nodiscard]] std::string name() const override { return "fpa"; }
    [[nodiscard]] std::size_t min_population() const override { return 3; }

    void step(OptimizerState& state,
              const Problem& problem,
              Evaluator& evaluator,
              RandomSource& rng) const override {
        detail::require_dimensions(state, problem, "fpa");
        const std::size_t dim = problem.dimension();
        const std::size_t n = state.agents.size();
        if (n < min_population()) {
            throw std::invalid_argument("fpa: population must be at least 3");
        }
        const LevyParams levy{params_.tail_exponent, 1.0};

        for (std::size_t i = 0; i < n; ++i) {
            Agent& agent = state.agents[i];
            Vector candidate(dim);
            const double which = rng.uniform(0.0, 1.0);
            if (which < params_.global_probability) {
                for (std::size_t d = 0; d < dim; ++d) {
                    const double step = rng.levy_step(levy);
                    candidate[d] = agent.position[d] +
                                   params_.step_scale * step *
                                       (state.global_best.position[d] - agent.position[d]);
                }
            } else {
                const auto perm = rng.permutation(n);
                std::size_t j = n, k = n;
                for (const std::size_t p : perm) {
                    if (p == i) continue;
                    if (j == n) {
                        j = p;
                    } else {
                        k = p;
                        break;
                    }
                }
                const double blend = rng.uniform(0.0, 1.0);
                for (std::size_t d = 0; d < dim; ++d) {
                    candidate[d] = agent.position[d] +
                                   blend * (state.agents[j].position[d] -
                                            state.agents[k].position[d]);
                }
            }
            candidate = clamp_to_bounds(std::move(candidate), problem);
            EvaluatedSolution proposal =
                detail::evaluate_candidate(state, evaluator, std::move(candidate));
            if (proposal.fitness < agent.fitness) {
                agent.position = std::move(proposal.position);
                agent.fitness = proposal.fitness;
            }
        }

        state.last_step_evaluations = n;
        state.iteration += 1;
    }

  private:
    FpaParams params_;
};

}  // namespace

namespace detail {

std::unique_ptr<Optimizer> make_fpa(const FpaParams& params) {
    return std::make_unique<FpaOptimizer>(params);
}

}  // namespace detail
}  // namespace swarmlab
