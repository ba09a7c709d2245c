#include <cstddef>
#include <utility>

#include "optimizer_detail.hpp"
#include "swarmlab/optimizer.hpp"

namespace swarmlab {
namespace {

// Cuckoo search, two phases per iteration.  Global phase: each agent
// proposes a heavy-tailed jump from its own position, and when the proposal
// beats that agent it overwrites a uniformly chosen nest — good eggs land in
// random nests.  Local phase: a coordinate-masked blend of two other agents'
// positions, accepted on improvement.  Both phases evaluate every proposal,
// so a step always costs exactly 2n evaluations.
class CuckooOptimizer final : public Optimizer {
  public:
    explicit CuckooOptimizer(const CuckooParams& params) : params_(params) {
        params_.validate();
    }

    [[nodiscard]] std::string name() const override { return "cuckoo"; }
    [[nodiscard]] std::size_t min_population() const override { return 3; }

    void step(OptimizerState& state,
              const Problem& problem,
              Evaluator& evaluator,
              RandomSource& rng) const override {
        detail::require_dimensions(state, problem, "cuckoo");
        const std::size_t dim = problem.dimension();
        const std::size_t n = state.agents.size();
        if (n < min_population()) {
            throw std::invalid_argument("cuckoo: population must be at least 3");
        }
        const LevyParams levy{params_.tail_exponent, 1.0};

        for (std::size_t i = 0; i < n; ++i) {
            Vector candidate(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                const double scale =
                    params_.step_scale ? *params_.step_scale : 0.01 * problem.width(d);
                candidate[d] = state.agents[i].position[d] + scale * rng.levy_step(levy);
            }
            candidate = clamp_to_bounds(std::move(candidate), problem);
            const std::size_t target =
                detail::index_from_uniform(rng.uniform(0.0, 1.0), n);
            EvaluatedSolution proposal =
                detail::evaluate_candidate(state, evaluator, std::move(candidate));
            if (proposal.fitness < state.agents[i].fitness) {
                state.agents[target].position = std::move(proposal.position);
                state.agents[target].fitness = proposal.fitness;
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
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
            Agent& agent = state.agents[i];
            Vector candidate(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                const double gate_draw = rng.uniform(0.0, 1.0);
                const double stretch = rng.uniform(0.0, 1.0);
                const double open = params_.discovery_rate - gate_draw > 0.0 ? 1.0 : 0.0;
                candidate[d] = agent.position[d] +
                               params_.local_step_scale * stretch * open *
                                   (state.agents[j].position[d] - state.agents[k].position[d]);
            }
            candidate = clamp_to_bounds(std::move(candidate), problem);
            EvaluatedSolution proposal =
                detail::evaluate_candidate(state, evaluator, std::move(candidate));
            if (proposal.fitness < agent.fitness) {
                agent.position = std::move(proposal.position);
                agent.fitness = proposal.fitness;
            }
        }

        state.last_step_evaluations = 2 * n;
        state.iteration += 1;
    }

  private:
    CuckooParams params_;
};

}  // namespace

namespace detail {

std::unique_ptr<Optimizer> make_cuckoo(const CuckooParams& params) {
    return std::make_unique<CuckooOptimizer>(params);
}

}  // namespace detail
}  // namespace swarmlab
