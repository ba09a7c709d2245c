#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace swarmlab {

/// Parameters of a heavy-tailed (Levy) step distribution with density tail
/// ~ s^-(1+lambda). lambda must lie in (1, 3) -- the regime where the
/// power-law normalization lambda*Gamma(lambda)*sin(pi*lambda/2)/pi is the
/// intended one. scale multiplies every sampled step.
struct LevyParams {
  double lambda = 1.5;
  double scale = 1.0;

  LevyParams() = default;
  LevyParams(double lambda_, double scale_);
};

/// Abstract source of randomness. All stochastic code in the library draws
/// through this interface, which is what makes the optimizers scriptable in
/// tests (inject fixed values) and deterministic in production (RngStream).
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform draw in [lo, hi). lo == hi returns lo; lo > hi is an error.
  virtual double uniform(double lo, double hi) = 0;

  /// Standard normal draw.
  virtual double gaussian() = 0;

  /// One signed heavy-tailed step via Mantegna's algorithm: magnitude
  /// |u| / |v|^(1/lambda) with u ~ N(0, sigma_u^2), v ~ N(0, 1), scaled by
  /// params.scale; sign chosen by a fair coin so steps can be applied
  /// per-coordinate. The resulting |step| has survival function ~ s^-lambda,
  /// i.e. density tail exponent 1+lambda. Mantegna's sigma_u formula is only
  /// defined for lambda < 2 (sin(pi*lambda/2) must be positive), so this
  /// throws std::invalid_argument for lambda >= 2 even though LevyParams
  /// admits (1, 3) for the density formula.
  virtual double levy_step(const LevyParams& params) = 0;

  /// Uniformly random permutation of {0, ..., n-1}.
  virtual std::vector<std::size_t> permutation(std::size_t n) = 0;
};

/// Seedable deterministic random stream: xoshiro256++ seeded by splitmix64
/// expansion of a 64-bit seed. Pure integer arithmetic, so the same seed
/// yields the same sequence on every platform. Child streams for parallel
/// work are derived deterministically from (seed, index).
class RngStream final : public RandomSource {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Deterministic child stream: same (seed, index) always gives the same
  /// stream, and distinct indices give decorrelated streams.
  RngStream child(std::uint64_t index) const;

  /// Next raw 64-bit word of the underlying generator.
  std::uint64_t next_raw();

  double uniform(double lo, double hi) override;
  double gaussian() override;
  double levy_step(const LevyParams& params) override;
  std::vector<std::size_t> permutation(std::size_t n) override;

 private:
  double uniform01();  // [0, 1), 53-bit resolution

  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

/// Asymptotic tail density lambda*Gamma(lambda)*sin(pi*lambda/2)/pi * s^-(1+lambda)
/// of the Levy step distribution, for s > 0. Note the analytic zero at
/// lambda = 2 -- the boundary where the sampler's Mantegna construction stops
/// being valid (which is why levy_step rejects lambda >= 2).
double levy_tail_density(double s, const LevyParams& params);

}  // namespace swarmlab
