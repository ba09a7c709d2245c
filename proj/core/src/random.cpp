#include "swarmlab/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarmlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

LevyParams::LevyParams(double lambda_, double scale_) : lambda(lambda_), scale(scale_) {
  if (!(lambda > 1.0 && lambda < 3.0)) {
    throw std::invalid_argument("LevyParams: lambda must lie in (1, 3)");
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("LevyParams: scale must be positive");
  }
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& word : state_) {
    word = splitmix64(x);
  }
  // splitmix64 cannot emit four zero words from any seed we would plausibly
  // see, but xoshiro's all-zero state is absorbing, so guard anyway.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = kGolden;
  }
}

RngStream RngStream::child(std::uint64_t index) const {
  // splitmix64-style finalizer over (seed, index): deterministic, and a
  // single avalanche step is enough to decorrelate neighbouring indices.
  std::uint64_t x = seed_ ^ rotl(kGolden * (index + 1), 32);
  return RngStream(splitmix64(x));
}

std::uint64_t RngStream::next_raw() {
  // xoshiro256++ by Blackman & Vigna.
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (lo > hi) {
    throw std::invalid_argument("uniform: lo must not exceed hi");
  }
  if (lo == hi) {
    return lo;
  }
  double v = lo + uniform01() * (hi - lo);
  // lo + u*(hi-lo) can round up to hi for u just below 1; keep [lo, hi).
  if (v >= hi) {
    v = std::nextafter(hi, lo);
  }
  return v;
}

double RngStream::gaussian() {
  // Marsaglia polar method: rejection, but deterministic for a given stream.
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

double RngStream::levy_step(const LevyParams& params) {
  const double lambda = params.lambda;
  if (!(lambda > 1.0 && lambda < 2.0)) {
    throw std::invalid_argument(
        "levy_step: Mantegna sampling requires lambda in (1, 2)");
  }
  const double sigma_u = std::pow(
      std::tgamma(1.0 + lambda) * std::sin(std::numbers::pi * lambda / 2.0) /
          (std::tgamma((1.0 + lambda) / 2.0) * lambda *
           std::pow(2.0, (lambda - 1.0) / 2.0)),
      1.0 / lambda);
  const double u = gaussian() * sigma_u;
  double v = gaussian();
  while (v == 0.0) {
    v = gaussian();  // measure-zero guard: keeps the step finite
  }
  const double magnitude =
      std::abs(u) / std::pow(std::abs(v), 1.0 / lambda) * params.scale;
  return uniform01() < 0.5 ? -magnitude : magnitude;
}

std::vector<std::size_t> RngStream::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = i;
  }
  // Fisher-Yates; the modulo bias is ~i/2^64 and irrelevant next to the
  // requirement that the shuffle be deterministic per stream.
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(next_raw() % i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

double levy_tail_density(double s, const LevyParams& params) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("levy_tail_density: s must be positive");
  }
  const double lambda = params.lambda;
  // sin(pi * lambda/2) with the argument reduced about the nearest integer
  // before scaling by pi, so the analytic zero at the Gaussian boundary
  // (lambda = 2, where the power tail disappears) is exact instead of being
  // polluted by the rounding of pi itself.
  const double half = lambda / 2.0;
  const double nearest = std::round(half);
  const double reduced = half - nearest;
  const double sign = std::fmod(nearest, 2.0) == 0.0 ? 1.0 : -1.0;
  const double sine = sign * std::sin(std::numbers::pi * reduced);
  return lambda * std::tgamma(lambda) * sine / std::numbers::pi *
         std::pow(s, -(1.0 + lambda));
}

}  // namespace swarmlab
