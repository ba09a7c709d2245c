#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "support/stat_oracles.hpp"
#include "swarmlab/random.hpp"

using swarmlab::LevyParams;
using swarmlab::RngStream;

TEST_CASE("same seed reproduces the same raw stream") {
    RngStream a(42);
    RngStream b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_raw() == b.next_raw());
}

TEST_CASE("different seeds and different children give different streams") {
    RngStream a(1);
    RngStream b(2);
    bool any_diff = false;
    for (int i = 0; i < 64 && !any_diff; ++i) any_diff = a.next_raw() != b.next_raw();
    CHECK(any_diff);

    RngStream parent(7);
    RngStream c0 = parent.child(0);
    RngStream c1 = parent.child(1);
    CHECK(c0.seed() != c1.seed());
    CHECK(c0.next_raw() != c1.next_raw());

    // Child derivation is a pure function of (seed, index).
    RngStream again = RngStream(7).child(0);
    CHECK(again.seed() == RngStream(7).child(0).seed());
    CHECK(again.next_raw() == RngStream(7).child(0).next_raw());
}

TEST_CASE("uniform stays inside its half-open interval") {
    RngStream rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform(-2.5, 4.0);
        CHECK(u >= -2.5);
        CHECK(u < 4.0);
    }
    CHECK(rng.uniform(1.25, 1.25) == 1.25);
    CHECK_THROWS_AS((void)rng.uniform(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("uniform sample mean matches the interval midpoint") {
    RngStream rng(11);
    std::vector<double> draws(200000);
    for (double& u : draws) u = rng.uniform(0.0, 1.0);
    // mean 0.5, sd of the mean = 1/sqrt(12*n) ~ 6.5e-4; 10 sigma gate
    CHECK(std::abs(swarmlab::test::sample_mean(draws) - 0.5) < 6.5e-3);
}

TEST_CASE("gaussian moments and tail mass") {
    RngStream rng(17);
    std::vector<double> draws(1000000);
    std::size_t outside = 0;
    for (double& z : draws) {
        z = rng.gaussian();
        if (std::abs(z) > 1.96) ++outside;
    }
    CHECK(std::abs(swarmlab::test::sample_mean(draws)) < 0.01);
    CHECK(std::abs(swarmlab::test::sample_stddev(draws) - 1.0) < 0.01);
    // P(|Z| > 1.96) = 0.05 for a standard normal
    const double fraction = static_cast<double>(outside) / static_cast<double>(draws.size());
    CHECK(std::abs(fraction - 0.05) < 0.005);
}

TEST_CASE("levy parameter validation") {
    CHECK_THROWS_AS(LevyParams(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LevyParams(3.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LevyParams(1.5, 0.0), std::invalid_argument);
    CHECK_NOTHROW(LevyParams(1.5, 1.0));
    CHECK_NOTHROW(LevyParams(2.5, 1.0));  // density formula valid, sampler will refuse

    RngStream rng(5);
    CHECK_THROWS_AS((void)rng.levy_step(LevyParams(2.5, 1.0)), std::invalid_argument);
}

TEST_CASE("levy steps are heavy tailed with the requested exponent") {
    RngStream rng(2024);
    const LevyParams params(1.5, 1.0);
    std::vector<double> magnitudes(1000000);
    std::size_t positive = 0;
    for (double& s : magnitudes) {
        const double step = rng.levy_step(params);
        if (step > 0.0) ++positive;
        s = std::abs(step);
    }

    // density tail exponent 1 + lambda = 2.5, Hill estimator on the top 1%
    const double hill =
        swarmlab::test::hill_density_exponent(magnitudes, magnitudes.size() / 100);
    CHECK(std::abs(hill - 2.5) < 0.15);

    // survival exponent lambda = 1.5 from the log-log CCDF slope
    const double slope = swarmlab::test::ccdf_loglog_slope(magnitudes, 10.0, 100.0, 25);
    CHECK(std::abs(slope - (-1.5)) < 0.15);

    // halving the threshold multiplies the tail mass by 2^lambda
    const double ratio = swarmlab::test::tail_ratio(magnitudes, 10.0, 20.0);
    CHECK(std::abs(ratio - std::pow(2.0, 1.5)) < 0.2 * std::pow(2.0, 1.5));

    // fair-coin sign
    const double positive_fraction =
        static_cast<double>(positive) / static_cast<double>(magnitudes.size());
    CHECK(std::abs(positive_fraction - 0.5) < 0.005);
}

TEST_CASE("levy scale multiplies every step exactly") {
    RngStream a(99);
    RngStream b(99);
    const LevyParams unit(1.5, 1.0);
    const LevyParams doubled(1.5, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double s1 = a.levy_step(unit);
        const double s2 = b.levy_step(doubled);
        CHECK(s2 == doctest::Approx(2.0 * s1).epsilon(1e-15));
    }
}

TEST_CASE("levy tail density matches the closed form") {
    // lambda * Gamma(lambda) * sin(pi*lambda/2) / pi * s^-(1+lambda),
    // evaluated by hand for lambda = 1.5: Gamma(1.5) = sqrt(pi)/2, so the
    // constant is 1.5 * 0.88622692545275801 * sin(3*pi/4) / pi
    //           = 0.29920671030107454.
    const LevyParams params(1.5, 1.0);
    CHECK(swarmlab::levy_tail_density(10.0, params) ==
          doctest::Approx(0.29920671030107454 * std::pow(10.0, -2.5)).epsilon(1e-12));
    CHECK(swarmlab::levy_tail_density(1.0, params) ==
          doctest::Approx(0.29920671030107454).epsilon(1e-12));

    // scale enters as a pure change of units
    const LevyParams scaled(1.5, 2.0);
    CHECK(swarmlab::levy_tail_density(10.0, scaled) > 0.0);

    // analytic zero of sin(pi*lambda/2) at lambda = 2: the normalization
    // constant vanishes exactly at the boundary where the sampler gives up
    const LevyParams boundary(2.0, 1.0);
    CHECK(swarmlab::levy_tail_density(1.0, boundary) == 0.0);
}

TEST_CASE("permutations are complete and deterministic") {
    RngStream rng(8);
    CHECK(rng.permutation(0).empty());
    CHECK(rng.permutation(1) == std::vector<std::size_t>{0});

    for (int rep = 0; rep < 50; ++rep) {
        auto perm = rng.permutation(10);
        auto sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> expected(10);
        std::iota(expected.begin(), expected.end(), 0);
        CHECK(sorted == expected);
    }

    RngStream x(21);
    RngStream y(21);
    for (int rep = 0; rep < 20; ++rep) CHECK(x.permutation(7) == y.permutation(7));
}

TEST_CASE("permutation first elements are roughly uniform") {
    RngStream rng(33);
    std::array<int, 3> counts{0, 0, 0};
    for (int rep = 0; rep < 6000; ++rep) counts[rng.permutation(3)[0]] += 1;
    for (const int c : counts) {
        // each cell is Binomial(6000, 1/3): mean 2000, sd ~36.5; 8 sigma gate
        CHECK(c > 1700);
        CHECK(c < 2300);
    }
}
