#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "swarmlab/benchmarks.hpp"
#include "swarmlab/random.hpp"

using swarmlab::BenchmarkDescriptor;
using swarmlab::RngStream;
using swarmlab::Vector;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("sinc curve: minimum -1 at zero, known values, removable singularity") {
    CHECK(swarmlab::sinc_objective(0.0) == -1.0);
    CHECK(std::abs(swarmlab::sinc_objective(kPi)) < 1e-12);
    CHECK(swarmlab::sinc_objective(kPi / 2) ==
          doctest::Approx(-2.0 / kPi).epsilon(1e-12));
    // continuity across the filled-in singularity
    CHECK(swarmlab::sinc_objective(1e-4) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(swarmlab::sinc_objective(-1e-4) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(swarmlab::sinc_objective(1e-8) == doctest::Approx(-1.0).epsilon(1e-12));
    // even function
    CHECK(swarmlab::sinc_objective(2.5) == swarmlab::sinc_objective(-2.5));
}

TEST_CASE("absolute-value-times-exp curve: minimum 0 at zero") {
    CHECK(swarmlab::abs_exp_sin_objective(0.0) == 0.0);
    // |1| * e^{-sin(1)}
    CHECK(swarmlab::abs_exp_sin_objective(1.0) ==
          doctest::Approx(std::exp(-std::sin(1.0))).epsilon(1e-12));
    CHECK(swarmlab::abs_exp_sin_objective(-1.0) ==
          swarmlab::abs_exp_sin_objective(1.0));  // even: depends on |x| and x^2
    // strictly positive away from zero
    for (const double x : {0.1, 0.5, 2.0, 7.5}) {
        CHECK(swarmlab::abs_exp_sin_objective(x) > 0.0);
    }
}

TEST_CASE("multimodal landscape: value -1 at the origin in any dimension") {
    for (const std::size_t n : {1u, 2u, 5u, 10u}) {
        CHECK(swarmlab::multimodal_objective(Vector(n, 0.0)) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("multimodal landscape: hand value at x = (1)") {
    // [sin^2(1) - e^{-1}] * e^{-sin^2(1)}
    const double s = std::sin(1.0) * std::sin(1.0);
    const double expected = (s - std::exp(-1.0)) * std::exp(-s);
    CHECK(swarmlab::multimodal_objective({1.0}) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("multimodal landscape: permutation invariance and a global floor of -1") {
    CHECK(swarmlab::multimodal_objective({0.5, -1.5, 2.0}) ==
          doctest::Approx(swarmlab::multimodal_objective({2.0, 0.5, -1.5})).epsilon(1e-14));

    // falsification sweep: nothing sampled in the box dips below the known
    // optimum value -1
    RngStream rng(77);
    for (const std::size_t n : {1u, 2u, 5u}) {
        for (int i = 0; i < 50000; ++i) {
            Vector x(n);
            for (double& v : x) v = rng.uniform(-10.0, 10.0);
            CHECK(swarmlab::multimodal_objective(x) >= -1.0);
        }
    }
}

TEST_CASE("every registered benchmark evaluates its claimed optimum") {
    for (const BenchmarkDescriptor& descriptor : swarmlab::benchmark_registry()) {
        const std::size_t dim =
            descriptor.fixed_dimension ? *descriptor.fixed_dimension
                                       : std::max<std::size_t>(2, descriptor.min_dimension);
        const swarmlab::Problem problem = descriptor.make_problem(dim);
        REQUIRE(problem.known_optimum());
        const auto& optimum = *problem.known_optimum();
        CHECK(problem.objective(optimum.position) ==
              doctest::Approx(optimum.value).epsilon(1e-12));
        // the optimum lies inside the advertised box
        for (const double v : optimum.position) {
            CHECK(v >= descriptor.lower);
            CHECK(v <= descriptor.upper);
        }
    }
}

TEST_CASE("registry lookups and dimension rules") {
    CHECK(swarmlab::benchmark_names() ==
          std::vector<std::string>{"sinc", "absexpsin", "yang-multimodal", "sphere",
                                   "rosenbrock", "rastrigin", "ackley"});
    CHECK_THROWS_AS((void)swarmlab::find_benchmark("himmelblau"), std::invalid_argument);

    // 1-D-only curves reject other dimensions
    CHECK_THROWS_AS((void)swarmlab::find_benchmark("sinc").make_problem(2),
                    std::invalid_argument);
    CHECK_NOTHROW((void)swarmlab::find_benchmark("sinc").make_problem(1));
    // rosenbrock needs at least two coordinates
    CHECK_THROWS_AS((void)swarmlab::find_benchmark("rosenbrock").make_problem(1),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)swarmlab::find_benchmark("sphere").make_problem(0),
                    std::invalid_argument);
}

TEST_CASE("standard suite optima are exact") {
    for (const BenchmarkDescriptor& descriptor : swarmlab::standard_suite()) {
        const swarmlab::Problem problem = descriptor.make_problem(3);
        REQUIRE(problem.known_optimum());
        CHECK(problem.objective(problem.known_optimum()->position) ==
              doctest::Approx(problem.known_optimum()->value).epsilon(1e-12));
    }

    // spot values: sphere and rastrigin at the origin, rosenbrock at ones,
    // ackley at the origin is exactly zero by construction
    const auto sphere = swarmlab::find_benchmark("sphere").make_problem(4);
    CHECK(sphere.objective({0.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(sphere.objective({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(30.0));

    const auto rosenbrock = swarmlab::find_benchmark("rosenbrock").make_problem(2);
    CHECK(rosenbrock.objective({1.0, 1.0}) == 0.0);
    CHECK(rosenbrock.objective({0.0, 0.0}) == doctest::Approx(1.0));

    const auto rastrigin = swarmlab::find_benchmark("rastrigin").make_problem(2);
    CHECK(rastrigin.objective({0.0, 0.0}) == 0.0);
    // at integer lattice points the cosine term vanishes: f(1,1) = 2
    CHECK(rastrigin.objective({1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));

    const auto ackley = swarmlab::find_benchmark("ackley").make_problem(2);
    CHECK(ackley.objective({0.0, 0.0}) == 0.0);
    CHECK(ackley.objective({1.0, 1.0}) > 1.0);
}
