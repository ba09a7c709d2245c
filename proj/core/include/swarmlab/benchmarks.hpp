#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swarmlab/problem.hpp"

namespace swarmlab {

// Scalar test curves.  Both are stored in minimization form; the sinc curve
// is negated so its famous peak of 1 at x = 0 becomes a minimum of -1, with
// the removable singularity filled by that limit value.
[[nodiscard]] double sinc_objective(double x);

// |x| * exp(-sin(x^2)): non-smooth at its minimizer x = 0, where it is 0.
[[nodiscard]] double abs_exp_sin_objective(double x);

// The highly multimodal vector test function
//   [ sum sin^2(x_i) - exp(-sum x_i^2) ] * exp(-sum sin^2(sqrt(|x_i|)))
// with global minimum -1 at the origin in any dimension; |x_i| is taken
// before the square root so the expression stays real for negative
// coordinates.  Not differentiable at the minimizer.
[[nodiscard]] double multimodal_objective(const Vector& x);

// A problem family addressable by name: a box domain, an objective, and
// enough optimum metadata to check results against.
struct BenchmarkDescriptor {
    std::string name;
    // Set for the inherently one-dimensional curves; unset families accept
    // any dimension >= min_dimension.
    std::optional<std::size_t> fixed_dimension;
    std::size_t min_dimension = 1;
    double lower = 0.0;  // same box in every coordinate
    double upper = 0.0;
    Objective objective;
    std::function<Vector(std::size_t dimension)> optimum_position;
    double optimum_value = 0.0;
    std::string notes;

    // Materializes the descriptor at a concrete dimension, carrying the
    // known optimum along.  Rejects dimensions the family does not support.
    [[nodiscard]] Problem make_problem(std::size_t dimension) const;
};

// All registered families, in registry order:
// "sinc", "absexpsin", "yang-multimodal", "sphere", "rosenbrock",
// "rastrigin", "ackley".
[[nodiscard]] const std::vector<BenchmarkDescriptor>& benchmark_registry();
[[nodiscard]] const std::vector<std::string>& benchmark_names();
[[nodiscard]] const BenchmarkDescriptor& find_benchmark(const std::string& name);

// The four classic smooth baselines (sphere, rosenbrock, rastrigin, ackley).
[[nodiscard]] std::vector<BenchmarkDescriptor> standard_suite();

}  // namespace swarmlab
