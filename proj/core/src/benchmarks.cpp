#include "swarmlab/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarmlab {

double sinc_objective(double x) {
    if (x == 0.0) return -1.0;
    return -std::sin(x) / x;
}

double abs_exp_sin_objective(double x) {
    return std::abs(x) * std::exp(-std::sin(x * x));
}

double multimodal_objective(const Vector& x) {
    double sum_sin_sq = 0.0;
    double sum_sq = 0.0;
    double sum_sin_sqrt_sq = 0.0;
    for (const double xi : x) {
        const double s = std::sin(xi);
        sum_sin_sq += s * s;
        sum_sq += xi * xi;
        const double r = std::sin(std::sqrt(std::abs(xi)));
        sum_sin_sqrt_sq += r * r;
    }
    return (sum_sin_sq - std::exp(-sum_sq)) * std::exp(-sum_sin_sqrt_sq);
}

namespace {

double sphere(const Vector& x) {
    double sum = 0.0;
    for (const double xi : x) sum += xi * xi;
    return sum;
}

double rosenbrock(const Vector& x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double rastrigin(const Vector& x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (const double xi : x) {
        sum += xi * xi - 10.0 * std::cos(2.0 * std::numbers::pi * xi);
    }
    return sum;
}

double ackley(const Vector& x) {
    const auto n = static_cast<double>(x.size());
    double sum_sq = 0.0;
    double sum_cos = 0.0;
    for (const double xi : x) {
        sum_sq += xi * xi;
        sum_cos += std::cos(2.0 * std::numbers::pi * xi);
    }
    // grouped so both pairs cancel exactly at the origin, where the minimum
    // value is exactly zero
    return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sum_sq / n))) +
           (std::exp(1.0) - std::exp(sum_cos / n));
}

Vector origin(std::size_t dimension) { return Vector(dimension, 0.0); }
Vector all_ones(std::size_t dimension) { return Vector(dimension, 1.0); }

std::vector<BenchmarkDescriptor> build_registry() {
    std::vector<BenchmarkDescriptor> entries;

    entries.push_back({
        "sinc",
        1,
        1,
        -20.0,
        20.0,
        [](const Vector& x) { return sinc_objective(x[0]); },
        origin,
        -1.0,
        "negated cardinal sine; smooth everywhere (removable singularity at 0)",
    });
    entries.push_back({
        "absexpsin",
        1,
        1,
        -10.0,
        10.0,
        [](const Vector& x) { return abs_exp_sin_objective(x[0]); },
        origin,
        0.0,
        "non-smooth at the minimizer (|x| kink at 0)",
    });
    entries.push_back({
        "yang-multimodal",
        std::nullopt,
        1,
        -10.0,
        10.0,
        multimodal_objective,
        origin,
        -1.0,
        "highly multimodal; not differentiable at the minimizer (sqrt(|x|) term)",
    });
    entries.push_back({
        "sphere",
        std::nullopt,
        1,
        -5.12,
        5.12,
        sphere,
        origin,
        0.0,
        "smooth, convex, separable",
    });
    entries.push_back({
        "rosenbrock",
        std::nullopt,
        2,
        -2.048,
        2.048,
        rosenbrock,
        all_ones,
        0.0,
        "smooth, narrow curved valley",
    });
    entries.push_back({
        "rastrigin",
        std::nullopt,
        1,
        -5.12,
        5.12,
        rastrigin,
        origin,
        0.0,
        "smooth, highly multimodal, separable",
    });
    entries.push_back({
        "ackley",
        std::nullopt,
        1,
        -32.768,
        32.768,
        ackley,
        origin,
        0.0,
        "smooth, multimodal with a deep central funnel",
    });

    return entries;
}

}  // namespace

Problem BenchmarkDescriptor::make_problem(std::size_t dimension) const {
    if (fixed_dimension && dimension != *fixed_dimension) {
        throw std::invalid_argument(name + ": dimension is fixed at " +
                                    std::to_string(*fixed_dimension));
    }
    if (dimension < min_dimension) {
        throw std::invalid_argument(name + ": dimension must be at least " +
                                    std::to_string(min_dimension));
    }
    return Problem(dimension, Vector(dimension, lower), Vector(dimension, upper), objective, {},
                   OptimumInfo{optimum_position(dimension), optimum_value});
}

const std::vector<BenchmarkDescriptor>& benchmark_registry() {
    static const std::vector<BenchmarkDescriptor> registry = build_registry();
    return registry;
}

const std::vector<std::string>& benchmark_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : benchmark_registry()) out.push_back(entry.name);
        return out;
    }();
    return names;
}

const BenchmarkDescriptor& find_benchmark(const std::string& name) {
    for (const auto& entry : benchmark_registry()) {
        if (entry.name == name) return entry;
    }
    throw std::invalid_argument("unknown benchmark: " + name);
}

std::vector<BenchmarkDescriptor> standard_suite() {
    return {find_benchmark("sphere"), find_benchmark("rosenbrock"), find_benchmark("rastrigin"),
            find_benchmark("ackley")};
}

}  // namespace swarmlab
