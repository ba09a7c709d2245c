// Microbenchmarks for the hot paths: raw draw throughput of the random
// source, objective evaluation overhead, and the per-iteration cost of each
// algorithm on a small smooth problem.  Build with -DSWARMLAB_BUILD_BENCHMARKS=ON
// (the default) and run build/benchmarks/swarmlab-microbench.

#include <cstddef>
#include <string>

#include <benchmark/benchmark.h>

#include "swarmlab/benchmarks.hpp"
#include "swarmlab/optimizer.hpp"
#include "swarmlab/problem.hpp"
#include "swarmlab/random.hpp"

namespace {

using swarmlab::Evaluator;
using swarmlab::LevyParams;
using swarmlab::OptimizerState;
using swarmlab::PenaltyConfig;
using swarmlab::Problem;
using swarmlab::RngStream;
using swarmlab::Vector;

void BM_UniformDraw(benchmark::State& state) {
    RngStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.uniform(0.0, 1.0));
    }
}
BENCHMARK(BM_UniformDraw);

void BM_GaussianDraw(benchmark::State& state) {
    RngStream rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.gaussian());
    }
}
BENCHMARK(BM_GaussianDraw);

void BM_HeavyTailedDraw(benchmark::State& state) {
    RngStream rng(3);
    const LevyParams params{1.5, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.levy_step(params));
    }
}
BENCHMARK(BM_HeavyTailedDraw);

void BM_PermutationDraw(benchmark::State& state) {
    RngStream rng(4);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.permutation(n));
    }
}
BENCHMARK(BM_PermutationDraw)->Arg(20)->Arg(100);

void BM_Evaluate(benchmark::State& state) {
    const auto dimension = static_cast<std::size_t>(state.range(0));
    const Problem problem = swarmlab::find_benchmark("sphere").make_problem(dimension);
    Evaluator evaluator(problem, PenaltyConfig{});
    const Vector x(dimension, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluator.evaluate(x));
    }
}
BENCHMARK(BM_Evaluate)->Arg(2)->Arg(30);

// One optimizer iteration with a population of 20 on the 2-D smooth bowl.
// The firefly pass is quadratic in the population; the others are linear.
void BM_AlgorithmStep(benchmark::State& state, const std::string& name) {
    const Problem problem = swarmlab::find_benchmark("sphere").make_problem(2);
    const auto optimizer = swarmlab::make_optimizer(name);
    Evaluator evaluator(problem, PenaltyConfig{});
    RngStream rng(99);
    OptimizerState swarm = optimizer->initialize(problem, 20, evaluator, rng);
    for (auto _ : state) {
        optimizer->step(swarm, problem, evaluator, rng);
        benchmark::DoNotOptimize(swarm.global_best.fitness);
    }
}
BENCHMARK_CAPTURE(BM_AlgorithmStep, pso, std::string("pso"));
BENCHMARK_CAPTURE(BM_AlgorithmStep, apso, std::string("apso"));
BENCHMARK_CAPTURE(BM_AlgorithmStep, bat, std::string("bat"));
BENCHMARK_CAPTURE(BM_AlgorithmStep, firefly, std::string("firefly"));
BENCHMARK_CAPTURE(BM_AlgorithmStep, cuckoo, std::string("cuckoo"));
BENCHMARK_CAPTURE(BM_AlgorithmStep, fpa, std::string("fpa"));

}  // namespace

BENCHMARK_MAIN();
