// Command-line front end for the swarmlab experiment harness.
//
// Exit codes:
//   0  success
//   2  configuration error (every violation is printed to stderr)
//   3  runtime failure
//   4  I/O failure

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "swarmlab/benchmarks.hpp"
#include "swarmlab/harness.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string algorithm;
    std::string problem;
    std::optional<std::uint64_t> dimension;
    std::optional<std::uint64_t> population;
    std::optional<std::uint64_t> max_evaluations;
    std::optional<std::uint64_t> max_iterations;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> repeats;
    std::string output_dir;
    bool list_algorithms = false;
    bool list_problems = false;
};

// CLI flags override whatever the config file set.
void apply_overrides(swarmlab::ExperimentConfig& config, const CliOptions& options) {
    if (!options.algorithm.empty()) {
        config.algorithm = options.algorithm;
        config.hybrid.reset();
        config.params.reset();
    }
    if (!options.problem.empty()) config.problem = options.problem;
    if (options.dimension) config.dimension = static_cast<std::size_t>(*options.dimension);
    if (options.population) config.population = static_cast<std::size_t>(*options.population);
    if (options.max_evaluations) config.max_evaluations = *options.max_evaluations;
    if (options.max_iterations) config.max_iterations = *options.max_iterations;
    if (options.seed) config.seed = *options.seed;
    if (options.repeats) config.repeats = static_cast<std::size_t>(*options.repeats);
    if (!options.output_dir.empty()) config.output_dir = options.output_dir;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarmlab: population-based optimization experiments"};
    CliOptions options;

    app.add_option("--config", options.config_path, "JSON experiment config file");
    app.add_option("--algo", options.algorithm, "algorithm name (see --list-algorithms)");
    app.add_option("--problem", options.problem, "benchmark name (see --list-problems)");
    app.add_option("--dim", options.dimension, "problem dimension");
    app.add_option("--pop", options.population, "population size");
    app.add_option("--evals", options.max_evaluations, "objective-evaluation budget per run");
    app.add_option("--iters", options.max_iterations, "iteration budget per run");
    app.add_option("--seed", options.seed, "base seed (run i derives child stream i)");
    app.add_option("--repeats", options.repeats, "number of independent runs");
    app.add_option("--out", options.output_dir, "directory for trace CSVs and summary.json");
    app.add_flag("--list-algorithms", options.list_algorithms, "print algorithm names and exit");
    app.add_flag("--list-problems", options.list_problems, "print benchmark names and exit");

    CLI11_PARSE(app, argc, argv);

    if (options.list_algorithms) {
        for (const std::string& name : swarmlab::algorithm_names()) std::cout << name << '\n';
        return 0;
    }
    if (options.list_problems) {
        for (const std::string& name : swarmlab::benchmark_names()) std::cout << name << '\n';
        return 0;
    }

    try {
        swarmlab::ExperimentConfig config;
        if (!options.config_path.empty()) config = swarmlab::load_config(options.config_path);
        apply_overrides(config, options);

        const swarmlab::ExperimentResult result = swarmlab::run_experiment(config);
        const swarmlab::SummaryReport& summary = result.summary;

        char line[512];
        std::snprintf(line, sizeof line,
                      "problem=%s dim=%zu runs=%zu evals=%llu best=%.6g median=%.6g mean=%.6g "
                      "stddev=%.6g success_rate=%.3g",
                      config.problem.c_str(), config.dimension, result.records.size(),
                      static_cast<unsigned long long>(summary.total_evaluations), summary.best,
                      summary.median, summary.mean, summary.stddev, summary.success_rate);
        std::cout << line << '\n';
        if (!config.output_dir.empty()) {
            std::cout << "wrote " << result.records.size() << " trace files and summary.json to "
                      << config.output_dir << '\n';
        }
        return 0;
    } catch (const swarmlab::ConfigError& error) {
        for (const std::string& violation : error.violations()) {
            std::cerr << "config error: " << violation << '\n';
        }
        return 2;
    } catch (const swarmlab::IoError& error) {
        std::cerr << "io error: " << error.what() << '\n';
        return 4;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 3;
    }
}
