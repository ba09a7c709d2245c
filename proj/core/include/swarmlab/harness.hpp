#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmlab/hybrid.hpp"
#include "swarmlab/optimizer.hpp"
#include "swarmlab/problem.hpp"
#include "swarmlab/run_record.hpp"

namespace swarmlab {

// A full experiment: one (problem, algorithm-or-hybrid) pairing run
// `repeats` times with deterministically derived child seeds.  Exactly one
// of `algorithm` / `hybrid` must be set.  An empty output_dir keeps
// everything in memory; otherwise each run's trace and a summary document
// are persisted there.
struct ExperimentConfig {
    std::string problem;
    std::size_t dimension = 2;
    std::string algorithm;
    std::optional<AlgoParams> params;  // unset → registry defaults
    std::optional<HybridSpec> hybrid;
    std::size_t population = 20;
    std::optional<std::uint64_t> max_evaluations;
    std::optional<std::uint64_t> max_iterations;
    std::size_t repeats = 1;
    std::uint64_t seed = 1;
    std::string output_dir;
    std::uint64_t trace_every = 1;  // keep every k-th trace row (plus first and last)
    double success_threshold = 1e-3;
    PenaltyConfig penalty;
    std::size_t workers = 1;

    // Every violation in the config, in field order; empty means valid.
    [[nodiscard]] std::vector<std::string> validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Raised for an invalid or unparseable config; carries one message per
// violation so callers can report all of them at once.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> violations);
    [[nodiscard]] const std::vector<std::string>& violations() const noexcept {
        return violations_;
    }

  private:
    std::vector<std::string> violations_;
};

// Raised when reading or writing experiment files fails; carries the path.
class IoError : public std::runtime_error {
  public:
    IoError(const std::filesystem::path& path, const std::string& what);
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
};

// Final-fitness statistics over the repeats of one configuration.  The
// standard deviation is the population form (divide by R), the median of an
// even count averages the two middle values, and a run succeeds when its
// final fitness is strictly below the threshold.
struct SummaryReport {
    double best = 0.0;
    double worst = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    double success_rate = 0.0;
    double success_threshold = 0.0;
    std::uint64_t total_evaluations = 0;
    std::vector<double> finals;  // per run, by run index
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    SummaryReport summary;
};

[[nodiscard]] SummaryReport summarize(const std::vector<double>& finals,
                                      double success_threshold);

// Config documents are JSON; see README for the schema.  parse_config
// reports malformed documents and unknown keys through ConfigError;
// load_config adds file reading (IoError).
[[nodiscard]] ExperimentConfig parse_config(const std::string& text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

// Runs the whole experiment: validates, executes `repeats` runs (on a
// bounded worker pool when workers > 1; run i always uses the stream
// RngStream(seed).child(i), so results are identical at any worker count),
// then persists traces and summary if output_dir is set.  Throws
// ConfigError / IoError accordingly.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config);

// Trace persistence.  The CSV is exactly:
//   run_id,seed,iteration,evaluations,best_fitness
// one row per trace point, floats printed with 17 significant digits so
// parsing them back is bit-exact.  Stage labels are deliberately not part of
// the format.
void write_trace(const RunRecord& record, const std::filesystem::path& path);
[[nodiscard]] RunRecord read_trace(const std::filesystem::path& path);

// Re-reads a written trace and checks its invariants (exact header, constant
// run_id/seed, strictly increasing evaluations, non-increasing best).
// Throws std::runtime_error on the first violation.
void lint_trace(const std::filesystem::path& path);

// Summary persistence: a versioned JSON document carrying the statistics,
// a full config echo, and wall-clock timing segregated under an
// explicitly informational key.  read_summary returns the echoed config and
// the statistics.
void write_summary(const ExperimentConfig& config,
                   const SummaryReport& summary,
                   const std::vector<RunRecord>& records,
                   const std::filesystem::path& path);
[[nodiscard]] std::pair<ExperimentConfig, SummaryReport> read_summary(
    const std::filesystem::path& path);

}  // namespace swarmlab
