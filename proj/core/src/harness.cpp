#include "swarmlab/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"
#include "swarmlab/benchmarks.hpp"

namespace swarmlab {
namespace {

using nlohmann::json;

std::string join_violations(const std::vector<std::string>& violations) {
    std::string out = "invalid config";
    for (const std::string& violation : violations) out += "\n  - " + violation;
    return out;
}

// ---------------------------------------------------------------------------
// JSON → config.  Violations are collected, never thrown piecemeal, so a bad
// config reports everything wrong with it at once.
// ---------------------------------------------------------------------------

void note_unknown_keys(const json& node,
                       std::initializer_list<const char*> allowed,
                       const std::string& where,
                       std::vector<std::string>& violations) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) violations.push_back(where + ": unknown key '" + it.key() + "'");
    }
}

bool read_u64(const json& node,
              const char* key,
              std::uint64_t& out,
              const std::string& where,
              std::vector<std::string>& violations) {
    if (!node.contains(key) || node.at(key).is_null()) return false;
    if (!node.at(key).is_number_unsigned()) {
        violations.push_back(where + "." + key + ": expected a non-negative integer");
        return false;
    }
    out = node.at(key).get<std::uint64_t>();
    return true;
}

bool read_double(const json& node,
                 const char* key,
                 double& out,
                 const std::string& where,
                 std::vector<std::string>& violations) {
    if (!node.contains(key) || node.at(key).is_null()) return false;
    if (!node.at(key).is_number()) {
        violations.push_back(where + "." + key + ": expected a number");
        return false;
    }
    out = node.at(key).get<double>();
    return true;
}

bool read_string(const json& node,
                 const char* key,
                 std::string& out,
                 const std::string& where,
                 std::vector<std::string>& violations) {
    if (!node.contains(key) || node.at(key).is_null()) return false;
    if (!node.at(key).is_string()) {
        violations.push_back(where + "." + key + ": expected a string");
        return false;
    }
    out = node.at(key).get<std::string>();
    return true;
}

bool read_bool(const json& node,
               const char* key,
               bool& out,
               const std::string& where,
               std::vector<std::string>& violations) {
    if (!node.contains(key) || node.at(key).is_null()) return false;
    if (!node.at(key).is_boolean()) {
        violations.push_back(where + "." + key + ": expected a boolean");
        return false;
    }
    out = node.at(key).get<bool>();
    return true;
}

AlgoParams params_from_json(const std::string& algorithm,
                            const json& node,
                            const std::string& where,
                            std::vector<std::string>& violations) {
    if (!node.is_object()) {
        violations.push_back(where + ": expected an object");
        return PsoParams{};
    }
    if (algorithm == "pso") {
        PsoParams p;
        note_unknown_keys(node, {"global_weight", "personal_weight"}, where, violations);
        read_double(node, "global_weight", p.global_weight, where, violations);
        read_double(node, "personal_weight", p.personal_weight, where, violations);
        return p;
    }
    if (algorithm == "apso") {
        ApsoParams p;
        note_unknown_keys(node, {"attraction", "noise_init", "noise_decay"}, where, violations);
        read_double(node, "attraction", p.attraction, where, violations);
        read_double(node, "noise_init", p.noise_init, where, violations);
        read_double(node, "noise_decay", p.noise_decay, where, violations);
        return p;
    }
    if (algorithm == "bat") {
        BatParams p;
        note_unknown_keys(node,
                          {"freq_min", "freq_max", "loudness_decay", "pulse_growth",
                           "loudness_init", "pulse_rate_cap", "steer_toward_best"},
                          where, violations);
        read_double(node, "freq_min", p.freq_min, where, violations);
        read_double(node, "freq_max", p.freq_max, where, violations);
        read_double(node, "loudness_decay", p.loudness_decay, where, violations);
        read_double(node, "pulse_growth", p.pulse_growth, where, violations);
        read_double(node, "loudness_init", p.loudness_init, where, violations);
        read_double(node, "pulse_rate_cap", p.pulse_rate_cap, where, violations);
        read_bool(node, "steer_toward_best", p.steer_toward_best, where, violations);
        return p;
    }
    if (algorithm == "firefly") {
        FireflyParams p;
        note_unknown_keys(node, {"attractiveness", "absorption", "noise_init", "noise_decay"},
                          where, violations);
        read_double(node, "attractiveness", p.attractiveness, where, violations);
        read_double(node, "absorption", p.absorption, where, violations);
        read_double(node, "noise_init", p.noise_init, where, violations);
        read_double(node, "noise_decay", p.noise_decay, where, violations);
        return p;
    }
    if (algorithm == "cuckoo") {
        CuckooParams p;
        note_unknown_keys(node,
                          {"discovery_rate", "step_scale", "local_step_scale", "tail_exponent"},
                          where, violations);
        read_double(node, "discovery_rate", p.discovery_rate, where, violations);
        double scale = 0.0;
        if (read_double(node, "step_scale", scale, where, violations)) p.step_scale = scale;
        read_double(node, "local_step_scale", p.local_step_scale, where, violations);
        read_double(node, "tail_exponent", p.tail_exponent, where, violations);
        return p;
    }
    if (algorithm == "fpa") {
        FpaParams p;
        note_unknown_keys(node, {"global_probability", "step_scale", "tail_exponent"}, where,
                          violations);
        read_double(node, "global_probability", p.global_probability, where, violations);
        read_double(node, "step_scale", p.step_scale, where, violations);
        read_double(node, "tail_exponent", p.tail_exponent, where, violations);
        return p;
    }
    violations.push_back(where + ": unknown algorithm '" + algorithm + "'");
    return PsoParams{};
}

json params_to_json(const AlgoParams& params) {
    json node;
    std::visit(
        [&node](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PsoParams>) {
                node["global_weight"] = p.global_weight;
                node["personal_weight"] = p.personal_weight;
            } else if constexpr (std::is_same_v<T, ApsoParams>) {
                node["attraction"] = p.attraction;
                node["noise_init"] = p.noise_init;
                node["noise_decay"] = p.noise_decay;
            } else if constexpr (std::is_same_v<T, BatParams>) {
                node["freq_min"] = p.freq_min;
                node["freq_max"] = p.freq_max;
                node["loudness_decay"] = p.loudness_decay;
                node["pulse_growth"] = p.pulse_growth;
                node["loudness_init"] = p.loudness_init;
                node["pulse_rate_cap"] = p.pulse_rate_cap;
                node["steer_toward_best"] = p.steer_toward_best;
            } else if constexpr (std::is_same_v<T, FireflyParams>) {
                node["attractiveness"] = p.attractiveness;
                node["absorption"] = p.absorption;
                node["noise_init"] = p.noise_init;
                node["noise_decay"] = p.noise_decay;
            } else if constexpr (std::is_same_v<T, CuckooParams>) {
                node["discovery_rate"] = p.discovery_rate;
                if (p.step_scale) node["step_scale"] = *p.step_scale;
                node["local_step_scale"] = p.local_step_scale;
                node["tail_exponent"] = p.tail_exponent;
            } else {
                static_assert(std::is_same_v<T, FpaParams>);
                node["global_probability"] = p.global_probability;
                node["step_scale"] = p.step_scale;
                node["tail_exponent"] = p.tail_exponent;
            }
        },
        params);
    return node;
}

std::string params_algorithm_name(const AlgoParams& params) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PsoParams>) {
                return "pso";
            } else if constexpr (std::is_same_v<T, ApsoParams>) {
                return "apso";
            } else if constexpr (std::is_same_v<T, BatParams>) {
                return "bat";
            } else if constexpr (std::is_same_v<T, FireflyParams>) {
                return "firefly";
            } else if constexpr (std::is_same_v<T, CuckooParams>) {
                return "cuckoo";
            } else {
                static_assert(std::is_same_v<T, FpaParams>);
                return "fpa";
            }
        },
        params);
}

HybridSpec hybrid_from_json(const json& node,
                            const std::string& where,
                            std::vector<std::string>& violations) {
    HybridSpec spec;
    if (!node.is_object()) {
        violations.push_back(where + ": expected an object");
        return spec;
    }
    note_unknown_keys(node, {"structure", "stages", "merge_period"}, where, violations);

    std::string structure;
    if (read_string(node, "structure", structure, where, violations)) {
        try {
            spec.structure = HybridSpec::structure_from_name(structure);
        } catch (const std::invalid_argument& error) {
            violations.push_back(where + ".structure: " + error.what());
        }
    } else {
        violations.push_back(where + ".structure: required");
    }
    read_u64(node, "merge_period", spec.merge_period, where, violations);

    if (!node.contains("stages") || !node.at("stages").is_array()) {
        violations.push_back(where + ".stages: expected an array");
        return spec;
    }
    std::size_t index = 0;
    for (const json& entry : node.at("stages")) {
        const std::string stage_where = where + ".stages[" + std::to_string(index++) + "]";
        HybridStage stage;
        if (!entry.is_object()) {
            violations.push_back(stage_where + ": expected an object");
            continue;
        }
        note_unknown_keys(entry,
                          {"algorithm", "params", "budget_share", "switch_probability",
                           "subpopulation", "nested"},
                          stage_where, violations);
        read_string(entry, "algorithm", stage.algorithm, stage_where, violations);
        if (entry.contains("params") && !entry.at("params").is_null()) {
            if (stage.algorithm.empty()) {
                violations.push_back(stage_where + ".params: requires an algorithm name");
            } else {
                stage.params = params_from_json(stage.algorithm, entry.at("params"),
                                                stage_where + ".params", violations);
            }
        }
        read_double(entry, "budget_share", stage.budget_share, stage_where, violations);
        read_double(entry, "switch_probability", stage.switch_probability, stage_where,
                    violations);
        std::uint64_t subpopulation = 0;
        if (read_u64(entry, "subpopulation", subpopulation, stage_where, violations)) {
            stage.subpopulation = static_cast<std::size_t>(subpopulation);
        }
        if (entry.contains("nested") && !entry.at("nested").is_null()) {
            if (!stage.algorithm.empty()) {
                violations.push_back(stage_where +
                                     ": a stage is either an algorithm or a nested spec, not both");
            }
            stage.nested = std::make_shared<const HybridSpec>(
                hybrid_from_json(entry.at("nested"), stage_where + ".nested", violations));
        }
        spec.stages.push_back(std::move(stage));
    }
    return spec;
}

json hybrid_to_json(const HybridSpec& spec) {
    json node;
    node["structure"] = HybridSpec::structure_name(spec.structure);
    node["merge_period"] = spec.merge_period;
    json stages = json::array();
    for (const HybridStage& stage : spec.stages) {
        json entry = json::object();
        if (!stage.algorithm.empty()) entry["algorithm"] = stage.algorithm;
        if (stage.params) entry["params"] = params_to_json(*stage.params);
        if (stage.budget_share != 0.0) entry["budget_share"] = stage.budget_share;
        if (stage.switch_probability != 0.0) {
            entry["switch_probability"] = stage.switch_probability;
        }
        if (stage.subpopulation != 0) entry["subpopulation"] = stage.subpopulation;
        if (stage.nested) entry["nested"] = hybrid_to_json(*stage.nested);
        stages.push_back(std::move(entry));
    }
    node["stages"] = std::move(stages);
    return node;
}

ExperimentConfig config_from_json(const json& root, std::vector<std::string>& violations) {
    ExperimentConfig config;
    if (!root.is_object()) {
        violations.push_back("config: expected a JSON object");
        return config;
    }
    note_unknown_keys(root,
                      {"problem", "dimension", "algorithm", "params", "hybrid", "population",
                       "max_evaluations", "max_iterations", "repeats", "seed", "output_dir",
                       "trace_every", "success_threshold", "penalty", "workers"},
                      "config", violations);

    read_string(root, "problem", config.problem, "config", violations);
    std::uint64_t number = 0;
    if (read_u64(root, "dimension", number, "config", violations)) {
        config.dimension = static_cast<std::size_t>(number);
    }
    read_string(root, "algorithm", config.algorithm, "config", violations);
    if (root.contains("params") && !root.at("params").is_null()) {
        if (config.algorithm.empty()) {
            violations.push_back("config.params: requires an algorithm name");
        } else {
            config.params = params_from_json(config.algorithm, root.at("params"),
                                             "config.params", violations);
        }
    }
    if (root.contains("hybrid") && !root.at("hybrid").is_null()) {
        config.hybrid = hybrid_from_json(root.at("hybrid"), "config.hybrid", violations);
    }
    if (read_u64(root, "population", number, "config", violations)) {
        config.population = static_cast<std::size_t>(number);
    }
    if (read_u64(root, "max_evaluations", number, "config", violations)) {
        config.max_evaluations = number;
    }
    if (read_u64(root, "max_iterations", number, "config", violations)) {
        config.max_iterations = number;
    }
    if (read_u64(root, "repeats", number, "config", violations)) {
        config.repeats = static_cast<std::size_t>(number);
    }
    read_u64(root, "seed", config.seed, "config", violations);
    read_string(root, "output_dir", config.output_dir, "config", violations);
    read_u64(root, "trace_every", config.trace_every, "config", violations);
    read_double(root, "success_threshold", config.success_threshold, "config", violations);
    if (root.contains("penalty") && !root.at("penalty").is_null()) {
        const json& penalty = root.at("penalty");
        if (!penalty.is_object()) {
            violations.push_back("config.penalty: expected an object");
        } else {
            note_unknown_keys(penalty, {"coefficient", "exponent"}, "config.penalty", violations);
            read_double(penalty, "coefficient", config.penalty.coefficient, "config.penalty",
                        violations);
            read_double(penalty, "exponent", config.penalty.exponent, "config.penalty",
                        violations);
        }
    }
    if (read_u64(root, "workers", number, "config", violations)) {
        config.workers = static_cast<std::size_t>(number);
    }
    return config;
}

json config_to_json(const ExperimentConfig& config) {
    json root;
    root["problem"] = config.problem;
    root["dimension"] = config.dimension;
    if (!config.algorithm.empty()) root["algorithm"] = config.algorithm;
    if (config.params) root["params"] = params_to_json(*config.params);
    if (config.hybrid) root["hybrid"] = hybrid_to_json(*config.hybrid);
    root["population"] = config.population;
    if (config.max_evaluations) root["max_evaluations"] = *config.max_evaluations;
    if (config.max_iterations) root["max_iterations"] = *config.max_iterations;
    root["repeats"] = config.repeats;
    root["seed"] = config.seed;
    root["output_dir"] = config.output_dir;
    root["trace_every"] = config.trace_every;
    root["success_threshold"] = config.success_threshold;
    root["penalty"] = {{"coefficient", config.penalty.coefficient},
                       {"exponent", config.penalty.exponent}};
    root["workers"] = config.workers;
    return root;
}

// ---------------------------------------------------------------------------
// Semantic validation of a hybrid spec, mirroring what the runners enforce
// but collecting everything instead of stopping at the first problem.
// ---------------------------------------------------------------------------

void validate_hybrid(const HybridSpec& spec,
                     std::size_t population,
                     bool has_eval_budget,
                     const std::string& where,
                     std::vector<std::string>& violations,
                     int depth) {
    if (depth > 3) {
        violations.push_back(where + ": nesting depth exceeds 3");
        return;
    }
    if (spec.stages.empty()) {
        violations.push_back(where + ".stages: must not be empty");
        return;
    }

    const bool sequential = spec.structure == HybridSpec::Structure::sequential;
    const bool split = spec.structure == HybridSpec::Structure::parallel_split;

    if (sequential) {
        if (spec.stages.size() < 2) {
            violations.push_back(where + ": sequential composition needs at least two stages");
        }
        if (!has_eval_budget) {
            violations.push_back(where + ": sequential composition needs max_evaluations");
        }
        double share_sum = 0.0;
        for (const HybridStage& stage : spec.stages) share_sum += stage.budget_share;
        if (std::abs(share_sum - 1.0) > 1e-12) {
            violations.push_back(where + ": budget shares must sum to 1");
        }
    } else if (spec.structure == HybridSpec::Structure::parallel_switch) {
        double prob_sum = 0.0;
        for (const HybridStage& stage : spec.stages) prob_sum += stage.switch_probability;
        if (std::abs(prob_sum - 1.0) > 1e-12) {
            violations.push_back(where + ": switch probabilities must sum to 1");
        }
    } else if (split) {
        std::size_t claimed = 0;
        for (const HybridStage& stage : spec.stages) claimed += stage.subpopulation;
        if (claimed != population) {
            violations.push_back(where + ": branch sizes must sum to the population size");
        }
        if (spec.merge_period == 0) {
            violations.push_back(where + ".merge_period: must be positive");
        }
    }

    std::size_t index = 0;
    for (const HybridStage& stage : spec.stages) {
        const std::string stage_where = where + ".stages[" + std::to_string(index++) + "]";
        if (stage.nested) {
            if (!sequential) {
                violations.push_back(stage_where +
                                     ": nested specs are only allowed in sequential stages");
            } else {
                validate_hybrid(*stage.nested, population, true, stage_where, violations,
                                depth + 1);
            }
            continue;
        }
        try {
            const auto optimizer = stage.params ? make_optimizer(*stage.params)
                                                : make_optimizer(stage.algorithm);
            if (split) {
                const std::size_t minimum =
                    std::max<std::size_t>(3, optimizer->min_population());
                if (stage.subpopulation < minimum) {
                    violations.push_back(stage_where + ": branch needs at least " +
                                         std::to_string(minimum) + " agents");
                }
            }
        } catch (const std::exception& error) {
            violations.push_back(stage_where + ": " + error.what());
        }
    }
}

void thin_trace(std::vector<TraceRow>& trace, std::uint64_t every) {
    if (every <= 1 || trace.size() <= 2) return;
    std::vector<TraceRow> kept;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const bool edge = i == 0 || i + 1 == trace.size();
        if (edge || trace[i].iteration % every == 0) kept.push_back(std::move(trace[i]));
    }
    trace = std::move(kept);
}

std::filesystem::path trace_path(const std::filesystem::path& dir, std::uint64_t run_id) {
    char name[32];
    std::snprintf(name, sizeof name, "trace_%04llu.csv",
                  static_cast<unsigned long long>(run_id));
    return dir / name;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

SummaryReport summarize(const std::vector<double>& finals, double success_threshold) {
    if (finals.empty()) {
        throw std::invalid_argument("summarize: need at least one final fitness");
    }
    SummaryReport report;
    report.finals = finals;
    report.success_threshold = success_threshold;

    std::vector<double> sorted = finals;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    report.best = sorted.front();
    report.worst = sorted.back();
    report.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    report.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    double variance = 0.0;
    for (const double value : sorted) {
        const double delta = value - report.mean;
        variance += delta * delta;
    }
    report.stddev = std::sqrt(variance / static_cast<double>(n));

    const auto successes = std::count_if(sorted.begin(), sorted.end(), [&](double value) {
        return value < success_threshold;
    });
    report.success_rate = static_cast<double>(successes) / static_cast<double>(n);
    return report;
}

std::vector<std::string> ExperimentConfig::validate() const {
    std::vector<std::string> violations;

    if (problem.empty()) {
        violations.push_back("problem: required");
    } else {
        try {
            const BenchmarkDescriptor& descriptor = find_benchmark(problem);
            if (descriptor.fixed_dimension && dimension != *descriptor.fixed_dimension) {
                violations.push_back("dimension: " + problem + " is fixed at " +
                                     std::to_string(*descriptor.fixed_dimension));
            } else if (dimension < descriptor.min_dimension) {
                violations.push_back("dimension: " + problem + " needs at least " +
                                     std::to_string(descriptor.min_dimension) + " dimensions");
            }
        } catch (const std::invalid_argument& error) {
            violations.push_back(std::string("problem: ") + error.what());
        }
    }
    if (dimension == 0) violations.push_back("dimension: must be positive");

    const bool has_algorithm = !algorithm.empty();
    if (has_algorithm == hybrid.has_value()) {
        violations.push_back("algorithm: set exactly one of algorithm / hybrid");
    }
    std::size_t min_population = 1;
    if (has_algorithm && !hybrid) {
        try {
            if (params && params_algorithm_name(*params) != algorithm) {
                violations.push_back("params: parameter set belongs to '" +
                                     params_algorithm_name(*params) + "', not '" + algorithm +
                                     "'");
            }
            const auto optimizer = params ? make_optimizer(*params) : make_optimizer(algorithm);
            min_population = optimizer->min_population();
        } catch (const std::exception& error) {
            violations.push_back(std::string("algorithm: ") + error.what());
        }
    }
    if (hybrid) {
        validate_hybrid(*hybrid, population, max_evaluations.has_value(), "hybrid", violations,
                        1);
    }
    if (population < min_population) {
        violations.push_back("population: must be at least " + std::to_string(min_population));
    }
    if (population == 0) violations.push_back("population: must be positive");

    if (!max_evaluations && !max_iterations) {
        violations.push_back("budget: set max_evaluations and/or max_iterations");
    }
    if (max_evaluations && *max_evaluations == 0) {
        violations.push_back("max_evaluations: must be positive when set");
    }
    if (max_iterations && *max_iterations == 0) {
        violations.push_back("max_iterations: must be positive when set");
    }
    if (repeats == 0) violations.push_back("repeats: must be at least 1");
    if (trace_every == 0) violations.push_back("trace_every: must be at least 1");
    if (!std::isfinite(success_threshold)) {
        violations.push_back("success_threshold: must be finite");
    }
    if (!(penalty.coefficient > 0.0)) {
        violations.push_back("penalty.coefficient: must be positive");
    }
    if (!(penalty.exponent > 0.0)) violations.push_back("penalty.exponent: must be positive");
    if (workers == 0) violations.push_back("workers: must be at least 1");

    return violations;
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& error) {
        throw ConfigError({std::string("config is not valid JSON: ") + error.what()});
    }
    std::vector<std::string> violations;
    ExperimentConfig config = config_from_json(root, violations);
    if (!violations.empty()) throw ConfigError(std::move(violations));
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError(path, "read failed");
    return parse_config(buffer.str());
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    {
        std::vector<std::string> violations = config.validate();
        if (!violations.empty()) throw ConfigError(std::move(violations));
    }

    const Problem problem = find_benchmark(config.problem).make_problem(config.dimension);
    const Budget budget{config.max_evaluations, config.max_iterations};
    std::unique_ptr<Optimizer> optimizer;
    if (!config.hybrid) {
        optimizer = config.params ? make_optimizer(*config.params)
                                  : make_optimizer(config.algorithm);
    }

    std::vector<RunRecord> records(config.repeats);
    const RngStream base(config.seed);

    // Worker pool over run indices.  Run i always draws from
    // RngStream(seed).child(i) and lands in records[i], so the outputs are
    // identical no matter how many workers execute them or in what order.
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto execute_one = [&](std::size_t index) {
        RngStream stream = base.child(index);
        RunRecord record =
            config.hybrid
                ? run_hybrid(*config.hybrid, problem, config.population, budget, stream,
                             config.penalty)
                : run(*optimizer, problem, config.population, budget, stream, config.penalty);
        record.run_id = index;
        record.seed = stream.seed();
        thin_trace(record.trace, config.trace_every);
        records[index] = std::move(record);
    };
    const auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t index = next.fetch_add(1);
            if (index >= records.size()) break;
            try {
                execute_one(index);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
            }
        }
    };

    const std::size_t worker_count =
        std::max<std::size_t>(1, std::min(config.workers, records.size()));
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(worker);
        for (std::thread& thread : pool) thread.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<double> finals;
    finals.reserve(records.size());
    std::uint64_t total_evaluations = 0;
    for (const RunRecord& record : records) {
        finals.push_back(record.best_fitness);
        total_evaluations += record.trace.back().evaluations;
    }
    SummaryReport summary = summarize(finals, config.success_threshold);
    summary.total_evaluations = total_evaluations;

    if (!config.output_dir.empty()) {
        const std::filesystem::path dir(config.output_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError(dir, "cannot create output directory: " + ec.message());
        for (const RunRecord& record : records) {
            const std::filesystem::path path = trace_path(dir, record.run_id);
            write_trace(record, path);
            lint_trace(path);
        }
        write_summary(config, summary, records, dir / "summary.json");
    }

    return {std::move(records), std::move(summary)};
}

void write_trace(const RunRecord& record, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << "run_id,seed,iteration,evaluations,best_fitness\n";
    char fitness[64];
    for (const TraceRow& row : record.trace) {
        std::snprintf(fitness, sizeof fitness, "%.17g", row.best_fitness);
        out << record.run_id << ',' << record.seed << ',' << row.iteration << ','
            << row.evaluations << ',' << fitness << '\n';
    }
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

RunRecord read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open trace");

    std::string line;
    if (!std::getline(in, line) || line != "run_id,seed,iteration,evaluations,best_fitness") {
        throw IoError(path, "bad or missing trace header");
    }

    RunRecord record;
    bool first = true;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        std::array<std::string, 5> fields;
        std::size_t field = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field >= fields.size()) {
                    throw IoError(path, "too many fields on line " + std::to_string(line_number));
                }
                fields[field++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field != fields.size()) {
            throw IoError(path, "expected 5 fields on line " + std::to_string(line_number));
        }

        const auto parse_u64 = [&](const std::string& text) {
            std::uint64_t value = 0;
            const auto [ptr, err] =
                std::from_chars(text.data(), text.data() + text.size(), value);
            if (err != std::errc() || ptr != text.data() + text.size()) {
                throw IoError(path, "bad integer on line " + std::to_string(line_number));
            }
            return value;
        };
        const std::uint64_t run_id = parse_u64(fields[0]);
        const std::uint64_t seed = parse_u64(fields[1]);
        TraceRow row;
        row.iteration = parse_u64(fields[2]);
        row.evaluations = parse_u64(fields[3]);
        char* end = nullptr;
        row.best_fitness = std::strtod(fields[4].c_str(), &end);
        if (end != fields[4].c_str() + fields[4].size() || fields[4].empty()) {
            throw IoError(path, "bad float on line " + std::to_string(line_number));
        }

        if (first) {
            record.run_id = run_id;
            record.seed = seed;
            first = false;
        } else if (run_id != record.run_id || seed != record.seed) {
            throw IoError(path, "run_id/seed change on line " + std::to_string(line_number));
        }
        record.trace.push_back(std::move(row));
    }
    if (record.trace.empty()) throw IoError(path, "trace has no rows");
    record.best_fitness = record.trace.back().best_fitness;
    return record;
}

void lint_trace(const std::filesystem::path& path) {
    const RunRecord record = read_trace(path);
    for (std::size_t i = 1; i < record.trace.size(); ++i) {
        if (record.trace[i].evaluations <= record.trace[i - 1].evaluations) {
            throw std::runtime_error(path.string() + ": evaluations not strictly increasing at row " +
                                     std::to_string(i));
        }
        if (record.trace[i].best_fitness > record.trace[i - 1].best_fitness) {
            throw std::runtime_error(path.string() + ": best fitness increases at row " +
                                     std::to_string(i));
        }
    }
}

void write_summary(const ExperimentConfig& config,
                   const SummaryReport& summary,
                   const std::vector<RunRecord>& records,
                   const std::filesystem::path& path) {
    json doc;
    doc["schema_version"] = 1;
    doc["config"] = config_to_json(config);

    json results;
    results["best"] = summary.best;
    results["worst"] = summary.worst;
    results["mean"] = summary.mean;
    results["median"] = summary.median;
    results["stddev"] = summary.stddev;
    results["success_rate"] = summary.success_rate;
    results["success_threshold"] = summary.success_threshold;
    results["total_evaluations"] = summary.total_evaluations;
    results["finals"] = summary.finals;
    doc["results"] = std::move(results);

    json timing;
    timing["note"] =
        "informational only: wall-clock depends on hardware and load and is excluded from "
        "all reproducibility guarantees";
    double total_seconds = 0.0;
    json per_run = json::array();
    for (const RunRecord& record : records) {
        per_run.push_back(record.wall_clock_seconds);
        total_seconds += record.wall_clock_seconds;
    }
    timing["wall_clock_seconds_per_run"] = std::move(per_run);
    timing["wall_clock_seconds_total"] = total_seconds;
    doc["informational_timing"] = std::move(timing);

    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

std::pair<ExperimentConfig, SummaryReport> read_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open summary");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& error) {
        throw IoError(path, std::string("summary is not valid JSON: ") + error.what());
    }

    if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_unsigned() ||
        doc.at("schema_version").get<std::uint64_t>() != 1) {
        throw IoError(path, "unsupported summary schema_version");
    }
    if (!doc.contains("config") || !doc.contains("results")) {
        throw IoError(path, "summary is missing config or results");
    }

    std::vector<std::string> violations;
    ExperimentConfig config = config_from_json(doc.at("config"), violations);
    if (!violations.empty()) throw ConfigError(std::move(violations));

    const json& results = doc.at("results");
    SummaryReport summary;
    try {
        summary.best = results.at("best").get<double>();
        summary.worst = results.at("worst").get<double>();
        summary.mean = results.at("mean").get<double>();
        summary.median = results.at("median").get<double>();
        summary.stddev = results.at("stddev").get<double>();
        summary.success_rate = results.at("success_rate").get<double>();
        summary.success_threshold = results.at("success_threshold").get<double>();
        summary.total_evaluations = results.at("total_evaluations").get<std::uint64_t>();
        summary.finals = results.at("finals").get<std::vector<double>>();
    } catch (const json::exception& error) {
        throw IoError(path, std::string("summary results malformed: ") + error.what());
    }
    return {std::move(config), std::move(summary)};
}

}  // namespace swarmlab
