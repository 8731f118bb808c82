#pragma once
//
// Experiment runner behind the command line tool. A JSON config selects a
// pipeline; the result is the data file (CSV, or JSON for embed) plus a
// metadata document written next to it.
//

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sofic {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kRngName = "splitmix64-counter";
inline constexpr std::size_t kMaxDegree = 4096;
inline constexpr std::size_t kMaxTrials = 10'000'000;

enum class ExperimentKind { sofic, embed, gauss, entropy, harmonic };

std::optional<ExperimentKind> parse_kind(std::string_view name);
std::string kind_name(ExperimentKind kind);

struct RunOptions
{
    std::optional<std::uint64_t> seed; // overrides the config seed
    std::optional<std::size_t> trials;  // harmonic only
    std::optional<int> max_size;        // harmonic only
};

struct Report
{
    ExperimentKind kind = ExperimentKind::sofic;
    std::string data;
    nlohmann::json metadata;
};

// Throws ConfigError / ArgumentError / StructuralError for bad configs,
// NumericalError for numerical failures and ResourceError above the caps.
// Without any seed a fresh one is drawn and recorded in the metadata.
Report run_experiment(ExperimentKind kind, const nlohmann::json& config, const RunOptions& options = {});

// Kind from the config's "kind" field; throws ConfigError when absent or unknown.
ExperimentKind config_kind(const nlohmann::json& config);

// Schema, cross-field and cap checks without running. Empty when the config is usable.
std::vector<std::string> validate_config(const nlohmann::json& config,
                                         std::optional<ExperimentKind> kind = std::nullopt);

std::uint64_t fnv1a64(std::string_view bytes);

// Sampler stream used by the gauss and entropy pipelines for a run seed.
std::uint64_t sampler_seed(std::uint64_t seed);

} // namespace sofic
