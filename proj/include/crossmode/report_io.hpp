#pragma once

#include <filesystem>
#include <string>

#include "crossmode/scenarios.hpp"

namespace crossmode {

inline constexpr const char* kToolVersion = "crossmode 0.1.0";

/// Reproducibility header recorded in every output file.
struct RunManifest {
    std::string config_path;
    std::string output_dir;
    std::vector<std::string> formats;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
};

/// Fixed summary columns shared by the run and sweep CSV emitters.
inline constexpr const char* kCsvColumns =
    "scenario,species,N_modes,phase_pattern,vacuum,E,Px,Py,Pz,Ntot,Q,cross_E,seed";

/// Parses and validates a scenario configuration from JSON text.
/// Violations throw ConfigError naming the offending field path.
ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Full JSON document for a scenario run: manifest, configuration echo,
/// report, optional baseline and sampling statistics.
std::string report_json(const ScenarioRun& run, const ScenarioConfig& config,
                        const RunManifest& manifest);

/// One-row summary CSV (manifest comment, header, row) with full
/// round-trip precision numerics.
std::string summary_csv(const ObservableReport& report, const RunManifest& manifest);

/// Long-format sweep CSV: one row per grid point, the swept variable in
/// the leading columns.
std::string sweep_csv(const std::string& variable, const std::vector<double>& values,
                      const std::vector<ObservableReport>& reports, const RunManifest& manifest);

/// Formats a double with 17 significant digits so round-trips are exact.
std::string csv_number(double value);

/// Writes via a temporary file and rename so partial output never lands
/// at the destination.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

} // namespace crossmode
