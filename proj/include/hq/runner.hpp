#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hq/kernels.hpp"
#include "hq/scenario.hpp"

namespace hq {

/// Recognised task names: state, wigner, quadrature2d, schmidt, variance, amplitudes.
const std::set<std::string>& known_tasks();
/// Parses "a,b,c"; ConfigError for unknown names.
std::set<std::string> parse_tasks(const std::string& list);
/// Parses "min:max:count".
Grid1D parse_grid(const std::string& spec);

struct RunOptions {
    std::optional<Grid1D> grid;  // replaces every automatic grid
    int wigner_points = 401;
    int amplitude_rows = 201;
};

struct Artifact {
    std::string path;  // relative to the output directory
    std::string kind;
    nlohmann::json grid;  // null when not a grid
};

struct RunManifest {
    std::string scenario;
    std::string config_hash;
    std::vector<Artifact> artifacts;
    nlohmann::json summary;  // per-task headline numbers
    nlohmann::json config;   // echo of the input configuration
    double wall_time = 0.0;
};

nlohmann::json to_json(const RunManifest& m);

/// Builds the state for `config`, runs the tasks, writes artifacts and
/// manifest.json into out_dir.
RunManifest run(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                const std::set<std::string>& tasks, const RunOptions& options = {});
RunManifest run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                const std::set<std::string>& tasks, const RunOptions& options = {});

struct RatioLock {
    std::string key;
    double ratio = 1.0;
};
/// Parses "key=ratio".
RatioLock parse_ratio_lock(const std::string& spec);

/// Sets a numeric configuration field addressed by a dotted key
/// (e.g. "photon_targets.3"); ConfigError unless it exists and is numeric.
void set_dotted(nlohmann::json& doc, const std::string& key, double value);

struct SweepPoint {
    double value = 0.0;
    double entropy = 0.0;
    double schmidt_number = 1.0;
    double min_variance = 0.5;
    double norm = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // ascending in value
    RunManifest manifest;
};

/// One run per value in out_dir/point_<i>, plus sweep.csv with columns
/// (value, S, D, min_variance, norm) ordered by value.
SweepResult sweep(const std::filesystem::path& config_path, const std::string& parameter,
                  const std::vector<double>& values, const std::optional<RatioLock>& lock,
                  const std::filesystem::path& out_dir, const RunOptions& options = {});

}  // namespace hq
