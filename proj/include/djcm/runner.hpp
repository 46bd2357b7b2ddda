#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "djcm/config.hpp"
#include "json.hpp"

namespace djcm {

struct RunOutcome {
    nlohmann::json manifest;
    std::vector<std::filesystem::path> files;
};

// One simulation: a CSV per observable (populations.csv has tau,P1,P2,P3),
// optional SVG plots, and manifest.json with the config echo, the method
// used and the quality metrics.
RunOutcome run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir);

// A single run, or one point_NNNN/ directory per sweep point plus a
// sweep_manifest.json.  Points run on the worker pool.
RunOutcome simulate(const SweepConfig& cfg, const std::filesystem::path& out_dir);

const std::vector<std::string>& figure_ids();

struct FigureOptions {
    // Husimi evaluation time (scaled); required for fig7.
    std::optional<double> tau;
    int husimi_resolution = 121;
    bool svg = true;
};

// Throws ConfigError for an unknown id or fig7 without a time.
RunOutcome make_figure(const std::string& id, const std::filesystem::path& out_dir, const FigureOptions& opt = {});

struct HusimiRequest {
    ModelParams params;
    double tau = 0.0;
    double range = 3.0;
    int resolution = 121;
    std::optional<int> all_sectors;
    bool svg = true;
};

RunOutcome run_husimi(const HusimiRequest& req, const std::filesystem::path& out_dir);

}  // namespace djcm
