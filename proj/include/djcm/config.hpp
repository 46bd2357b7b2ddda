#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "djcm/dynamics.hpp"
#include "djcm/model.hpp"
#include "json.hpp"

namespace djcm {

// Names accepted in RunConfig::observables.
const std::vector<std::string>& observable_registry();

struct HusimiSettings {
    double tau = 0.0;
    // Grid covers [-range, range] in both Re(beta) and Im(beta).
    double range = 3.0;
    int resolution = 121;
    // Set: sum sectors 0..n_max literally.  Unset: single sector.
    std::optional<int> all_sectors;
};

struct RunConfig {
    ModelParams params;
    InitialCondition ic;
    double tau_max = 50.0;
    int samples = 2000;
    std::vector<std::string> observables{"populations"};
    std::filesystem::path output_dir = "out";
    bool svg = false;
    bool force_oracle = false;
    HusimiSettings husimi;

    // Throws ConfigError naming the offending field.
    void validate() const;
};

struct SweepAxis {
    // omega_cavity, omega_1, omega_2, omega_3, g1, g2, omega_e, chi, sector_n
    std::string param;
    std::vector<double> values;
};

inline constexpr std::size_t kMaxSweepPoints = 10'000;

struct SweepConfig {
    RunConfig base;
    std::vector<SweepAxis> axes;

    std::size_t size() const;
    // Cartesian product, last axis fastest.  Throws ConfigError.
    std::vector<RunConfig> expand() const;
};

void apply_sweep_value(RunConfig& cfg, const std::string& param, double value);

// Schema (all sections optional except "params"):
//   { "params": { "omega_cavity", "omega_levels": [w1,w2,w3], "g1", "g2",
//                 "omega_e", "deformation": {"kind": "identity"|"kerr", "chi"},
//                 "sector_n" },
//     "initial_condition": { "c1": [re, im], "c2": [re, im], "c3": [re, im] },
//     "tau_max", "samples", "observables": [...], "output_dir", "svg",
//     "force_oracle",
//     "husimi": { "tau", "range", "resolution", "all_sectors" },
//     "sweep": [ { "param", "values": [...] } ] }
SweepConfig parse_config(const nlohmann::json& doc);
SweepConfig parse_config_text(const std::string& text);
SweepConfig load_config_file(const std::filesystem::path& path);

nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const SweepConfig& cfg);

}  // namespace djcm
