#include "djcm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "djcm/errors.hpp"

namespace djcm {

using nlohmann::json;

const std::vector<std::string>& observable_registry() {
    static const std::vector<std::string> names{"populations", "inversion", "g2",     "entropy",
                                                "mandel_q",    "squeezing", "husimi"};
    return names;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            fail(where.empty() ? key : where + "." + key, "unknown field");
        }
    }
}

const json& require_object(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "expected an object");
    return j;
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) fail(path, "missing");
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
    return obj.contains(key) ? get_number(obj, key, path) : fallback;
}

int integer_or(const json& obj, const std::string& key, const std::string& path, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
}

bool bool_or(const json& obj, const std::string& key, const std::string& path, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
}

cplx parse_complex(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path, "expected [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Deformation parse_deformation(const json& j) {
    const std::string path = "params.deformation";
    if (j.is_string()) {
        if (j.get<std::string>() == "identity") return Deformation::identity();
        fail(path, "expected \"identity\" or {\"kind\": \"kerr\", \"chi\": ...}");
    }
    require_object(j, path);
    reject_unknown(j, path, {"kind", "chi"});
    if (!j.contains("kind") || !j.at("kind").is_string()) fail(path + ".kind", "expected \"identity\" or \"kerr\"");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "identity") return Deformation::identity();
    if (kind != "kerr") fail(path + ".kind", "unknown deformation '" + kind + "'");
    const double chi = get_number(j, "chi", path + ".chi");
    if (chi < 0.0) fail(path + ".chi", "must be >= 0");
    return Deformation::kerr(chi);
}

ModelParams parse_params(const json& j) {
    require_object(j, "params");
    reject_unknown(j, "params", {"omega_cavity", "omega_levels", "g1", "g2", "omega_e", "deformation", "sector_n"});
    ModelParams p;
    p.omega_cavity = get_number(j, "omega_cavity", "params.omega_cavity");
    if (!j.contains("omega_levels")) fail("params.omega_levels", "missing");
    const auto& w = j.at("omega_levels");
    if (!w.is_array() || w.size() != 3) fail("params.omega_levels", "expected [omega_1, omega_2, omega_3]");
    for (std::size_t i = 0; i < 3; ++i) {
        if (!w[i].is_number()) fail("params.omega_levels", "expected numbers");
        p.omega_levels[i] = w[i].get<double>();
    }
    p.g1 = get_number(j, "g1", "params.g1");
    p.g2 = get_number(j, "g2", "params.g2");
    p.omega_e = get_number(j, "omega_e", "params.omega_e");
    if (j.contains("deformation")) p.deformation = parse_deformation(j.at("deformation"));
    p.sector_n = integer_or(j, "sector_n", "params.sector_n", 1);
    try {
        p.validate();
    } catch (const InvalidParams& e) {
        fail("params", e.what());
    }
    return p;
}

}  // namespace

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const InvalidParams& e) {
        fail("params", e.what());
    }
    if (!(params.omega_cavity > 0.0)) fail("params.omega_cavity", "must be > 0");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) fail("tau_max", "must be > 0");
    if (samples < 2) fail("samples", "must be >= 2");
    const auto& reg = observable_registry();
    for (const auto& name : observables) {
        if (std::find(reg.begin(), reg.end(), name) == reg.end()) {
            fail("observables", "unknown observable '" + name + "'");
        }
    }
    if (husimi.resolution < 2) fail("husimi.resolution", "must be >= 2");
    if (!(husimi.range > 0.0) || !std::isfinite(husimi.range)) fail("husimi.range", "must be > 0");
    if (!std::isfinite(husimi.tau) || husimi.tau < 0.0) fail("husimi.tau", "must be >= 0");
    if (husimi.all_sectors && *husimi.all_sectors < 0) fail("husimi.all_sectors", "must be >= 0");
}

std::size_t SweepConfig::size() const {
    std::size_t n = 1;
    for (const auto& a : axes) {
        if (a.values.empty()) return 0;
        if (n > kMaxSweepPoints / a.values.size() + 1) return kMaxSweepPoints + 1;
        n *= a.values.size();
    }
    return n;
}

void apply_sweep_value(RunConfig& cfg, const std::string& param, double value) {
    auto& p = cfg.params;
    if (param == "omega_cavity") p.omega_cavity = value;
    else if (param == "omega_1") p.omega_levels[0] = value;
    else if (param == "omega_2") p.omega_levels[1] = value;
    else if (param == "omega_3") p.omega_levels[2] = value;
    else if (param == "g1") p.g1 = value;
    else if (param == "g2") p.g2 = value;
    else if (param == "omega_e") p.omega_e = value;
    else if (param == "chi") {
        if (value < 0.0) fail("sweep.chi", "values must be >= 0");
        p.deformation = value > 0.0 ? Deformation::kerr(value) : Deformation::identity();
    } else if (param == "sector_n") {
        if (value < 0.0 || value != std::floor(value)) fail("sweep.sector_n", "values must be integers >= 0");
        p.sector_n = static_cast<int>(value);
    } else {
        fail("sweep.param", "unknown sweep parameter '" + param + "'");
    }
}

std::vector<RunConfig> SweepConfig::expand() const {
    const std::size_t total = size();
    if (total == 0) fail("sweep", "every axis needs at least one value");
    if (total > kMaxSweepPoints) fail("sweep", "Cartesian product exceeds 10000 points");
    std::vector<RunConfig> out;
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        RunConfig cfg = base;
        std::size_t rem = idx;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const auto& axis = axes[a];
            apply_sweep_value(cfg, axis.param, axis.values[rem % axis.values.size()]);
            rem /= axis.values.size();
        }
        cfg.validate();
        out.push_back(std::move(cfg));
    }
    return out;
}

SweepConfig parse_config(const json& doc) {
    require_object(doc, "<root>");
    reject_unknown(doc, "", {"params", "initial_condition", "tau_max", "samples", "observables", "output_dir", "svg",
                             "force_oracle", "husimi", "sweep"});
    SweepConfig sweep;
    RunConfig& cfg = sweep.base;
    if (!doc.contains("params")) fail("params", "missing");
    cfg.params = parse_params(doc.at("params"));

    if (doc.contains("initial_condition")) {
        const auto& ic = require_object(doc.at("initial_condition"), "initial_condition");
        reject_unknown(ic, "initial_condition", {"c1", "c2", "c3"});
        auto comp = [&](const char* k) {
            return ic.contains(k) ? parse_complex(ic.at(k), std::string("initial_condition.") + k) : cplx{};
        };
        try {
            cfg.ic = InitialCondition(comp("c1"), comp("c2"), comp("c3"));
        } catch (const InvalidParams& e) {
            fail("initial_condition", e.what());
        }
    }
    cfg.tau_max = number_or(doc, "tau_max", "tau_max", cfg.tau_max);
    cfg.samples = integer_or(doc, "samples", "samples", cfg.samples);
    if (doc.contains("observables")) {
        const auto& obs = doc.at("observables");
        if (!obs.is_array()) fail("observables", "expected a list of names");
        cfg.observables.clear();
        for (const auto& o : obs) {
            if (!o.is_string()) fail("observables", "expected a list of names");
            cfg.observables.push_back(o.get<std::string>());
        }
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) fail("output_dir", "expected a path string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }
    cfg.svg = bool_or(doc, "svg", "svg", cfg.svg);
    cfg.force_oracle = bool_or(doc, "force_oracle", "force_oracle", cfg.force_oracle);
    if (doc.contains("husimi")) {
        const auto& h = require_object(doc.at("husimi"), "husimi");
        reject_unknown(h, "husimi", {"tau", "range", "resolution", "all_sectors"});
        cfg.husimi.tau = number_or(h, "tau", "husimi.tau", cfg.husimi.tau);
        cfg.husimi.range = number_or(h, "range", "husimi.range", cfg.husimi.range);
        cfg.husimi.resolution = integer_or(h, "resolution", "husimi.resolution", cfg.husimi.resolution);
        if (h.contains("all_sectors") && !h.at("all_sectors").is_null()) {
            cfg.husimi.all_sectors = integer_or(h, "all_sectors", "husimi.all_sectors", 0);
        }
    }
    cfg.validate();

    if (doc.contains("sweep")) {
        const auto& axes = doc.at("sweep");
        if (!axes.is_array()) fail("sweep", "expected a list of {param, values}");
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const std::string path = "sweep[" + std::to_string(i) + "]";
            const auto& a = require_object(axes[i], path);
            reject_unknown(a, path, {"param", "values"});
            if (!a.contains("param") || !a.at("param").is_string()) fail(path + ".param", "expected a name");
            SweepAxis axis;
            axis.param = a.at("param").get<std::string>();
            if (!a.contains("values") || !a.at("values").is_array()) fail(path + ".values", "expected a list");
            for (const auto& v : a.at("values")) {
                if (!v.is_number()) fail(path + ".values", "expected numbers");
                axis.values.push_back(v.get<double>());
            }
            RunConfig probe = cfg;
            for (double v : axis.values) apply_sweep_value(probe, axis.param, v);
            sweep.axes.push_back(std::move(axis));
        }
        if (sweep.size() > kMaxSweepPoints) fail("sweep", "Cartesian product exceeds 10000 points");
    }
    return sweep;
}

SweepConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

SweepConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_text(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

json to_json(const ModelParams& p) {
    json d;
    if (p.deformation.kind() == Deformation::Kind::Identity) {
        d = {{"kind", "identity"}};
    } else {
        d = {{"kind", "kerr"}, {"chi", p.deformation.chi()}};
    }
    return {{"omega_cavity", p.omega_cavity},
            {"omega_levels", {p.omega_levels[0], p.omega_levels[1], p.omega_levels[2]}},
            {"g1", p.g1},
            {"g2", p.g2},
            {"omega_e", p.omega_e},
            {"deformation", d},
            {"sector_n", p.sector_n}};
}

json to_json(const RunConfig& cfg) {
    const auto& c = cfg.ic.amplitudes();
    auto cj = [](cplx z) { return json::array({z.real(), z.imag()}); };
    json husimi = {{"tau", cfg.husimi.tau}, {"range", cfg.husimi.range}, {"resolution", cfg.husimi.resolution}};
    husimi["all_sectors"] = cfg.husimi.all_sectors ? json(*cfg.husimi.all_sectors) : json(nullptr);
    return {{"params", to_json(cfg.params)},
            {"initial_condition", {{"c1", cj(c[0])}, {"c2", cj(c[1])}, {"c3", cj(c[2])}}},
            {"tau_max", cfg.tau_max},
            {"samples", cfg.samples},
            {"observables", cfg.observables},
            {"output_dir", cfg.output_dir.generic_string()},
            {"svg", cfg.svg},
            {"force_oracle", cfg.force_oracle},
            {"husimi", husimi}};
}

json to_json(const SweepConfig& cfg) {
    json j = to_json(cfg.base);
    if (!cfg.axes.empty()) {
        json axes = json::array();
        for (const auto& a : cfg.axes) axes.push_back({{"param", a.param}, {"values", a.values}});
        j["sweep"] = axes;
    }
    return j;
}

}  // namespace djcm
