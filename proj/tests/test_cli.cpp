#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "djcm/config.hpp"
#include "djcm/errors.hpp"
#include "djcm/io.hpp"
#include "djcm/parallel.hpp"
#include "djcm/runner.hpp"
#include "djcm/validate.hpp"

using namespace djcm;
namespace fs = std::filesystem;

namespace {

const char* kRow1 = R"({
  "params": {"omega_cavity": 0.2, "omega_levels": [0.3, 0.4, 0.5], "g1": 0.04, "g2": 0.06,
             "omega_e": 0.04, "deformation": {"kind": "identity"}, "sector_n": 1}
})";

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "djcm_test_cli" / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::vector<double> split_row(const std::string& line) {
    std::vector<double> out;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');) out.push_back(std::stod(cell));
    return out;
}

std::string config_error_message(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal config takes defaults", "[config]") {
    const auto cfg = parse_config_text(kRow1);
    CHECK(cfg.axes.empty());
    CHECK(cfg.base.samples == 2000);
    CHECK(cfg.base.tau_max == 50.0);
    CHECK(cfg.base.observables == std::vector<std::string>{"populations"});
    CHECK(cfg.base.params.g2 == 0.06);
    CHECK(cfg.base.params.deformation.kind() == Deformation::Kind::Identity);
}

TEST_CASE("config round-trips through its JSON echo", "[config]") {
    auto cfg = parse_config_text(kRow1);
    cfg.base.params.deformation = Deformation::kerr(0.2);
    cfg.base.observables = {"populations", "entropy"};
    const auto echoed = to_json(cfg);
    const auto again = parse_config(echoed);
    CHECK(to_json(again) == echoed);
    CHECK(again.base.params.deformation == Deformation::kerr(0.2));
}

TEST_CASE("config errors name the offending field", "[config]") {
    std::string with_bad_obs = kRow1;
    with_bad_obs.insert(with_bad_obs.rfind('}'), R"(, "observables": ["populations", "bogus"])");
    const auto msg = config_error_message(with_bad_obs);
    CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("'observables'"));
    CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("bogus"));

    CHECK_THAT(config_error_message(R"({"params": {"omega_cavity": 0.2, "omega_levels": [0.3, 0.4, 0.5], "gl": 1}})"),
               Catch::Matchers::ContainsSubstring("params.gl"));
    CHECK_THAT(config_error_message(R"({"params": {"omega_levels": [0.5, 0.4, 0.3]}})"),
               Catch::Matchers::ContainsSubstring("params"));
    CHECK_THAT(config_error_message("{\"params\": {\n  \"g1\": 0.1,\n}"),
               Catch::Matchers::ContainsSubstring("line 3"));
    CHECK_THAT(config_error_message(R"({"tau_max": 1})"), Catch::Matchers::ContainsSubstring("'params'"));

    std::string bad_samples = kRow1;
    bad_samples.insert(bad_samples.rfind('}'), R"(, "samples": 1)");
    CHECK_THAT(config_error_message(bad_samples), Catch::Matchers::ContainsSubstring("'samples'"));
}

TEST_CASE("config file loading reports I/O and parse errors", "[config]") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/djcm.json"), IoError);
    const auto dir = scratch("load");
    io::write_file(dir / "bad.json", "{ not json");
    try {
        load_config_file(dir / "bad.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("bad.json"));
    }
}

TEST_CASE("sweep expansion is a Cartesian product, last axis fastest", "[config][sweep]") {
    auto cfg = parse_config_text(kRow1);
    cfg.axes = {{"chi", {0.0, 0.2}}, {"omega_e", {0.01, 0.02, 0.03}}};
    REQUIRE(cfg.size() == 6);
    const auto pts = cfg.expand();
    REQUIRE(pts.size() == 6);
    CHECK(pts[0].params.deformation.chi() == 0.0);
    CHECK(pts[0].params.omega_e == 0.01);
    CHECK(pts[1].params.omega_e == 0.02);
    CHECK(pts[3].params.deformation.chi() == 0.2);
    CHECK(pts[5].params.omega_e == 0.03);

    cfg.axes = {{"g1", std::vector<double>(101, 0.01)}, {"g2", std::vector<double>(100, 0.01)}};
    CHECK_THROWS_AS(cfg.expand(), ConfigError);
    cfg.axes = {{"sector_n", {1.5}}};
    CHECK_THROWS_AS(cfg.expand(), ConfigError);
    cfg.axes = {{"nonsense", {1.0}}};
    CHECK_THROWS_AS(cfg.expand(), ConfigError);
}

TEST_CASE("doubles print with 17 significant digits and round-trip", "[io]") {
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(-2.5e-20) == "-2.4999999999999999e-20");
    for (double v : {std::numbers::pi, 1.0 / 3.0, 6.02214076e23, -1e-300}) {
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("CSV layout: header row, comma separated, LF newlines", "[io]") {
    const auto text = io::csv_text({"tau", "a"}, {{0.0, 0.5}, {1.0, 2.0}});
    CHECK(text == "tau,a\n0,1\n0.5,2\n");
    CHECK_THROWS(io::csv_text({"tau"}, {{0.0}, {1.0}}));
}

TEST_CASE("write_file reports unwritable paths as IoError", "[io]") {
    const auto dir = scratch("io");
    io::write_file(dir / "file", "x");
    CHECK_THROWS_AS(io::write_file(dir / "file" / "child.csv", "y"), IoError);
}

TEST_CASE("colormap is a fixed 256-step table", "[svg]") {
    const auto& lut = svg::colormap();
    REQUIRE(lut.size() == 256);
    CHECK((lut.front().r == 68 && lut.front().g == 1 && lut.front().b == 84));
    CHECK((lut.back().r == 253 && lut.back().g == 231 && lut.back().b == 37));
}

TEST_CASE("two-sample boundary run", "[simulate]") {
    auto cfg = parse_config_text(kRow1).base;
    cfg.samples = 2;
    cfg.tau_max = 1.0;
    const auto dir = scratch("boundary");
    run_simulation(cfg, dir);
    const auto lines = lines_of(slurp(dir / "populations.csv"));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "tau,P1,P2,P3");
    const auto first = split_row(lines[1]);
    CHECK(first == std::vector<double>{0.0, 0.0, 1.0, 0.0});
    CHECK(split_row(lines[2])[0] == 1.0);
}

TEST_CASE("simulation outputs and manifest", "[simulate]") {
    auto cfg = parse_config_text(kRow1).base;
    cfg.observables = {"populations", "entropy", "g2", "squeezing"};
    cfg.svg = true;
    const auto dir = scratch("sim");
    const auto out = run_simulation(cfg, dir);
    for (const char* f : {"populations.csv", "populations.svg", "entropy.csv", "g2.csv", "squeezing.csv",
                          "manifest.json"}) {
        CHECK(fs::exists(dir / f));
    }
    const auto lines = lines_of(slurp(dir / "populations.csv"));
    REQUIRE(lines.size() == 2001);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split_row(lines[i]);
        for (std::size_t k = 1; k < 4; ++k) {
            CHECK(row[k] >= 0.0);
            CHECK(row[k] <= 1.0);
        }
    }
    CHECK(lines_of(slurp(dir / "squeezing.csv"))[0] == "tau,s1_x,s1_p,s2_x,s2_p");

    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["quality"]["method"] == "Analytic");
    CHECK(manifest["quality"]["norm_drift_max"].get<double>() <= 1e-9);
    CHECK(manifest["quality"]["root_residual_max"].get<double>() <= 1e-12);
    CHECK(manifest["config"] == to_json(cfg));
    CHECK(manifest.contains("version"));

    cfg.force_oracle = true;
    const auto dir2 = scratch("sim_oracle");
    run_simulation(cfg, dir2);
    CHECK(nlohmann::json::parse(slurp(dir2 / "manifest.json"))["quality"]["method"] == "Oracle");
}

TEST_CASE("re-running a config gives byte-identical output", "[simulate][determinism]") {
    auto cfg = parse_config_text(kRow1).base;
    cfg.observables = {"populations", "mandel_q", "husimi"};
    cfg.husimi.tau = 5.0;
    cfg.husimi.resolution = 21;
    cfg.svg = true;
    const auto a = scratch("det_a"), b = scratch("det_b");
    run_simulation(cfg, a);
    run_simulation(cfg, b);
    for (const char* f : {"populations.csv", "mandel_q.csv", "husimi.csv", "husimi.svg", "manifest.json"}) {
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

TEST_CASE("sweeps write one directory per point and merge by index", "[simulate][sweep]") {
    auto cfg = parse_config_text(kRow1);
    cfg.base.samples = 50;
    cfg.axes = {{"chi", {0.0, 0.1, 0.2}}, {"g1", {0.02, 0.04}}};
    const auto a = scratch("sweep_a");
    simulate(cfg, a);
    const auto manifest = nlohmann::json::parse(slurp(a / "sweep_manifest.json"));
    REQUIRE(manifest["points"].size() == 6);
    CHECK(manifest["points"][5]["directory"] == "point_0005");
    CHECK(manifest["points"][5]["params"]["g1"] == 0.04);
    CHECK(fs::exists(a / "point_0005" / "populations.csv"));

    setenv("DJCM_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    const auto b = scratch("sweep_b");
    simulate(cfg, b);
    unsetenv("DJCM_THREADS");
    for (int i = 0; i < 6; ++i) {
        const auto name = "point_000" + std::to_string(i);
        CHECK(slurp(a / name / "populations.csv") == slurp(b / name / "populations.csv"));
    }
}

TEST_CASE("parallel_for visits every index and propagates errors", "[parallel]") {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 3) throw InvalidParams("boom"); }),
                    InvalidParams);
    parallel_for(0, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("fig2 emits nine population panels", "[figures]") {
    const auto dir = scratch("fig2");
    make_figure("fig2", dir);
    for (char c = 'a'; c <= 'i'; ++c) {
        const std::string stem = std::string("fig2_") + c;
        REQUIRE(fs::exists(dir / (stem + ".csv")));
        CHECK(fs::exists(dir / (stem + ".svg")));
        const auto lines = lines_of(slurp(dir / (stem + ".csv")));
        CHECK(lines.size() == 2001);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const double p = split_row(lines[i])[1];
            CHECK((p >= 0.0 && p <= 1.0));
        }
    }
    CHECK(lines_of(slurp(dir / "fig2_e.csv"))[0] == "tau,P2");
    CHECK(fs::exists(dir / "fig2_manifest.json"));
}

TEST_CASE("fig5 entropies lie in [0, ln 2]", "[figures]") {
    const auto dir = scratch("fig5");
    FigureOptions opt;
    opt.svg = false;
    make_figure("fig5", dir, opt);
    for (char c : {'a', 'b', 'c'}) {
        const auto lines = lines_of(slurp(dir / (std::string("fig5_") + c + ".csv")));
        REQUIRE(lines.size() == 2001);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const double s = split_row(lines[i])[1];
            CHECK((s >= 0.0 && s <= std::numbers::ln2));
        }
    }
    CHECK_FALSE(fs::exists(dir / "fig5_a.svg"));
}

TEST_CASE("fig7 and fig8 panel sets", "[figures]") {
    const auto dir = scratch("fig78");
    CHECK_THROWS_AS(make_figure("fig7", dir), ConfigError);
    CHECK_THROWS_AS(make_figure("fig9", dir), ConfigError);
    FigureOptions opt;
    opt.tau = 10.0;
    opt.husimi_resolution = 31;
    make_figure("fig7", dir, opt);
    CHECK(fs::exists(dir / "fig7_a.svg"));
    CHECK(lines_of(slurp(dir / "fig7_b.csv")).size() == 31 * 31 + 1);
    make_figure("fig8", dir);
    for (char c : {'a', 'b', 'c', 'd'}) CHECK(fs::exists(dir / (std::string("fig8_") + c + ".csv")));
    CHECK_FALSE(fs::exists(dir / "fig8_e.csv"));
}

TEST_CASE("husimi command validates its grid", "[husimi]") {
    HusimiRequest req;
    req.params = parse_config_text(kRow1).base.params;
    req.resolution = 1;
    CHECK_THROWS_AS(run_husimi(req, scratch("hus")), ConfigError);
    req.resolution = 11;
    req.all_sectors = 5;
    const auto out = run_husimi(req, scratch("hus"));
    CHECK(out.manifest["mode"] == "all_sectors");
    CHECK(out.manifest["husimi"]["n_max"] == 5);
}

TEST_CASE("validation report is deterministic and complete", "[validate]") {
    ValidationOptions opt;
    opt.tuples = 50;
    const auto a = run_validation(opt);
    const auto b = run_validation(opt);
    CHECK(a.render() == b.render());
    REQUIRE(a.criteria.size() == 10);
    CHECK(a.criteria[2].passed == false);  // fewer than 1000 tuples
    CHECK(a.criteria[9].passed);
    CHECK_THAT(a.render(), Catch::Matchers::ContainsSubstring("seed=20240611"));
    opt.force_oracle = true;
    CHECK_THAT(run_validation(opt).render(), Catch::Matchers::ContainsSubstring("figure-method=Oracle"));
}
