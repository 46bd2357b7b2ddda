#include "djcm/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "djcm/errors.hpp"
#include "djcm/io.hpp"
#include "djcm/observables.hpp"
#include "djcm/parallel.hpp"
#include "djcm/presets.hpp"
#include "djcm/version.hpp"

namespace djcm {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct SolvedRun {
    Trajectory traj;
    SolveDiagnostics diag;
};

SolvedRun solve(const ModelParams& p, const InitialCondition& ic, double tau_max, int samples, bool force_oracle) {
    SolveOptions opt;
    opt.force_oracle = force_oracle;
    SolvedRun r;
    const auto grid = time_grid_for_tau(tau_max, samples, p.omega_cavity);
    r.traj = solve_sector(p, ic, grid, opt, &r.diag);
    return r;
}

json quality(const SolvedRun& r) {
    json roots = json::array();
    for (const auto& a : r.diag.roots.roots) roots.push_back({a.real(), a.imag()});
    return {{"method", std::string(to_string(r.traj.method))},
            {"norm_drift_max", r.traj.max_norm_drift()},
            {"root_residual_max", r.diag.roots.max_residual},
            {"root_min_pairwise_gap", r.diag.roots.min_pairwise_gap},
            {"vieta_residual_max", r.diag.vieta_residual},
            {"roots", roots}};
}

std::vector<std::vector<double>> columns_of(const std::vector<ObservableSeries>& series) {
    std::vector<std::vector<double>> cols;
    cols.push_back(series.front().times);
    for (const auto& s : series) cols.push_back(s.values);
    return cols;
}

std::vector<std::string> header_of(const std::vector<ObservableSeries>& series) {
    std::vector<std::string> h{"tau"};
    for (const auto& s : series) h.push_back(s.name);
    return h;
}

void emit(RunOutcome& out, const fs::path& path, const std::string& contents) {
    io::write_file(path, contents);
    out.files.push_back(path);
}

std::string plot_series(const std::string& title, const std::string& y_label,
                        const std::vector<ObservableSeries>& series) {
    std::vector<svg::Line> lines;
    for (const auto& s : series) lines.push_back({s.name, &s.times, &s.values});
    return svg::line_plot(title, "tau = Omega t", y_label, lines);
}

HusimiGrid husimi_grid(const ModelParams& p, const InitialCondition& ic, double tau, double range, int resolution,
                       std::optional<int> all_sectors) {
    HusimiGridSpec spec{-range, range, -range, range, resolution};
    const double t = tau / p.omega_cavity;
    if (all_sectors) return husimi_q(p, t, spec, HusimiMode::AllSectors, *all_sectors);
    return husimi_q(p, t, spec, HusimiMode::SingleSector, 0, ic);
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

json husimi_summary(const HusimiGrid& g) {
    double lo = g.values.front(), hi = lo;
    for (double v : g.values) lo = std::min(lo, v), hi = std::max(hi, v);
    return {{"t", g.t}, {"n_max", g.n_max}, {"min", lo}, {"max", hi}, {"trapezoid_integral", trapezoid_integral(g)},
            {"resolution", g.x_axis.size()}};
}

}  // namespace

RunOutcome run_simulation(const RunConfig& cfg, const fs::path& out_dir) {
    cfg.validate();
    RunOutcome out;
    const SolvedRun run = solve(cfg.params, cfg.ic, cfg.tau_max, cfg.samples, cfg.force_oracle);

    json observables = json::object();
    for (const auto& name : cfg.observables) {
        if (name == "husimi") {
            const auto g = husimi_grid(cfg.params, cfg.ic, cfg.husimi.tau, cfg.husimi.range, cfg.husimi.resolution,
                                       cfg.husimi.all_sectors);
            emit(out, out_dir / "husimi.csv", io::husimi_csv_text(g));
            if (cfg.svg) emit(out, out_dir / "husimi.svg", svg::heatmap("Husimi Q", g));
            observables[name] = husimi_summary(g);
            continue;
        }
        const SeriesResult res = compute_series(run.traj, name);
        emit(out, out_dir / (name + ".csv"), io::csv_text(header_of(res.series), columns_of(res.series)));
        if (cfg.svg) emit(out, out_dir / (name + ".svg"), plot_series(name, name, res.series));
        observables[name] = {{"rows", res.series.front().values.size()}, {"undefined_samples", res.undefined_samples}};
    }

    out.manifest = {{"version", kVersion},
                    {"config", to_json(cfg)},
                    {"quality", quality(run)},
                    {"observables", observables}};
    std::vector<std::string> names;
    for (const auto& f : out.files) names.push_back(f.filename().generic_string());
    out.manifest["files"] = names;
    emit(out, out_dir / "manifest.json", io::json_text(out.manifest));
    return out;
}

RunOutcome simulate(const SweepConfig& cfg, const fs::path& out_dir) {
    if (cfg.axes.empty()) return run_simulation(cfg.base, out_dir);

    auto points = cfg.expand();
    std::vector<RunOutcome> results(points.size());
    auto dir_of = [&](std::size_t i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "point_%04zu", i);
        return out_dir / buf;
    };
    for (std::size_t i = 0; i < points.size(); ++i) points[i].output_dir = dir_of(i);
    parallel_for(points.size(), [&](std::size_t i) { results[i] = run_simulation(points[i], points[i].output_dir); });

    RunOutcome out;
    json list = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        list.push_back({{"index", i},
                        {"directory", dir_of(i).filename().generic_string()},
                        {"params", to_json(points[i].params)},
                        {"quality", results[i].manifest["quality"]}});
        out.files.insert(out.files.end(), results[i].files.begin(), results[i].files.end());
    }
    out.manifest = {{"version", kVersion}, {"config", to_json(cfg)}, {"points", list}};
    emit(out, out_dir / "sweep_manifest.json", io::json_text(out.manifest));
    return out;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
    return ids;
}

RunOutcome make_figure(const std::string& id, const fs::path& out_dir, const FigureOptions& opt) {
    const auto& ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw ConfigError("unknown figure '" + id + "' (expected fig2..fig8)");
    }
    if (id == "fig7" && !opt.tau) throw ConfigError("fig7 needs an explicit Husimi evaluation time (--t)");

    const auto rows = presets::figure_rows();
    RunOutcome out;
    json panels = json::array();
    auto panel_path = [&](const std::string& name, const char* ext) { return out_dir / (id + "_" + name + ext); };
    auto record = [&](const std::string& name, const ModelParams& p, json extra) {
        extra["panel"] = name;
        extra["params"] = to_json(p);
        panels.push_back(std::move(extra));
    };

    if (id == "fig7") {
        // chi = 0 and chi = 0.2 panels: figure rows 1 and 2 (same drive strength).
        const std::array<std::pair<std::string, ModelParams>, 2> cases{{{"a", rows[0]}, {"b", rows[1]}}};
        std::vector<HusimiGrid> grids(cases.size());
        parallel_for(cases.size(), [&](std::size_t i) {
            grids[i] = husimi_grid(cases[i].second, {}, *opt.tau, 3.0, opt.husimi_resolution, std::nullopt);
        });
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& [name, p] = cases[i];
            emit(out, panel_path(name, ".csv"), io::husimi_csv_text(grids[i]));
            if (opt.svg) {
                emit(out, panel_path(name, ".svg"),
                     svg::heatmap("Husimi Q, chi = " + short_number(p.deformation.chi()), grids[i]));
            }
            record(name, p, {{"tau", *opt.tau}, {"husimi", husimi_summary(grids[i])}});
        }
    } else {
        const bool squeezing = id == "fig8";
        // fig8 uses figure rows 1 and 3 only.
        const std::vector<std::size_t> used = squeezing ? std::vector<std::size_t>{0, 2} : std::vector<std::size_t>{0, 1, 2};
        std::vector<SolvedRun> runs(used.size());
        parallel_for(used.size(), [&](std::size_t i) {
            runs[i] = solve(rows[used[i]], {}, presets::kFigureTauMax, presets::kFigureSamples, false);
        });

        char letter = 'a';
        for (std::size_t i = 0; i < used.size(); ++i) {
            const ModelParams& p = rows[used[i]];
            const auto& run = runs[i];
            auto emit_panel = [&](std::vector<ObservableSeries> series, const std::string& y_label,
                                  int undefined) {
                const std::string name(1, letter++);
                emit(out, panel_path(name, ".csv"), io::csv_text(header_of(series), columns_of(series)));
                if (opt.svg) emit(out, panel_path(name, ".svg"), plot_series(id + " (" + name + ")", y_label, series));
                record(name, p, {{"quality", quality(run)}, {"undefined_samples", undefined}});
            };
            if (id == "fig2") {
                const auto pops = compute_series(run.traj, "populations");
                for (const auto& s : pops.series) emit_panel({s}, s.name, 0);
            } else if (id == "fig3") {
                emit_panel(compute_series(run.traj, "inversion").series, "W", 0);
            } else if (id == "fig4") {
                auto r = compute_series(run.traj, "g2");
                emit_panel(r.series, "g2(0)", r.undefined_samples);
            } else if (id == "fig5") {
                emit_panel(compute_series(run.traj, "entropy").series, "S_A", 0);
            } else if (id == "fig6") {
                auto r = compute_series(run.traj, "mandel_q");
                emit_panel(r.series, "Q", r.undefined_samples);
            } else {
                auto sq = compute_series(run.traj, "squeezing").series;
                emit_panel({sq[0], sq[1]}, "first-order squeezing", 0);
                emit_panel({sq[2], sq[3]}, "amplitude-squared squeezing", 0);
            }
        }
    }

    out.manifest = {{"version", kVersion}, {"figure", id}, {"panels", panels}};
    emit(out, out_dir / (id + "_manifest.json"), io::json_text(out.manifest));
    return out;
}

RunOutcome run_husimi(const HusimiRequest& req, const fs::path& out_dir) {
    req.params.validate();
    if (req.resolution < 2) throw ConfigError("config field 'resolution': must be >= 2");
    if (!(req.range > 0.0) || !std::isfinite(req.range)) throw ConfigError("config field 'range': must be > 0");
    if (!(req.tau >= 0.0) || !std::isfinite(req.tau)) throw ConfigError("config field 't': must be >= 0");
    RunOutcome out;
    const auto g = husimi_grid(req.params, {}, req.tau, req.range, req.resolution, req.all_sectors);
    emit(out, out_dir / "husimi.csv", io::husimi_csv_text(g));
    if (req.svg) emit(out, out_dir / "husimi.svg", svg::heatmap("Husimi Q", g));
    out.manifest = {{"version", kVersion},
                    {"params", to_json(req.params)},
                    {"tau", req.tau},
                    {"range", req.range},
                    {"mode", req.all_sectors ? "all_sectors" : "single_sector"},
                    {"husimi", husimi_summary(g)}};
    emit(out, out_dir / "husimi_manifest.json", io::json_text(out.manifest));
    return out;
}

}  // namespace djcm
