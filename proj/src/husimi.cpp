#include <algorithm>
#include <cmath>
#include <numbers>

#include "djcm/errors.hpp"
#include "djcm/observables.hpp"

namespace djcm {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + i * step;
    v.back() = hi;
    return v;
}

AmplitudeState state_at(const ModelParams& p, double t, const InitialCondition& ic, const SolveOptions& opt) {
    if (t == 0.0) {
        const auto& c = ic.amplitudes();
        return {0.0, c[0], c[1], c[2]};
    }
    const std::array<double, 2> grid{0.0, t};
    return solve_sector(p, ic, grid, opt).samples.back();
}

}  // namespace

double husimi_sector_term(double r2, int n, const AmplitudeState& s) {
    double weight;
    if (r2 == 0.0) {
        weight = n == 0 ? 1.0 : 0.0;
    } else {
        weight = std::exp(-r2 + n * std::log(r2) - std::lgamma(n + 1.0));
    }
    const double bracket = r2 / (n + 1.0) * std::norm(s.c1) + std::norm(s.c2) + std::norm(s.c3);
    return weight * bracket / std::numbers::pi;
}

int default_husimi_nmax(double r2_max) {
    return std::max(30, static_cast<int>(std::ceil(r2_max + 10.0 * std::sqrt(r2_max))));
}

HusimiGrid husimi_q(const ModelParams& p, double t, const HusimiGridSpec& spec, HusimiMode mode, int n_max,
                    const InitialCondition& ic, const SolveOptions& opt) {
    if (spec.resolution < 2) throw InvalidParams("Husimi grid resolution must be >= 2");
    if (!std::isfinite(spec.x_min) || !std::isfinite(spec.x_max) || !std::isfinite(spec.y_min) ||
        !std::isfinite(spec.y_max) || !(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min)) {
        throw InvalidParams("Husimi grid ranges must be finite and non-empty");
    }
    p.validate();

    HusimiGrid g;
    g.t = t;
    g.x_axis = linspace(spec.x_min, spec.x_max, spec.resolution);
    g.y_axis = linspace(spec.y_min, spec.y_max, spec.resolution);
    g.values.assign(g.x_axis.size() * g.y_axis.size(), 0.0);

    const double x_far = std::max(std::abs(spec.x_min), std::abs(spec.x_max));
    const double y_far = std::max(std::abs(spec.y_min), std::abs(spec.y_max));
    const double r2_max = x_far * x_far + y_far * y_far;

    std::vector<std::pair<int, AmplitudeState>> sectors;
    if (mode == HusimiMode::SingleSector) {
        g.n_max = p.sector_n;
        sectors.emplace_back(p.sector_n, state_at(p, t, ic, opt));
    } else {
        g.n_max = n_max > 0 ? n_max : default_husimi_nmax(r2_max);
        for (int n = 0; n <= g.n_max; ++n) {
            ModelParams pn = p;
            pn.sector_n = n;
            sectors.emplace_back(n, state_at(pn, t, InitialCondition{}, opt));
        }
    }

    for (std::size_t iy = 0; iy < g.y_axis.size(); ++iy) {
        for (std::size_t ix = 0; ix < g.x_axis.size(); ++ix) {
            const double x = g.x_axis[ix];
            const double y = g.y_axis[iy];
            const double r2 = x * x + y * y;
            double q = 0.0;
            for (const auto& [n, st] : sectors) q += husimi_sector_term(r2, n, st);
            g.values[iy * g.x_axis.size() + ix] = q;
        }
    }
    return g;
}

double trapezoid_integral(const HusimiGrid& g) {
    const std::size_t nx = g.x_axis.size();
    const std::size_t ny = g.y_axis.size();
    double total = 0.0;
    for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
        const double dy = g.y_axis[iy + 1] - g.y_axis[iy];
        for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
            const double dx = g.x_axis[ix + 1] - g.x_axis[ix];
            const double corners = g.at(ix, iy) + g.at(ix + 1, iy) + g.at(ix, iy + 1) + g.at(ix + 1, iy + 1);
            total += 0.25 * corners * dx * dy;
        }
    }
    return total;
}

}  // namespace djcm
