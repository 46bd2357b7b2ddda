#include "djcm/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "djcm/errors.hpp"

namespace djcm {

namespace {

constexpr cplx kI{0.0, 1.0};

using Mat3 = std::array<std::array<cplx, 3>, 3>;

// M(s) =
//   [ s       i v2        i v1     ]
//   [ i v2    s - i s_n   i Omega_e]
//   [ i v1    i Omega_e   s - i h_n]
Mat3 laplace_matrix(const SectorCoefficients& c, double omega_e, cplx s) {
    Mat3 m;
    m[0] = {s, kI * c.v2, kI * c.v1};
    m[1] = {kI * c.v2, s - kI * c.s, kI * omega_e};
    m[2] = {kI * c.v1, kI * omega_e, s - kI * c.h};
    return m;
}

Mat3 adjugate(const Mat3& m) {
    Mat3 a;
    a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
    a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
    a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
    a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return a;
}

}  // namespace

InitialCondition::InitialCondition(cplx c1, cplx c2, cplx c3) : c_{c1, c2, c3} {
    const double norm = std::norm(c1) + std::norm(c2) + std::norm(c3);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
        throw InvalidParams("initial condition must be normalised (|c1|^2+|c2|^2+|c3|^2 = 1)");
    }
}

InitialCondition InitialCondition::level(int j) {
    switch (j) {
        case 1: return {cplx{1.0, 0.0}, cplx{}, cplx{}};
        case 2: return {};
        case 3: return {cplx{}, cplx{}, cplx{1.0, 0.0}};
        default: throw InvalidParams("atomic level must be 1, 2 or 3");
    }
}

std::string_view to_string(Method m) { return m == Method::Analytic ? "Analytic" : "Oracle"; }

double Trajectory::max_norm_drift() const {
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(s.norm_sqr() - 1.0));
    return worst;
}

ResiduePropagator::ResiduePropagator(const SectorCoefficients& c, double omega_e, const CubicRoots& roots)
    : coeffs_(c), roots_(roots) {
    if (roots.min_pairwise_gap < kRootDegenerateTol * roots.scale()) {
        throw DegenerateRoots("residue expansion requires distinct characteristic roots");
    }
    const CubicPoly poly = theta_poly(c, omega_e);
    for (std::size_t j = 0; j < 3; ++j) {
        const cplx alpha = roots.roots[j];
        const Mat3 adj = adjugate(laplace_matrix(c, omega_e, alpha));
        const cplx dtheta = poly.derivative(alpha);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t k = 0; k < 3; ++k) residue_[j][r][k] = adj[r][k] / dtheta;
        }
    }
}

AmplitudeState ResiduePropagator::evaluate(const InitialCondition& ic, double t) const {
    const auto& c0 = ic.amplitudes();
    if (t == 0.0) return {0.0, c0[0], c0[1], c0[2]};
    std::array<cplx, 3> x{};
    for (std::size_t j = 0; j < 3; ++j) {
        const cplx e = std::exp(roots_.roots[j] * t);
        for (std::size_t r = 0; r < 3; ++r) {
            const auto& row = residue_[j][r];
            x[r] += e * (row[0] * c0[0] + row[1] * c0[1] + row[2] * c0[2]);
        }
    }
    AmplitudeState out;
    out.t = t;
    out.c1 = x[0];
    out.c2 = std::exp(-kI * (coeffs_.s * t)) * x[1];
    out.c3 = std::exp(-kI * (coeffs_.h * t)) * x[2];
    return out;
}

AmplitudeState amplitudes_analytic(const SectorCoefficients& c, double omega_e, const CubicRoots& roots,
                                   const InitialCondition& ic, double t) {
    return ResiduePropagator(c, omega_e, roots).evaluate(ic, t);
}

AmplitudeState amplitudes_excited_closed_form(const SectorCoefficients& c, double omega_e,
                                              const CubicRoots& roots, double t) {
    if (roots.min_pairwise_gap < kRootDegenerateTol * roots.scale()) {
        throw DegenerateRoots("closed form requires distinct characteristic roots");
    }
    const double h = c.h;
    const double s = c.s;
    const double v1 = c.v1;
    const double v2 = c.v2;
    const auto& a = roots.roots;
    // D_j = (alpha_j - alpha_k)(alpha_j - alpha_l)
    const std::array<cplx, 3> den{(a[0] - a[1]) * (a[0] - a[2]), (a[1] - a[0]) * (a[1] - a[2]),
                                  (a[2] - a[0]) * (a[2] - a[1])};
    AmplitudeState out;
    out.t = t;
    for (std::size_t j = 0; j < 3; ++j) {
        const cplx e = std::exp(a[j] * t);
        out.c1 += -(h * v2 + v1 * omega_e + kI * a[j] * v2) / den[j] * e;
        out.c2 += (a[j] * a[j] - kI * h * a[j] + v1 * v1) / den[j] * e * std::exp(-kI * (s * t));
        out.c3 += -(kI * omega_e * a[j] + v1 * v2) / den[j] * e * std::exp(-kI * (h * t));
    }
    return out;
}

std::vector<AmplitudeState> amplitudes_ode(const SectorCoefficients& c, double omega_e,
                                           const InitialCondition& ic, std::span<const double> t_grid,
                                           const ode::Options& opt, ode::Stats* stats) {
    if (t_grid.empty() || t_grid.front() != 0.0) {
        throw std::invalid_argument("time grid must be non-empty and start at t = 0");
    }
    const double v1 = c.v1;
    const double v2 = c.v2;
    const double h = c.h;
    const double s = c.s;
    const double nu = c.nu;
    auto rhs = [=](double t, const std::array<cplx, 3>& y, std::array<cplx, 3>& dy) {
        const cplx eh = std::exp(kI * (h * t));
        const cplx es = std::exp(kI * (s * t));
        const cplx en = std::exp(kI * (nu * t));
        dy[0] = -kI * (v1 * eh * y[2] + v2 * es * y[1]);
        dy[1] = -kI * (v2 * std::conj(es) * y[0] + omega_e * std::conj(en) * y[2]);
        dy[2] = -kI * (v1 * std::conj(eh) * y[0] + omega_e * en * y[1]);
    };
    const auto ys = ode::integrate(rhs, ic.amplitudes(), t_grid, opt, stats);
    std::vector<AmplitudeState> out;
    out.reserve(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out.push_back({t_grid[i], ys[i][0], ys[i][1], ys[i][2]});
    return out;
}

Trajectory solve_sector(const ModelParams& p, const InitialCondition& ic, std::span<const double> t_grid,
                        const SolveOptions& opt, SolveDiagnostics* diag) {
    const SectorCoefficients c = sector_coefficients(p);
    const CubicPoly poly = theta_poly(c, p.omega_e);
    const CubicRoots roots = find_roots(poly);
    if (diag) {
        diag->roots = roots;
        diag->roots_valid = true;
        diag->vieta_residual = vieta_residuals(poly, roots).max();
    }

    Trajectory traj;
    traj.params = p;
    const bool degenerate = roots.min_pairwise_gap < kRootDegenerateTol * roots.scale();
    if (opt.force_oracle || degenerate) {
        traj.method = Method::Oracle;
        traj.samples = amplitudes_ode(c, p.omega_e, ic, t_grid, opt.ode);
        return traj;
    }
    traj.method = Method::Analytic;
    const ResiduePropagator prop(c, p.omega_e, roots);
    traj.samples.reserve(t_grid.size());
    for (double t : t_grid) traj.samples.push_back(prop.evaluate(ic, t));
    return traj;
}

std::vector<double> time_grid_for_tau(double tau_max, int samples, double omega_cavity) {
    if (!(tau_max > 0.0) || samples < 2 || !(omega_cavity > 0.0)) {
        throw InvalidParams("time grid needs tau_max > 0, samples >= 2 and Omega > 0");
    }
    std::vector<double> t(static_cast<std::size_t>(samples));
    const double dtau = tau_max / (samples - 1);
    for (int i = 0; i < samples; ++i) t[static_cast<std::size_t>(i)] = (i * dtau) / omega_cavity;
    return t;
}

}  // namespace djcm
