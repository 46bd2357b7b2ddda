#include "djcm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "djcm/errors.hpp"

namespace djcm {

namespace {

constexpr cplx kI{0.0, 1.0};

double residual_of(const CubicPoly& p, cplx s) {
    const double m = std::abs(s);
    return std::abs(p(s)) / std::max(1.0, m * m * m);
}

cplx polish(const CubicPoly& p, cplx s) {
    double best = std::abs(p(s));
    if (best == 0.0) return s;
    for (int iter = 0; iter < 3; ++iter) {
        const cplx d = p.derivative(s);
        if (d == cplx{}) break;
        const cplx next = s - p(s) / d;
        const double r = std::abs(p(next));
        if (r > best || (iter > 0 && r == best)) break;
        s = next;
        best = r;
        if (best == 0.0) break;
    }
    return s;
}

}  // namespace

double CubicRoots::scale() const {
    double m = 1.0;
    for (const auto& r : roots) m = std::max(m, std::abs(r));
    return m;
}

double VietaResiduals::max() const { return std::max({sum, pair_sum, product}); }

CubicPoly theta_poly(const SectorCoefficients& c, double omega_e) {
    const double h = c.h;
    const double s = c.s;
    const double v1 = c.v1;
    const double v2 = c.v2;
    CubicPoly p;
    p.a2 = -kI * (h + s);
    p.a1 = cplx{omega_e * omega_e + v1 * v1 + v2 * v2 - s * h, 0.0};
    p.a0 = -kI * (2.0 * omega_e * v1 * v2 + v1 * v1 * s + v2 * v2 * h);
    return p;
}

CubicRoots find_roots(const CubicPoly& poly) {
    // Depressed cubic y^3 + p y + q with s = y - a2/3.
    const cplx a2 = poly.a2;
    const cplx a1 = poly.a1;
    const cplx a0 = poly.a0;
    const cplx shift = a2 / 3.0;
    const cplx p = a1 - a2 * a2 / 3.0;
    const cplx q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;

    const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    // Pick the branch that avoids cancellation.
    cplx w = -q / 2.0 + disc;
    const cplx w_alt = -q / 2.0 - disc;
    if (std::abs(w_alt) > std::abs(w)) w = w_alt;

    std::array<cplx, 3> y{};
    if (std::abs(w) == 0.0) {
        y = {cplx{}, cplx{}, cplx{}};
    } else {
        const cplx u = std::pow(w, 1.0 / 3.0);
        const cplx omega{-0.5, std::sqrt(3.0) / 2.0};
        cplx rot{1.0, 0.0};
        for (auto& yk : y) {
            const cplx uk = u * rot;
            yk = uk - p / (3.0 * uk);
            rot *= omega;
        }
    }

    CubicRoots out;
    for (std::size_t k = 0; k < 3; ++k) out.roots[k] = polish(poly, y[k] - shift);

    std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });

    out.min_pairwise_gap = std::min({std::abs(out.roots[0] - out.roots[1]),
                                     std::abs(out.roots[0] - out.roots[2]),
                                     std::abs(out.roots[1] - out.roots[2])});
    out.max_residual = 0.0;
    for (const auto& r : out.roots) out.max_residual = std::max(out.max_residual, residual_of(poly, r));
    return out;
}

CubicRoots solve_cubic(const CubicPoly& p) {
    CubicRoots r = find_roots(p);
    if (r.min_pairwise_gap < kRootDegenerateTol * r.scale()) {
        std::ostringstream os;
        os.precision(6);
        os << "characteristic roots are degenerate (min gap " << r.min_pairwise_gap
           << "); residue expansion is ill-conditioned";
        throw DegenerateRoots(os.str());
    }
    return r;
}

VietaResiduals vieta_residuals(const CubicPoly& p, const CubicRoots& r) {
    const cplx x = r.roots[0];
    const cplx y = r.roots[1];
    const cplx z = r.roots[2];
    auto rel = [](cplx diff, double scale) {
        const double d = std::abs(diff);
        return scale > 0.0 ? d / scale : d;
    };
    VietaResiduals v;
    v.sum = rel(x + y + z + p.a2, std::abs(x) + std::abs(y) + std::abs(z));
    v.pair_sum = rel(x * y + x * z + y * z - p.a1,
                     std::abs(x * y) + std::abs(x * z) + std::abs(y * z));
    v.product = rel(x * y * z + p.a0, std::abs(x) * std::abs(y) * std::abs(z));
    return v;
}

double max_real_part_ratio(const CubicRoots& r) {
    double worst = 0.0;
    for (const auto& a : r.roots) {
        worst = std::max(worst, std::abs(a.real()) / std::max(1.0, std::abs(a.imag())));
    }
    return worst;
}

}  // namespace djcm
