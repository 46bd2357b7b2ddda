#pragma once

#include <array>
#include <complex>

#include "djcm/model.hpp"

namespace djcm {

using cplx = std::complex<double>;

// Monic cubic s^3 + a2 s^2 + a1 s + a0: the determinant of the
// Laplace-domain matrix M(s) of one photon sector.
struct CubicPoly {
    cplx a2;
    cplx a1;
    cplx a0;

    cplx operator()(cplx s) const { return ((s + a2) * s + a1) * s + a0; }
    cplx derivative(cplx s) const { return (3.0 * s + 2.0 * a2) * s + a1; }
};

struct CubicRoots {
    // Ascending imaginary part, ties broken by ascending real part.
    std::array<cplx, 3> roots;
    double min_pairwise_gap = 0.0;
    // max_j |Theta(alpha_j)| / max(1, |alpha_j|^3)
    double max_residual = 0.0;

    double scale() const;
};

inline constexpr double kRootResidualTol = 1e-12;
inline constexpr double kRootDegenerateTol = 1e-8;

CubicPoly theta_poly(const SectorCoefficients& c, double omega_e);

// Cardano in complex arithmetic plus Newton polish.  Never throws.
CubicRoots find_roots(const CubicPoly& p);

// find_roots, then DegenerateRoots when two roots coincide to within
// kRootDegenerateTol * scale.
CubicRoots solve_cubic(const CubicPoly& p);

struct VietaResiduals {
    double sum = 0.0;
    double pair_sum = 0.0;
    double product = 0.0;

    double max() const;
};

// Relative Vieta residuals.  Each identity is normalised by the sum of
// magnitudes of its terms (|a1|+|a2|+|a3|, sum of |ai aj|, |a1 a2 a3|),
// which is the scale that rounding errors in the roots act on.
VietaResiduals vieta_residuals(const CubicPoly& p, const CubicRoots& r);

// max_j |Re alpha_j| / max(1, |Im alpha_j|)
double max_real_part_ratio(const CubicRoots& r);

}  // namespace djcm
