#pragma once

// Test-only reference computations.  None of these share code paths with the
// library routines they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "djcm/model.hpp"

namespace djcm::oracle {

using cplx = std::complex<double>;

// Theta(i lambda) = i g(lambda) with the real cubic
//   g(lambda) = -lambda^3 + (h+s) lambda^2 + a1 lambda - b0,
//   a1 = Omega_e^2 + v1^2 + v2^2 - s h,  b0 = 2 Omega_e v1 v2 + v1^2 s + v2^2 h.
struct RealCubic {
    double c3, c2, c1, c0;
    double operator()(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};

inline RealCubic imaginary_axis_cubic(double h, double s, double v1, double v2, double omega_e) {
    return {-1.0, h + s, omega_e * omega_e + v1 * v1 + v2 * v2 - s * h,
            -(2.0 * omega_e * v1 * v2 + v1 * v1 * s + v2 * v2 * h)};
}

// Grid scan for sign changes on [-R, R] with R the Cauchy bound, then
// bisection to machine precision.  Returns ascending roots (may miss a pair
// closer than the grid spacing).
inline std::vector<double> bisection_roots(const RealCubic& g, int grid = 200000) {
    const double R = 1.0 + std::max({std::abs(g.c2), std::abs(g.c1), std::abs(g.c0)}) / std::abs(g.c3);
    std::vector<double> roots;
    double x0 = -R;
    double f0 = g(x0);
    for (int i = 1; i <= grid; ++i) {
        const double x1 = -R + 2.0 * R * i / grid;
        const double f1 = g(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double fm = g(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

// Omega_e = 0, h = s = 0, ic = (0,1,0):  with V = sqrt(v1^2 + v2^2)
//   c1 = -i (v2/V) sin(Vt)
//   c2 = 1 - (v2^2/V^2)(1 - cos Vt)
//   c3 = -(v1 v2/V^2)(1 - cos Vt)
inline std::array<cplx, 3> two_coupling_rabi(double v1, double v2, double t) {
    const double V = std::sqrt(v1 * v1 + v2 * v2);
    const double one_minus_cos = 1.0 - std::cos(V * t);
    return {cplx{0.0, -(v2 / V) * std::sin(V * t)}, cplx{1.0 - (v2 * v2) / (V * V) * one_minus_cos, 0.0},
            cplx{-(v1 * v2) / (V * V) * one_minus_cos, 0.0}};
}

// Time-independent sector Hamiltonian in the frame x = (c1, e^{ist} c2, e^{iht} c3):
//   i x' = K x,  K = [[0, v2, v1], [v2, -s, Omega_e], [v1, Omega_e, -h]].
// Propagated by eigendecomposition, then rotated back to c.
inline std::array<cplx, 3> eigen_propagate(double h, double s, double v1, double v2, double omega_e,
                                           const std::array<cplx, 3>& ic, double t) {
    Eigen::Matrix3d K;
    K << 0.0, v2, v1, v2, -s, omega_e, v1, omega_e, -h;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(K);
    const Eigen::Matrix3cd U = es.eigenvectors().cast<cplx>();
    Eigen::Vector3cd x0(ic[0], ic[1], ic[2]);
    Eigen::Vector3cd phase;
    for (int k = 0; k < 3; ++k) phase[k] = std::exp(cplx{0.0, -es.eigenvalues()[k] * t});
    const Eigen::Vector3cd x = U * phase.asDiagonal() * U.adjoint() * x0;
    return {x[0], std::exp(cplx{0.0, -s * t}) * x[1], std::exp(cplx{0.0, -h * t}) * x[2]};
}

}  // namespace djcm::oracle
