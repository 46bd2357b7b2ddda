#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "djcm/model.hpp"
#include "djcm/ode.hpp"
#include "djcm/spectrum.hpp"

namespace djcm {

// Amplitudes of |1,n+1>, |2,n>, |3,n> at time t.
struct AmplitudeState {
    double t = 0.0;
    cplx c1;
    cplx c2;
    cplx c3;

    double norm_sqr() const { return std::norm(c1) + std::norm(c2) + std::norm(c3); }
};

inline constexpr double kNormTol = 1e-9;

class InitialCondition {
public:
    // Atom in |2>, field in |n>.
    InitialCondition() : c_{cplx{}, cplx{1.0, 0.0}, cplx{}} {}
    // Throws InvalidParams unless |c1|^2+|c2|^2+|c3|^2 = 1 within 1e-12.
    InitialCondition(cplx c1, cplx c2, cplx c3);

    static InitialCondition level(int j);

    const std::array<cplx, 3>& amplitudes() const { return c_; }

private:
    std::array<cplx, 3> c_;
};

enum class Method { Analytic, Oracle };
std::string_view to_string(Method m);

struct Trajectory {
    std::vector<AmplitudeState> samples;
    ModelParams params;
    Method method = Method::Analytic;

    double max_norm_drift() const;
};

// Residue expansion of M(s)^-1 e^{st}: with R_j = adj M(alpha_j) / Theta'(alpha_j),
//   (c1, e^{ist} c2, e^{iht} c3)^T = sum_j R_j e^{alpha_j t} ic.
// The residues are computed once; evaluation at any t is closed form.
class ResiduePropagator {
public:
    ResiduePropagator(const SectorCoefficients& c, double omega_e, const CubicRoots& roots);

    AmplitudeState evaluate(const InitialCondition& ic, double t) const;

    const CubicRoots& roots() const { return roots_; }
    const std::array<std::array<std::array<cplx, 3>, 3>, 3>& residues() const { return residue_; }

private:
    SectorCoefficients coeffs_;
    CubicRoots roots_;
    // residue_[j] is the 3x3 matrix R_j.
    std::array<std::array<std::array<cplx, 3>, 3>, 3> residue_;
};

AmplitudeState amplitudes_analytic(const SectorCoefficients& c, double omega_e, const CubicRoots& roots,
                                   const InitialCondition& ic, double t);

// Closed-form amplitudes for the atom starting in |2> (ic = (0,1,0)), written
// term by term with the denominators (alpha_j - alpha_k)(alpha_j - alpha_l).
AmplitudeState amplitudes_excited_closed_form(const SectorCoefficients& c, double omega_e,
                                              const CubicRoots& roots, double t);

// Integrates the lab-frame amplitude equations
//   c1' = -i v1 e^{iht} c3 - i v2 e^{ist} c2
//   c2' = -i v2 e^{-ist} c1 - i Omega_e e^{-i nu t} c3
//   c3' = -i v1 e^{-iht} c1 - i Omega_e e^{+i nu t} c2
// with adaptive Dormand-Prince 5(4).  t_grid must start at 0.
std::vector<AmplitudeState> amplitudes_ode(const SectorCoefficients& c, double omega_e,
                                           const InitialCondition& ic, std::span<const double> t_grid,
                                           const ode::Options& opt = {}, ode::Stats* stats = nullptr);

struct SolveOptions {
    bool force_oracle = false;
    ode::Options ode{};
};

struct SolveDiagnostics {
    CubicRoots roots{};
    bool roots_valid = false;
    double vieta_residual = 0.0;
};

// model -> spectrum -> residue expansion, falling back to the ODE oracle when
// the characteristic roots are degenerate (or when forced).
Trajectory solve_sector(const ModelParams& p, const InitialCondition& ic, std::span<const double> t_grid,
                        const SolveOptions& opt = {}, SolveDiagnostics* diag = nullptr);

// n uniform samples of scaled time tau = Omega t over [0, tau_max],
// returned as raw times t.
std::vector<double> time_grid_for_tau(double tau_max, int samples, double omega_cavity);

}  // namespace djcm
