#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "djcm/dynamics.hpp"
#include "djcm/model.hpp"

namespace djcm {

struct ObservableSeries {
    std::string name;
    std::vector<double> times;  // scaled time tau
    std::vector<double> values;
};

struct Populations {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

Populations populations(const AmplitudeState& state);

// W = rho_11 - rho_33
double inversion(const AmplitudeState& state);

struct FieldMoments {
    double m1 = 0.0;  // <A^dag A>
    double m2 = 0.0;  // <(A^dag A)^2>
};

FieldMoments field_moments(const AmplitudeState& state, const ModelParams& p);

// g2(0) = <A^dag A^dag A A> / <A^dag A>^2.  Throws UndefinedObservable if m1 = 0.
double g2_zero(const AmplitudeState& state, const ModelParams& p);

// (<(A^dag A)^2> - <A^dag A>^2) / <A^dag A> - 1.  Throws UndefinedObservable if m1 = 0.
double mandel_q(const AmplitudeState& state, const ModelParams& p);

// Reduced atomic state Tr_F |psi><psi| in the basis |1>, |2>, |3>:
//   [ |c1|^2   0          0        ]
//   [ 0        |c2|^2     c3 c2^*  ]
//   [ 0        c2 c3^*    |c3|^2   ]
struct ReducedAtomState {
    Eigen::Matrix3cd rho;

    double trace() const { return rho.trace().real(); }
    // Ascending, from a Hermitian eigen-decomposition.
    std::array<double, 3> eigenvalues() const;
};

ReducedAtomState reduced_density(const AmplitudeState& state);

// -sum lambda ln lambda in nats; eigenvalues in [-1e-12, 0) are clamped to 0.
double von_neumann_entropy(const ReducedAtomState& rho);

// -p ln p - (1-p) ln (1-p), with 0 ln 0 = 0.
double binary_entropy(double p);

// Sparse expansion of a single-sector state in the |atom level, photon number>
// basis, used to evaluate arbitrary normally-ordered ladder moments by explicit
// matrix elements.
struct FockComponent {
    int level;
    int photons;
    cplx amplitude;
};

std::vector<FockComponent> fock_expansion(const AmplitudeState& state, int sector_n);

// <psi| A^k |psi> with A = a f(n).  <A^dag^k> is the complex conjugate.
cplx expect_annihilation_power(const std::vector<FockComponent>& psi, const Deformation& d, int k);

// <psi| (A^dag A)^k |psi>
double expect_number_power(const std::vector<FockComponent>& psi, const Deformation& d, int k);

struct SqueezingParams {
    double s1_x = 0.0;
    double s1_p = 0.0;
    double s2_x = 0.0;
    double s2_p = 0.0;
    // max(|<A>|, |<A^2>|, |<A^4>|)
    double max_anomalous = 0.0;
};

SqueezingParams squeezing_params(const AmplitudeState& state, const ModelParams& p);

// ---- Husimi Q function ----

struct HusimiGridSpec {
    double x_min = -3.0;
    double x_max = 3.0;
    double y_min = -3.0;
    double y_max = 3.0;
    int resolution = 121;
};

enum class HusimiMode { SingleSector, AllSectors };

struct HusimiGrid {
    std::vector<double> x_axis;
    std::vector<double> y_axis;
    // values[iy * x_axis.size() + ix]
    std::vector<double> values;
    double t = 0.0;
    int n_max = 0;

    double at(std::size_t ix, std::size_t iy) const { return values[iy * x_axis.size() + ix]; }
};

// Per-sector weight of Q at |beta|^2 = r2:
//   (1/pi) e^{-r2} r2^n / n! [ r2/(n+1) |c1|^2 + |c2|^2 + |c3|^2 ]
double husimi_sector_term(double r2, int n, const AmplitudeState& state);

// max(30, ceil(r2_max + 10 sqrt(r2_max)))
int default_husimi_nmax(double r2_max);

// SingleSector evaluates p.sector_n with `ic`; AllSectors solves every sector
// 0..n_max from the atom in |2> and sums the per-sector series without weighting
// (n_max <= 0 selects default_husimi_nmax).
HusimiGrid husimi_q(const ModelParams& p, double t, const HusimiGridSpec& grid, HusimiMode mode,
                    int n_max = 0, const InitialCondition& ic = {}, const SolveOptions& opt = {});

// 2-D composite trapezoid rule over the grid.
double trapezoid_integral(const HusimiGrid& grid);

// ---- Series over trajectories ----

struct SeriesResult {
    std::vector<ObservableSeries> series;
    // Samples dropped because the observable was undefined there (m1 = 0).
    int undefined_samples = 0;
};

// Known names: populations (P1, P2, P3), inversion, g2, entropy, mandel_q,
// squeezing (s1_x, s1_p, s2_x, s2_p).
SeriesResult compute_series(const Trajectory& traj, const std::string& observable);

}  // namespace djcm
