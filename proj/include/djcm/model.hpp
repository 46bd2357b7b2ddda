#pragma once

#include <array>
#include <string>

namespace djcm {

// Deformation function f(n) of the f-deformed ladder operators
// A = a f(n), A^dag = f(n) a^dag.  Closed set: identity or Kerr-like
// f(n) = sqrt(1 + chi n^2).
class Deformation {
public:
    enum class Kind { Identity, Kerr };

    static Deformation identity() { return Deformation(Kind::Identity, 0.0); }
    static Deformation kerr(double chi);

    Kind kind() const { return kind_; }
    // Zero for the identity deformation.
    double chi() const { return chi_; }

    double f(int n) const;
    // Deformed commutator [A, A^dag] on |n>: (n+1) f^2(n+1) - n f^2(n).
    double k(int n) const;

    std::string describe() const;

    friend bool operator==(const Deformation&, const Deformation&) = default;

private:
    Deformation(Kind kind, double chi) : kind_(kind), chi_(chi) {}

    Kind kind_;
    double chi_;
};

double f_value(const Deformation& d, int n);
double k_value(const Deformation& d, int n);

struct ModelParams {
    double omega_cavity = 0.2;
    // (omega_1, omega_2, omega_3), strictly increasing.
    std::array<double, 3> omega_levels{0.3, 0.4, 0.5};
    double g1 = 0.0;
    double g2 = 0.0;
    double omega_e = 0.0;
    Deformation deformation = Deformation::identity();
    int sector_n = 0;

    // Throws InvalidParams.
    void validate() const;
};

// Per-sector quantities driving the amplitude equations.
//   h  = Omega k(n) - (omega_3 - omega_1)
//   s  = Omega k(n) - (omega_2 - omega_1)
//   nu = omega_3 - omega_2
//   v1 = g1 f(n+1) sqrt(n+1),  v2 = g2 f(n+1) sqrt(n+1)
struct SectorCoefficients {
    double h = 0.0;
    double s = 0.0;
    double nu = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    int n = 0;
};

SectorCoefficients sector_coefficients(const ModelParams& p);

}  // namespace djcm
