#include "djcm/model.hpp"

#include <cmath>
#include <sstream>

#include "djcm/errors.hpp"

namespace djcm {

Deformation Deformation::kerr(double chi) {
    if (!std::isfinite(chi) || chi < 0.0) {
        throw InvalidParams("Kerr deformation requires finite chi >= 0");
    }
    return Deformation(Kind::Kerr, chi);
}

double Deformation::f(int n) const {
    if (kind_ == Kind::Identity) return 1.0;
    const double nn = static_cast<double>(n);
    return std::sqrt(1.0 + chi_ * nn * nn);
}

double Deformation::k(int n) const {
    if (kind_ == Kind::Identity) return 1.0;
    const double n0 = static_cast<double>(n);
    const double n1 = n0 + 1.0;
    const double f0 = f(n);
    const double f1 = f(n + 1);
    return n1 * f1 * f1 - n0 * f0 * f0;
}

std::string Deformation::describe() const {
    if (kind_ == Kind::Identity) return "identity";
    std::ostringstream os;
    os.precision(17);
    os << "kerr(chi=" << chi_ << ")";
    return os.str();
}

double f_value(const Deformation& d, int n) { return d.f(n); }
double k_value(const Deformation& d, int n) { return d.k(n); }

void ModelParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(omega_cavity) || !finite(g1) || !finite(g2) || !finite(omega_e) ||
        !finite(omega_levels[0]) || !finite(omega_levels[1]) || !finite(omega_levels[2])) {
        throw InvalidParams("model parameters must be finite");
    }
    if (!(omega_levels[2] > omega_levels[1] && omega_levels[1] > omega_levels[0])) {
        throw InvalidParams("level frequencies must satisfy omega_3 > omega_2 > omega_1");
    }
    if (g1 < 0.0 || g2 < 0.0 || omega_e < 0.0) {
        throw InvalidParams("couplings g1, g2 and omega_e must be >= 0");
    }
    if (sector_n < 0) throw InvalidParams("sector_n must be >= 0");
}

SectorCoefficients sector_coefficients(const ModelParams& p) {
    p.validate();
    const int n = p.sector_n;
    const double shift = p.omega_cavity * p.deformation.k(n);
    const double w21 = p.omega_levels[1] - p.omega_levels[0];
    const double nu = p.omega_levels[2] - p.omega_levels[1];
    const double ladder = p.deformation.f(n + 1) * std::sqrt(static_cast<double>(n) + 1.0);

    SectorCoefficients c;
    c.s = shift - w21;
    c.nu = nu;
    // h built from s so that h == s - nu holds bit-for-bit.
    c.h = c.s - nu;
    c.v1 = p.g1 * ladder;
    c.v2 = p.g2 * ladder;
    c.n = n;
    return c;
}

}  // namespace djcm
