#include "djcm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "djcm/errors.hpp"

namespace djcm {

Populations populations(const AmplitudeState& s) {
    return {std::norm(s.c1), std::norm(s.c2), std::norm(s.c3)};
}

double inversion(const AmplitudeState& s) { return std::norm(s.c1) - std::norm(s.c3); }

FieldMoments field_moments(const AmplitudeState& s, const ModelParams& p) {
    const int n = p.sector_n;
    const double nd = n;
    const double f1 = p.deformation.f(n + 1);
    const double f0 = p.deformation.f(n);
    const double upper = std::norm(s.c2) + std::norm(s.c3);
    const double e1 = f1 * f1 * (nd + 1.0);  // photon-number eigenvalue of |1,n+1>
    const double e0 = nd * f0 * f0;          // ... of |2,n>, |3,n>
    FieldMoments m;
    m.m1 = e1 * std::norm(s.c1) + e0 * upper;
    m.m2 = e1 * e1 * std::norm(s.c1) + e0 * e0 * upper;
    return m;
}

namespace {

void require_defined(double m1, const char* what) {
    if (!(m1 > 0.0)) {
        std::ostringstream os;
        os << what << " undefined: <A^dag A> = 0";
        throw UndefinedObservable(os.str());
    }
}

}  // namespace

double g2_zero(const AmplitudeState& s, const ModelParams& p) {
    const FieldMoments m = field_moments(s, p);
    require_defined(m.m1, "g2(0)");
    const int n = p.sector_n;
    const double nd = n;
    const auto& d = p.deformation;
    const double fn2 = d.f(n) * d.f(n);
    const double fn1 = d.f(n + 1) * d.f(n + 1);
    // No two-photon coincidence from the n = 0 upper-level component.
    const double lower = n >= 1 ? (nd - 1.0) * d.f(n - 1) * d.f(n - 1) : 0.0;
    const double num = (nd + 1.0) * fn1 * nd * fn2 * std::norm(s.c1) +
                       lower * nd * fn2 * (std::norm(s.c2) + std::norm(s.c3));
    return num / (m.m1 * m.m1);
}

double mandel_q(const AmplitudeState& s, const ModelParams& p) {
    const FieldMoments m = field_moments(s, p);
    require_defined(m.m1, "Mandel Q");
    return (m.m2 - m.m1 * m.m1) / m.m1 - 1.0;
}

std::array<double, 3> ReducedAtomState::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rho, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev[0], ev[1], ev[2]};
}

ReducedAtomState reduced_density(const AmplitudeState& s) {
    ReducedAtomState r;
    r.rho.setZero();
    r.rho(0, 0) = std::norm(s.c1);
    r.rho(1, 1) = std::norm(s.c2);
    r.rho(2, 2) = std::norm(s.c3);
    r.rho(1, 2) = s.c3 * std::conj(s.c2);
    r.rho(2, 1) = s.c2 * std::conj(s.c3);
    return r;
}

double von_neumann_entropy(const ReducedAtomState& rho) {
    double sum = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda >= -1e-12 && lambda <= 0.0) continue;
        sum -= lambda * std::log(lambda);
    }
    return sum;
}

double binary_entropy(double p) {
    auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
    return term(p) + term(1.0 - p);
}

std::vector<FockComponent> fock_expansion(const AmplitudeState& s, int n) {
    return {{1, n + 1, s.c1}, {2, n, s.c2}, {3, n, s.c3}};
}

cplx expect_annihilation_power(const std::vector<FockComponent>& psi, const Deformation& d, int k) {
    cplx total{};
    for (const auto& ket : psi) {
        if (ket.photons < k) continue;
        // A^k |j, m> = prod_{i<k} f(m-i) sqrt(m-i) |j, m-k>
        double factor = 1.0;
        for (int i = 0; i < k; ++i) {
            const int m = ket.photons - i;
            factor *= d.f(m) * std::sqrt(static_cast<double>(m));
        }
        for (const auto& bra : psi) {
            if (bra.level == ket.level && bra.photons == ket.photons - k) {
                total += std::conj(bra.amplitude) * factor * ket.amplitude;
            }
        }
    }
    return total;
}

double expect_number_power(const std::vector<FockComponent>& psi, const Deformation& d, int k) {
    double total = 0.0;
    for (const auto& c : psi) {
        const double f = d.f(c.photons);
        const double eig = c.photons * f * f;
        total += std::pow(eig, k) * std::norm(c.amplitude);
    }
    return total;
}

SqueezingParams squeezing_params(const AmplitudeState& s, const ModelParams& p) {
    const auto psi = fock_expansion(s, p.sector_n);
    const auto& d = p.deformation;
    const cplx a1 = expect_annihilation_power(psi, d, 1);
    const cplx a2 = expect_annihilation_power(psi, d, 2);
    const cplx a4 = expect_annihilation_power(psi, d, 4);
    const cplx a1d = std::conj(a1);
    const cplx a2d = std::conj(a2);
    const cplx a4d = std::conj(a4);
    const double m1 = expect_number_power(psi, d, 1);
    const double m2 = expect_number_power(psi, d, 2);

    SqueezingParams out;
    out.s1_x = (2.0 * m1 + a2 + a2d - a1 * a1 - a1d * a1d - 2.0 * a1 * a1d).real();
    out.s1_p = (2.0 * m1 - a2 - a2d + a1 * a1 + a1d * a1d - 2.0 * a1 * a1d).real();
    out.s2_x = (2.0 * m2 - 2.0 * m1 + a4 + a4d - a2 * a2 - a2d * a2d - 2.0 * a2 * a2d).real();
    out.s2_p = (2.0 * m2 - 2.0 * m1 - a4 - a4d + a2 * a2 + a2d * a2d - 2.0 * a2 * a2d).real();
    out.max_anomalous = std::max({std::abs(a1), std::abs(a2), std::abs(a4)});
    return out;
}

SeriesResult compute_series(const Trajectory& traj, const std::string& name) {
    const ModelParams& p = traj.params;
    const double omega = p.omega_cavity;
    auto make = [&](std::string label) {
        ObservableSeries s;
        s.name = std::move(label);
        s.times.reserve(traj.samples.size());
        s.values.reserve(traj.samples.size());
        return s;
    };

    SeriesResult res;
    if (name == "populations") {
        auto p1 = make("P1"), p2 = make("P2"), p3 = make("P3");
        for (const auto& st : traj.samples) {
            const double tau = omega * st.t;
            const auto pop = populations(st);
            p1.times.push_back(tau), p1.values.push_back(pop.p1);
            p2.times.push_back(tau), p2.values.push_back(pop.p2);
            p3.times.push_back(tau), p3.values.push_back(pop.p3);
        }
        res.series = {std::move(p1), std::move(p2), std::move(p3)};
    } else if (name == "inversion" || name == "entropy" || name == "g2" || name == "mandel_q") {
        auto s = make(name);
        for (const auto& st : traj.samples) {
            double v = 0.0;
            try {
                if (name == "inversion") v = inversion(st);
                else if (name == "entropy") v = von_neumann_entropy(reduced_density(st));
                else if (name == "g2") v = g2_zero(st, p);
                else v = mandel_q(st, p);
            } catch (const UndefinedObservable&) {
                ++res.undefined_samples;
                continue;
            }
            s.times.push_back(omega * st.t);
            s.values.push_back(v);
        }
        res.series = {std::move(s)};
    } else if (name == "squeezing") {
        auto s1x = make("s1_x"), s1p = make("s1_p"), s2x = make("s2_x"), s2p = make("s2_p");
        for (const auto& st : traj.samples) {
            const double tau = omega * st.t;
            const auto sq = squeezing_params(st, p);
            s1x.times.push_back(tau), s1x.values.push_back(sq.s1_x);
            s1p.times.push_back(tau), s1p.values.push_back(sq.s1_p);
            s2x.times.push_back(tau), s2x.values.push_back(sq.s2_x);
            s2p.times.push_back(tau), s2p.values.push_back(sq.s2_p);
        }
        res.series = {std::move(s1x), std::move(s1p), std::move(s2x), std::move(s2p)};
    } else {
        throw InvalidParams("unknown observable '" + name + "'");
    }
    return res;
}

}  // namespace djcm
