#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "djcm/errors.hpp"
#include "djcm/presets.hpp"
#include "djcm/spectrum.hpp"
#include "oracles.hpp"

using namespace djcm;
using Catch::Approx;

namespace {

SectorCoefficients random_coefficients(std::mt19937_64& rng, double& omega_e) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ModelParams p;
    std::array<double, 3> w{u(rng), u(rng), u(rng)};
    std::sort(w.begin(), w.end());
    p.omega_levels = w;
    p.omega_cavity = u(rng);
    p.g1 = 0.2 * u(rng);
    p.g2 = 0.2 * u(rng);
    p.omega_e = 0.2 * u(rng);
    p.deformation = Deformation::kerr(0.5 * u(rng));
    p.sector_n = static_cast<int>(rng() % 6);
    omega_e = p.omega_e;
    return sector_coefficients(p);
}

}  // namespace

TEST_CASE("theta coefficients with drive and detunings off", "[spectrum]") {
    SectorCoefficients c;
    c.v1 = 0.03;
    c.v2 = 0.04;
    const auto p = theta_poly(c, 0.0);
    CHECK(std::abs(p.a2) == 0.0);
    CHECK(p.a1.real() == Approx(0.0025).epsilon(1e-14));
    CHECK(p.a1.imag() == 0.0);
    CHECK(std::abs(p.a0) == 0.0);
}

TEST_CASE("theta coefficients for figure row 1", "[spectrum]") {
    const auto params = presets::figure_rows()[0];
    const auto c = sector_coefficients(params);
    const auto p = theta_poly(c, params.omega_e);
    const double v1 = 0.04 * std::sqrt(2.0);
    const double v2 = 0.06 * std::sqrt(2.0);
    CHECK(p.a2.real() == 0.0);
    CHECK(p.a2.imag() == Approx(-0.1).epsilon(1e-13));
    // 0.0016 + 0.0032 + 0.0072 - s h with h = 0
    CHECK(p.a1.real() == Approx(0.012).epsilon(1e-12));
    CHECK(p.a1.imag() == 0.0);
    CHECK(p.a0.real() == 0.0);
    CHECK(p.a0.imag() == Approx(-(2.0 * 0.04 * v1 * v2 + v1 * v1 * 0.1)).epsilon(1e-12));
}

TEST_CASE("s = i lambda gives a real cubic", "[spectrum]") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        double oe;
        const auto c = random_coefficients(rng, oe);
        const auto p = theta_poly(c, oe);
        // Theta(i lambda) = -i lambda^3 - a2 lambda^2 + i a1 lambda + a0; every
        // coefficient must be purely imaginary.
        CHECK(p.a2.real() == 0.0);
        CHECK(p.a1.imag() == 0.0);
        CHECK(p.a0.real() == 0.0);
        for (double lam : {-0.7, -0.1, 0.0, 0.25, 1.3}) {
            CHECK(std::abs(p(cplx{0.0, lam}).real()) <= 1e-15);
        }
    }
}

TEST_CASE("factorable cubic s (s^2 + V^2)", "[spectrum]") {
    CubicPoly p{cplx{}, cplx{0.01, 0.0}, cplx{}};
    const auto r = solve_cubic(p);
    CHECK(r.roots[0].imag() == Approx(-0.1).epsilon(1e-14));
    CHECK(std::abs(r.roots[1]) <= 1e-16);
    CHECK(r.roots[2].imag() == Approx(0.1).epsilon(1e-14));
    for (const auto& a : r.roots) CHECK(std::abs(a.real()) <= 1e-16);
    CHECK(r.min_pairwise_gap == Approx(0.1).epsilon(1e-12));
}

TEST_CASE("figure row 1 roots match the bisection oracle", "[spectrum]") {
    const auto params = presets::figure_rows()[0];
    const auto c = sector_coefficients(params);
    const auto poly = theta_poly(c, params.omega_e);
    const auto r = solve_cubic(poly);
    const auto lam = oracle::bisection_roots(oracle::imaginary_axis_cubic(c.h, c.s, c.v1, c.v2, params.omega_e));
    REQUIRE(lam.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(r.roots[j].imag() - lam[j]) <= 1e-12);
        CHECK(std::abs(r.roots[j].real()) <= 1e-10);
    }
    const auto v = vieta_residuals(poly, r);
    CHECK(std::abs(r.roots[0] + r.roots[1] + r.roots[2] + poly.a2) <= 1e-12 * std::abs(poly.a2));
    CHECK(std::abs(r.roots[0] * r.roots[1] * r.roots[2] + poly.a0) <= 1e-12 * std::abs(poly.a0));
    CHECK(v.max() <= 1e-12);
    CHECK(r.max_residual <= kRootResidualTol);
}

TEST_CASE("roots are purely imaginary and agree with the real-cubic oracle", "[spectrum][property]") {
    std::mt19937_64 rng(20240611);
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        double oe;
        const auto c = random_coefficients(rng, oe);
        const auto poly = theta_poly(c, oe);
        const auto r = find_roots(poly);
        CHECK(max_real_part_ratio(r) <= 1e-10);
        CHECK(vieta_residuals(poly, r).max() <= 1e-12);
        CHECK(r.max_residual <= kRootResidualTol);
        const auto lam = oracle::bisection_roots(oracle::imaginary_axis_cubic(c.h, c.s, c.v1, c.v2, oe), 20000);
        if (lam.size() != 3) continue;  // near-double root straddling one grid cell
        ++compared;
        for (std::size_t j = 0; j < 3; ++j) {
            if (std::abs(lam[j]) <= 10.0) CHECK(std::abs(r.roots[j].imag() - lam[j]) <= 1e-12);
        }
    }
    CHECK(compared > 950);
}

TEST_CASE("root ordering is ascending imaginary part", "[spectrum]") {
    for (const auto& params : presets::figure_rows()) {
        const auto r = solve_cubic(theta_poly(sector_coefficients(params), params.omega_e));
        CHECK(r.roots[0].imag() < r.roots[1].imag());
        CHECK(r.roots[1].imag() < r.roots[2].imag());
    }
}

TEST_CASE("degenerate spectra are rejected", "[spectrum]") {
    // All couplings off and h = s = 0: triple root at zero.
    SectorCoefficients c;
    CHECK_THROWS_AS(solve_cubic(theta_poly(c, 0.0)), DegenerateRoots);
    // Couplings off with figure detunings: double root at zero.
    auto params = presets::figure_rows()[0];
    params.g1 = params.g2 = params.omega_e = 0.0;
    CHECK_THROWS_AS(solve_cubic(theta_poly(sector_coefficients(params), 0.0)), DegenerateRoots);
    // find_roots never throws.
    const auto r = find_roots(theta_poly(c, 0.0));
    CHECK(r.min_pairwise_gap == 0.0);
}
