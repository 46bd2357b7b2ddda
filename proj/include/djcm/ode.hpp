#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with PI step-size control,
// for small complex-valued systems y' = f(t, y).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include "djcm/errors.hpp"

namespace djcm::ode {

struct Options {
    double rtol = 1e-10;
    double atol = 1e-10;
    // Underflow when h < min_step_rel * max(1, |t|).
    double min_step_rel = 1e-14;
    long max_steps = 50'000'000;
};

struct Stats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

namespace detail {

// Butcher tableau.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// 5th order minus embedded 4th order weights.
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace detail

// Integrates from times.front() and returns y at every entry of `times`
// (strictly increasing).  Steps are clipped to land on each sample time.
// F: void(double t, const std::array<T, N>& y, std::array<T, N>& dydt).
template <class T, std::size_t N, class F>
std::vector<std::array<T, N>> integrate(F&& rhs, std::array<T, N> y, std::span<const double> times,
                                        const Options& opt = {}, Stats* stats = nullptr) {
    using namespace detail;
    using State = std::array<T, N>;

    std::vector<State> out;
    out.reserve(times.size());
    if (times.empty()) return out;

    Stats local;
    Stats& st = stats ? *stats : local;

    auto axpy = [](const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
        State r = base;
        for (const auto& [w, k] : terms) {
            if (w == 0.0) continue;
            for (std::size_t i = 0; i < N; ++i) r[i] += (h * w) * (*k)[i];
        }
        return r;
    };

    double t = times.front();
    State k1, k2, k3, k4, k5, k6, k7;
    rhs(t, y, k1);
    ++st.rhs_evals;

    // Initial step guess from the local time scale |y| / |y'|.
    double h;
    {
        double ny = 0.0, nf = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::abs(y[i]);
            ny += std::norm(y[i]) / (sc * sc);
            nf += std::norm(k1[i]) / (sc * sc);
        }
        ny = std::sqrt(ny / N);
        nf = std::sqrt(nf / N);
        h = (ny < 1e-5 || nf < 1e-5) ? 1e-6 : 0.01 * ny / nf;
    }
    double err_prev = 1e-4;

    out.push_back(y);
    for (std::size_t idx = 1; idx < times.size(); ++idx) {
        const double target = times[idx];
        if (!(target > t)) throw std::invalid_argument("sample times must be strictly increasing");

        while (t < target) {
            const double remaining = target - t;
            const bool clipped = h >= remaining;
            const double step = clipped ? remaining : h;

            rhs(t + c2 * step, axpy(y, step, {{a21, &k1}}), k2);
            rhs(t + c3 * step, axpy(y, step, {{a31, &k1}, {a32, &k2}}), k3);
            rhs(t + c4 * step, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4);
            rhs(t + c5 * step, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5);
            rhs(t + step, axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6);
            const State y_new =
                axpy(y, step, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
            rhs(t + step, y_new, k7);
            st.rhs_evals += 6;

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const T e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                    e7 * k7[i]);
                const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                err += std::norm(e) / (sc * sc);
            }
            err = std::sqrt(err / N);

            if (err <= 1.0) {
                t = clipped ? target : t + step;
                y = y_new;
                k1 = k7;
                ++st.accepted;
                const double fac =
                    err == 0.0 ? 10.0
                               : std::clamp(0.9 * std::pow(err, -0.17) * std::pow(err_prev, 0.04), 0.2, 10.0);
                err_prev = std::max(err, 1e-4);
                // A clipped step says nothing about how large h could be.
                h = clipped ? std::max(h, step * fac) : step * fac;
            } else {
                ++st.rejected;
                h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
            }

            if (h < opt.min_step_rel * std::max(1.0, std::abs(t))) {
                std::ostringstream os;
                os << "step size underflow at t=" << t << " (h=" << h << ")";
                throw StepSizeUnderflow(os.str());
            }
            if (st.accepted + st.rejected > opt.max_steps) {
                throw StepSizeUnderflow("step budget exhausted before reaching the final sample time");
            }
        }
        out.push_back(y);
    }
    return out;
}

}  // namespace djcm::ode
