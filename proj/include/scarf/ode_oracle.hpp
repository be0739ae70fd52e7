#pragma once

// Independent check on the closed form: Hamilton's equations
//
//   dx/dt = 2p,   dp/dt = -V'(x)
//
// integrated in complex phase space as a real 4-dimensional system
// (Re x, Im x, Re p, Im p) with an adaptive Dormand-Prince 5(4) pair and its
// order-4 continuous extension for output at arbitrary times.

#include <algorithm>
#include <array>
#include <initializer_list>
#include <utility>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "scarf/model.hpp"

namespace scarf {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1e-2;
    std::size_t max_steps = 10'000'000;
    /// Stop when |cosh(alpha0 x / 2)| drops below this.
    double pole_eps = 1e-8;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) || max_steps == 0)
            throw DomainError("integrator tolerances and limits must be positive");
    }
};

/// Integration stopped early; carries the last accepted state.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, PhasePoint last_good)
        : Error(what), last_good_(last_good) {}
    const PhasePoint& last_good() const noexcept { return last_good_; }

private:
    PhasePoint last_good_;
};

struct OdeSolution {
    std::vector<PhasePoint> samples;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

namespace detail {

using State4 = std::array<double, 4>;

inline State4 pack(Complex x, Complex p) { return {x.real(), x.imag(), p.real(), p.imag()}; }

inline PhasePoint unpack(const State4& y, double t) {
    return {Complex{y[0], y[1]}, Complex{y[2], y[3]}, t};
}

inline State4 axpy(const State4& y, double h, std::initializer_list<std::pair<double, const State4*>> terms) {
    State4 out = y;
    for (const auto& [coef, k] : terms)
        for (std::size_t i = 0; i < 4; ++i) out[i] += h * coef * (*k)[i];
    return out;
}

class HamiltonRhs {
public:
    HamiltonRhs(const ScarfParams& params, double pole_eps) : params_(params), eps_(pole_eps) {}

    State4 operator()(const State4& y) const {
        const Complex x{y[0], y[1]};
        const Complex p{y[2], y[3]};
        const Complex dx = 2.0 * p;
        const Complex dp = -potential_derivative(params_, x, 0.0);
        return {dx.real(), dx.imag(), dp.real(), dp.imag()};
    }

    bool near_pole(const State4& y) const {
        return std::abs(std::cosh(0.5 * params_.alpha0 * Complex{y[0], y[1]})) < eps_;
    }

private:
    ScarfParams params_;
    double eps_;
};

// Dormand-Prince 5(4) coefficients
namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous extension (Hairer, Norsett & Wanner)
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<State4, 5> r{};

    State4 at(double t) const {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        State4 out{};
        for (std::size_t i = 0; i < 4; ++i)
            out[i] = r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i])));
        return out;
    }
};

}  // namespace detail

/// Integrates from initial.t to t_end (either direction) and returns the
/// state at each of sample_times, which must be monotone in the direction of
/// integration and lie within [initial.t, t_end].
inline OdeSolution integrate(const ScarfParams& params, const PhasePoint& initial, double t_end,
                             const IntegratorConfig& config, const std::vector<double>& sample_times) {
    using namespace detail;
    config.validate();
    const double t0 = initial.t;
    const double dir = t_end >= t0 ? 1.0 : -1.0;
    const double lo = std::min(t0, t_end);
    const double hi = std::max(t0, t_end);
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < lo || sample_times[i] > hi)
            throw DomainError("sample time outside the integration interval");
        if (i > 0 && dir * (sample_times[i] - sample_times[i - 1]) < 0.0)
            throw DomainError("sample times must be ordered along the integration direction");
    }

    const HamiltonRhs rhs(params, config.pole_eps);
    OdeSolution sol;
    sol.samples.reserve(sample_times.size());

    State4 y = pack(initial.x, initial.p);
    double t = t0;
    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] == t0)
        sol.samples.push_back(unpack(y, sample_times[next++]));
    if (rhs.near_pole(y)) throw IntegrationError("initial state is at a potential pole", initial);

    State4 k1 = rhs(y);
    double h = std::min(config.max_step, std::max(1e-6, 1e-3 * std::abs(t_end - t0)));
    std::size_t steps = 0;

    while (dir * (t_end - t) > 0.0) {
        if (++steps > config.max_steps)
            throw IntegrationError("maximum number of steps exceeded", unpack(y, t));
        h = std::min({h, config.max_step, std::abs(t_end - t)});
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw IntegrationError("step size underflow", unpack(y, t));
        const double hs = dir * h;

        const State4 k2 = rhs(axpy(y, hs, {{dp::a21, &k1}}));
        const State4 k3 = rhs(axpy(y, hs, {{dp::a31, &k1}, {dp::a32, &k2}}));
        const State4 k4 = rhs(axpy(y, hs, {{dp::a41, &k1}, {dp::a42, &k2}, {dp::a43, &k3}}));
        const State4 k5 = rhs(axpy(y, hs, {{dp::a51, &k1}, {dp::a52, &k2}, {dp::a53, &k3}, {dp::a54, &k4}}));
        const State4 k6 = rhs(axpy(
            y, hs, {{dp::a61, &k1}, {dp::a62, &k2}, {dp::a63, &k3}, {dp::a64, &k4}, {dp::a65, &k5}}));
        const State4 y_new = axpy(
            y, hs, {{dp::a71, &k1}, {dp::a73, &k3}, {dp::a74, &k4}, {dp::a75, &k5}, {dp::a76, &k6}});
        const State4 k7 = rhs(y_new);

        double err = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double e = hs * (dp::e1 * k1[i] + dp::e3 * k3[i] + dp::e4 * k4[i] + dp::e5 * k5[i] +
                                   dp::e6 * k6[i] + dp::e7 * k7[i]);
            const double sc =
                config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 4.0);

        if (!std::isfinite(err) || err > 1.0) {
            ++sol.rejected_steps;
            const double shrink = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= shrink;
            continue;
        }

        DenseStep dense;
        dense.t0 = t;
        dense.h = hs;
        for (std::size_t i = 0; i < 4; ++i) {
            const double dy = y_new[i] - y[i];
            const double bspl = hs * k1[i] - dy;
            dense.r[0][i] = y[i];
            dense.r[1][i] = dy;
            dense.r[2][i] = bspl;
            dense.r[3][i] = dy - hs * k7[i] - bspl;
            dense.r[4][i] = hs * (dp::d1 * k1[i] + dp::d3 * k3[i] + dp::d4 * k4[i] + dp::d5 * k5[i] +
                                  dp::d6 * k6[i] + dp::d7 * k7[i]);
        }
        const double t_new = (std::abs(t_end - t) <= h) ? t_end : t + hs;
        while (next < sample_times.size() && dir * (sample_times[next] - t_new) <= 0.0) {
            const double ts = sample_times[next++];
            sol.samples.push_back(unpack(ts == t_new ? y_new : dense.at(ts), ts));
        }

        y = y_new;
        t = t_new;
        k1 = k7;
        ++sol.accepted_steps;
        if (rhs.near_pole(y))
            throw IntegrationError("trajectory reached a potential pole", unpack(y, t));

        const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
        h *= std::max(0.2, grow);
    }
    return sol;
}

}  // namespace scarf
