#pragma once

// Exact scattering trajectories
//
//   x(t) = (2 / alpha0) asinh( (c / sqrt(E)) sinh(theta0 + alpha0 sqrt(E) t) + delta / E )
//   p(t) = c cosh(theta0 + alpha0 sqrt(E) t) / cosh(alpha0 x(t) / 2)
//
// valid for complex delta, E and theta0. asinh is multivalued: with
// w = Asinh(s) (principal), every solution of sinh(u) = s is
//
//   u_b = (-1)^b w + i pi b,   b integer,
//
// and b is the branch index recorded per sample. Along a sampled trajectory
// the branch closest to the previous sample is taken.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "scarf/factorization.hpp"
#include "scarf/model.hpp"

namespace scarf {

struct TrajectorySpec {
    ScarfParams params;
    Complex energy{8.0, 0.0};
    Complex theta0{0.0, 0.0};
    double t_start = 0.0;
    double t_end = 1.0;
    std::size_t samples = 1001;
    /// Skip the energy-window check for real E (energy scans).
    bool allow_outside_windows = false;

    void validate() const {
        params.validate();
        if (samples < 2) throw DomainError("trajectory needs at least 2 samples");
        if (!(t_end > t_start)) throw DomainError("t_end must be greater than t_start");
        if (!(energy.real() > 0.0)) throw DomainError("scattering energy needs Re E > 0");
        if (energy.imag() == 0.0 && !allow_outside_windows &&
            !energy_windows(params).contains(energy.real()))
            throw DomainError("energy " + std::to_string(energy.real()) +
                              " lies outside the admissible scattering windows");
    }

    double time_at(std::size_t k) const {
        if (k + 1 == samples) return t_end;
        return t_start + (t_end - t_start) * static_cast<double>(k) /
                             static_cast<double>(samples - 1);
    }
};

struct PositionSample {
    Complex x;
    int branch = 0;
};

/// p(t), or a divergence marker where cosh(alpha0 x / 2) vanishes.
struct Momentum {
    Complex value;
    bool divergent = false;
};

namespace detail {

struct ClosedForm {
    double alpha0;
    Complex theta0;
    Complex c;          // c(E)
    Complex amplitude;  // c / sqrt(E)
    Complex offset;     // delta / E
    Complex rate;       // alpha0 sqrt(E)

    explicit ClosedForm(const TrajectorySpec& spec)
        : alpha0(spec.params.alpha0), theta0(spec.theta0) {
        detail::require_nonzero_energy(spec.energy);
        const Complex root_e = std::sqrt(spec.energy);
        c = c_of_E(spec.params, spec.energy);
        amplitude = c / root_e;
        offset = spec.params.coupling / spec.energy;
        rate = spec.params.alpha0 * root_e;
    }

    Complex phase(double t) const { return theta0 + rate * t; }
    Complex argument(double t) const { return amplitude * std::sinh(phase(t)) + offset; }
};

inline Complex asinh_branch(Complex w, int branch) {
    const Complex base = (branch % 2 == 0) ? w : -w;
    return base + kI * (std::numbers::pi * branch);
}

// |cosh(asinh s)| = |sqrt(1 + s^2)|; only small near s = +-i.
inline bool near_branch_point(Complex s, double eps) {
    if (std::abs(s) > 2.0) return false;
    return std::sqrt(std::abs(1.0 + s * s)) <= eps;
}

struct PositionEval {
    PositionSample sample;
    Complex argument;
    bool at_branch_point = false;
};

inline PositionEval evaluate_position(const ClosedForm& cf, double t,
                                      const PositionSample* previous, double eps) {
    const Complex s = cf.argument(t);
    const Complex w = std::asinh(s);
    const double scale = 2.0 / cf.alpha0;
    PositionEval out{{scale * w, 0}, s, near_branch_point(s, eps)};
    if (previous == nullptr) return out;
    // x = scale * u, so compare in u to keep the window independent of alpha0
    const Complex prev_u = previous->x / scale;
    double best = std::abs(w - prev_u);
    int best_branch = 0;
    bool first = true;
    for (int b = previous->branch - 3; b <= previous->branch + 3; ++b) {
        const double dist = std::abs(asinh_branch(w, b) - prev_u);
        if (first || dist < best) {
            best = dist;
            best_branch = b;
            first = false;
        }
    }
    out.sample = {scale * asinh_branch(w, best_branch), best_branch};
    return out;
}

inline Momentum evaluate_momentum(const ClosedForm& cf, double t, Complex x_t, double eps) {
    const Complex denom = std::cosh(0.5 * cf.alpha0 * x_t);
    if (std::abs(denom) <= eps) return {Complex{}, true};
    return {cf.c * std::cosh(cf.phase(t)) / denom, false};
}

}  // namespace detail

/// x(t). Without a previous sample the principal branch (0) is used; with one,
/// the branch nearest to it.
inline PositionSample position_at(const TrajectorySpec& spec, double t,
                                  const PositionSample* previous = nullptr,
                                  double eps = kPoleEps) {
    const detail::ClosedForm cf(spec);
    const auto ev = detail::evaluate_position(cf, t, previous, eps);
    if (ev.at_branch_point)
        throw BranchPointError("asinh argument at a branch point (+/- i)", ev.argument);
    return ev.sample;
}

inline Momentum momentum_at(const TrajectorySpec& spec, double t, Complex x_t,
                            double eps = kPoleEps) {
    return detail::evaluate_momentum(detail::ClosedForm(spec), t, x_t, eps);
}

/// Tolerances used by sample_trajectory's self-checks.
struct TrajectoryChecks {
    double energy_rel_tol = 1e-8;
    double velocity_tol = 1e-4;
    /// Central-difference step for dx/dt, in units of 1 / |alpha0 sqrt(E)|.
    double velocity_step = 1e-5;
};

struct Trajectory {
    TrajectorySpec spec;
    std::vector<PhasePoint> points;
    std::vector<int> branch_log;
    double max_energy_residual = 0.0;
    double max_velocity_residual = 0.0;
};

inline Trajectory sample_trajectory(const TrajectorySpec& spec, const TrajectoryChecks& checks = {}) {
    spec.validate();
    const detail::ClosedForm cf(spec);
    Trajectory traj;
    traj.spec = spec;
    traj.points.reserve(spec.samples);
    traj.branch_log.reserve(spec.samples);

    PositionSample prev;
    for (std::size_t k = 0; k < spec.samples; ++k) {
        const double t = spec.time_at(k);
        const auto ev = detail::evaluate_position(cf, t, k == 0 ? nullptr : &prev, kPoleEps);
        if (ev.at_branch_point)
            throw TrajectoryError("closed-form position hits an asinh branch point", t);
        const Momentum p = detail::evaluate_momentum(cf, t, ev.sample.x, kPoleEps);
        if (p.divergent) throw TrajectoryError("momentum diverges at the barrier", t);
        prev = ev.sample;
        traj.points.push_back({ev.sample.x, p.value, t});
        traj.branch_log.push_back(ev.sample.branch);
    }

    const double e_scale = std::abs(spec.energy);
    for (const auto& pt : traj.points) {
        const double r = std::abs(hamiltonian(spec.params, pt) - spec.energy) / e_scale;
        if (!(r <= checks.energy_rel_tol))
            throw TrajectoryError("energy residual " + std::to_string(r) + " above tolerance", pt.t);
        traj.max_energy_residual = std::max(traj.max_energy_residual, r);
    }

    // dx/dt = 2p by central differences of the closed form around each sample
    const double h = checks.velocity_step / std::max(1.0, std::abs(cf.rate));
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.points.size(); ++k) {
        const auto& pt = traj.points[k];
        const PositionSample here{pt.x, traj.branch_log[k]};
        const auto fwd = detail::evaluate_position(cf, pt.t + h, &here, kPoleEps);
        const auto bwd = detail::evaluate_position(cf, pt.t - h, &here, kPoleEps);
        const Complex velocity = (fwd.sample.x - bwd.sample.x) / (2.0 * h);
        const double r = std::abs(velocity - 2.0 * pt.p) / std::max(1.0, std::abs(pt.p));
        if (!(r <= checks.velocity_tol))
            throw TrajectoryError("velocity law dx/dt = 2p violated (" + std::to_string(r) + ")", pt.t);
        worst = std::max(worst, r);
    }
    traj.max_velocity_residual = worst;
    return traj;
}

}  // namespace scarf
