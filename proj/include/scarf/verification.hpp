#pragma once

// Invariant suite shared by `scarf verify` and the test binaries: the
// factorization identity, the deformed Poisson algebra, conservation of Q+-,
// closed form vs. ODE oracle, and energy-window consistency.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "scarf/closed_form.hpp"
#include "scarf/factorization.hpp"
#include "scarf/ode_oracle.hpp"

namespace scarf {

/// Uniform doubles from a 64-bit Mersenne twister, bit-identical across
/// standard libraries (std::uniform_real_distribution is not).
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : rng_(seed) {}

    double operator()(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

private:
    std::mt19937_64 rng_;
};

/// Parameter sets used throughout the checks.
inline std::vector<ScarfParams> reference_parameter_sets() {
    return {
        ScarfParams::hermitian(2.0, 6.0, 2.0),
        ScarfParams::hermitian(1.0, 4.0, -1.5),
        ScarfParams::pt_symmetric(2.0, 6.0, 2.0),
        ScarfParams::pt_symmetric(2.0, 3.0, 2.0),
        ScarfParams::pt_symmetric(2.0, 4.0, 12.0),
    };
}

/// Smallest |cosh(alpha0 x / 2)| along a trajectory.
inline double min_barrier_denominator(const Trajectory& traj) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& pt : traj.points)
        m = std::min(m, std::abs(std::cosh(0.5 * traj.spec.params.alpha0 * pt.x)));
    return m;
}

/// Random admissible trajectory specs on [t_start, t_end]: Hermitian, PT with
/// real energy in either window, and PT with complex energy. Candidates whose
/// closed form passes within 0.05 of a pole or branch point of the window are
/// redrawn.
inline std::vector<TrajectorySpec> random_admissible_cases(UniformSource& rng, std::size_t count,
                                                           double t_start, double t_end) {
    std::vector<TrajectorySpec> out;
    std::size_t attempt = 0;
    while (out.size() < count) {
        TrajectorySpec spec;
        spec.t_start = t_start;
        spec.t_end = t_end;
        spec.samples = static_cast<std::size_t>(std::ceil((t_end - t_start) * 1000.0)) + 1;
        spec.theta0 = Complex{rng(-1.0, 1.0), rng(-0.3, 0.3)};
        switch ((attempt++) % 4) {
            case 0: {
                spec.params = ScarfParams::hermitian(2.0, 6.0, 2.0);
                const double lo = energy_windows(spec.params).intervals.front().lower;
                spec.energy = rng(lo + 0.2, 20.0);
                spec.theta0 = Complex{spec.theta0.real(), 0.0};
                break;
            }
            case 1:
                spec.params = ScarfParams::pt_symmetric(2.0, 6.0, 2.0);
                spec.energy = rng(5.5, 20.0);
                break;
            case 2:
                spec.params = ScarfParams::pt_symmetric(2.0, 6.0, 2.0);
                spec.energy = rng(0.1, 0.7);
                break;
            default:
                spec.params = ScarfParams::pt_symmetric(2.0, 3.0, 2.0);
                spec.energy = Complex{rng(1.0, 15.0), rng(-1.0, 1.0)};
                break;
        }
        try {
            const Trajectory traj = sample_trajectory(spec);
            if (min_barrier_denominator(traj) < 0.05) continue;
        } catch (const Error&) {
            continue;
        }
        out.push_back(spec);
    }
    return out;
}

struct CheckResult {
    std::string group;
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct VerifyOptions {
    /// Substring matched against "group.name"; empty runs everything.
    std::string filter;
    /// Convention handed to every ladder evaluation (mutation tests inject a wrong one).
    LadderConvention convention = kResolvedConvention;
    std::uint64_t seed = 20111104;
};

namespace detail {

inline PhasePoint random_phase_point(UniformSource& rng) {
    return {Complex{rng(-3.0, 3.0), rng(-0.6, 0.6)}, Complex{rng(-4.0, 4.0), rng(-1.0, 1.0)}};
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = (k + 1 == n) ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    return out;
}

}  // namespace detail

/// max relative residual of A+ A- + gamma(H) - H over random phase points.
inline double factorization_identity_residual(const ScarfParams& params, std::size_t points,
                                              UniformSource& rng,
                                              LadderConvention conv = kResolvedConvention) {
    double worst = 0.0;
    std::size_t done = 0;
    while (done < points) {
        const PhasePoint pt = detail::random_phase_point(rng);
        const Complex e = hamiltonian(params, pt);
        if (std::abs(e) < 0.1) continue;
        const LadderValue a = ladder_values(params, pt, e, conv);
        const double r = std::abs(a.a_plus * a.a_minus + gamma_of_H(params, e) - e) / std::abs(e);
        worst = std::max(worst, r);
        ++done;
    }
    return worst;
}

/// On-shell points drawn from closed-form trajectories at random times, kept
/// within |Re(theta0 + alpha0 sqrt(E) t)| <= 3 of the barrier passage. Further
/// out A+- are differences of terms of size exp(|Re phase|) and finite
/// differences of them lose digits accordingly.
inline std::vector<PhasePoint> random_on_shell_points(const ScarfParams& params, std::size_t count,
                                                      UniformSource& rng) {
    std::vector<PhasePoint> out;
    const EnergyWindows w = energy_windows(params);
    while (out.size() < count) {
        TrajectorySpec spec;
        spec.params = params;
        const auto& iv = w.intervals[rng.index(w.intervals.size())];
        const double lo = iv.lower + 0.1;
        const double hi = std::isinf(iv.upper) ? lo + 15.0 : iv.upper - 0.05;
        if (!(hi > lo)) continue;
        spec.energy = rng(lo, hi);
        spec.theta0 = Complex{rng(-1.0, 1.0), params.is_pt() ? rng(-0.3, 0.3) : 0.0};
        try {
            const double t = rng(-1.0, 1.0);
            const Complex phase = spec.theta0 + params.alpha0 * std::sqrt(spec.energy) * t;
            if (std::abs(phase.real()) > 3.0) continue;
            const PositionSample xs = position_at(spec, t);
            const Momentum p = momentum_at(spec, t, xs.x);
            if (p.divergent || std::abs(std::cosh(0.5 * params.alpha0 * xs.x)) < 0.05) continue;
            out.push_back({xs.x, p.value, t});
        } catch (const Error&) {
        }
    }
    return out;
}

/// max relative residual of {A+-, H} -+ i alpha(H) A+- at on-shell points.
inline double ladder_hamiltonian_bracket_residual(const ScarfParams& params,
                                                  const std::vector<PhasePoint>& points,
                                                  LadderConvention conv = kResolvedConvention) {
    const auto h = hamiltonian_function(params);
    const auto ap = ladder_plus_function(params, conv);
    const auto am = ladder_minus_function(params, conv);
    double worst = 0.0;
    for (const auto& pt : points) {
        const Complex e = hamiltonian(params, pt);
        const Complex alpha = alpha_of_H(params, e);
        const LadderValue a = ladder_values(params, pt, e, conv);
        const Complex want_p = kI * alpha * a.a_plus;
        const Complex want_m = -kI * alpha * a.a_minus;
        worst = std::max(worst, std::abs(poisson_bracket(ap, h, pt) - want_p) / std::max(1.0, std::abs(want_p)));
        worst = std::max(worst, std::abs(poisson_bracket(am, h, pt) - want_m) / std::max(1.0, std::abs(want_m)));
    }
    return worst;
}

/// max relative residual of {A+, A-} - k(H) A0, A0 = -i sqrt(H).
inline double ladder_pair_bracket_residual(const ScarfParams& params,
                                           const std::vector<PhasePoint>& points,
                                           LadderConvention conv = kResolvedConvention) {
    const auto ap = ladder_plus_function(params, conv);
    const auto am = ladder_minus_function(params, conv);
    double worst = 0.0;
    for (const auto& pt : points) {
        const Complex e = hamiltonian(params, pt);
        const Complex want = ladder_bracket_coefficient(params, e) * (-kI * std::sqrt(e));
        worst = std::max(worst, std::abs(poisson_bracket(ap, am, pt) - want) / std::max(1.0, std::abs(want)));
    }
    return worst;
}

/// Relative drift of |Q-| integrating forward over [0, span] and of |Q+|
/// integrating backward over [-span, 0], starting from the closed-form state
/// at t = 0. Each integral is followed in the direction where its ladder
/// function grows; the other direction loses digits like exp(2 Re(alpha0 sqrt(E)) t).
inline double q_drift(const TrajectorySpec& spec, double span, const IntegratorConfig& config = {},
                      LadderConvention conv = kResolvedConvention) {
    const PositionSample x0 = position_at(spec, 0.0);
    const Momentum p0 = momentum_at(spec, 0.0, x0.x);
    const PhasePoint start{x0.x, p0.value, 0.0};
    const auto [q_plus0, q_minus0] = q_values(spec.params, start, spec.energy, 0.0, conv);

    double worst = 0.0;
    const auto forward = integrate(spec.params, start, span, config, detail::linspace(0.0, span, 51));
    for (const auto& pt : forward.samples) {
        const auto q = q_values(spec.params, pt, spec.energy, pt.t, conv);
        worst = std::max(worst, std::abs(std::abs(q.second) - std::abs(q_minus0)) / std::abs(q_minus0));
    }
    const auto backward = integrate(spec.params, start, -span, config, detail::linspace(0.0, -span, 51));
    for (const auto& pt : backward.samples) {
        const auto q = q_values(spec.params, pt, spec.energy, pt.t, conv);
        worst = std::max(worst, std::abs(std::abs(q.first) - std::abs(q_plus0)) / std::abs(q_plus0));
    }
    return worst;
}

struct OracleComparison {
    double max_position_error = 0.0;
    double max_momentum_error = 0.0;
    double max_energy_drift = 0.0;  ///< |H - E| / max(1, |E|) along the ODE solution
};

/// Closed form vs. ODE oracle started from the closed-form state at spec.t_start.
inline OracleComparison compare_with_oracle(const TrajectorySpec& spec, const IntegratorConfig& config = {}) {
    const Trajectory traj = sample_trajectory(spec);
    std::vector<double> times;
    times.reserve(traj.points.size());
    for (const auto& pt : traj.points) times.push_back(pt.t);
    const auto sol = integrate(spec.params, traj.points.front(), spec.t_end, config, times);
    OracleComparison out;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto& cf = traj.points[k];
        const auto& ode = sol.samples[k];
        out.max_position_error = std::max(out.max_position_error, std::abs(cf.x - ode.x));
        out.max_momentum_error = std::max(out.max_momentum_error, std::abs(cf.p - ode.p));
        out.max_energy_drift = std::max(out.max_energy_drift, std::abs(hamiltonian(spec.params, ode) - spec.energy) /
                                                                  std::max(1.0, std::abs(spec.energy)));
    }
    return out;
}

/// Counts energies whose window membership disagrees with the sign of c(E)^2.
inline std::size_t window_mismatches(const ScarfParams& params, std::size_t samples, UniformSource& rng) {
    const EnergyWindows w = energy_windows(params);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double e = rng(1e-3, 40.0);
        const Complex c2 = e - gamma_of_H(params, e);
        if (std::abs(c2.real()) < 1e-9) continue;  // boundary
        if (w.contains(e) != (c2.real() > 0.0)) ++bad;
    }
    return bad;
}

inline std::vector<CheckResult> run_verification(const VerifyOptions& options = {}) {
    std::vector<CheckResult> results;
    UniformSource rng(options.seed);
    const auto conv = options.convention;

    auto selected = [&](const std::string& group, const std::string& name) {
        return options.filter.empty() || (group + "." + name).find(options.filter) != std::string::npos;
    };
    auto record = [&](std::string group, std::string name, double residual, double tol) {
        const bool ok = std::isfinite(residual) && residual < tol;
        results.push_back({std::move(group), std::move(name), ok, residual, tol});
    };
    // Computation errors become failed checks rather than aborting the suite.
    auto guarded = [&](const std::string& group, const std::string& name, double tol,
                       const std::function<double()>& body) {
        if (!selected(group, name)) return;
        double r = std::numeric_limits<double>::infinity();
        try {
            r = body();
        } catch (const Error&) {
        }
        record(group, name, r, tol);
    };

    const auto param_sets = reference_parameter_sets();
    auto label = [](const ScarfParams& p) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s(a0=%g,g0=%g,d=%g)", to_string(p.variant), p.alpha0, p.gamma0,
                      p.coupling_strength());
        return std::string(buf);
    };

    for (const auto& params : param_sets) {
        guarded("windows", "consistency." + label(params), 0.5,
                [&] { return static_cast<double>(window_mismatches(params, 200, rng)); });
    }

    for (const auto& params : param_sets) {
        guarded("factorization", "identity." + label(params), 1e-10,
                [&] { return factorization_identity_residual(params, 1000, rng, conv); });
    }
    guarded("factorization", "on_shell_modulus", 1e-10, [&] {
        const auto params = ScarfParams::hermitian(2.0, 6.0, 2.0);
        const double lo = energy_windows(params).intervals.front().lower;
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            TrajectorySpec spec;
            spec.params = params;
            spec.energy = lo + 0.05 + 0.75 * i;
            spec.theta0 = rng(-0.5, 0.5);
            const double t = rng(-0.25, 0.25);
            const auto xs = position_at(spec, t);
            const PhasePoint pt{xs.x, momentum_at(spec, t, xs.x).value, t};
            const auto a = ladder_values(params, pt, spec.energy, conv);
            const double c2 = std::norm(c_of_E(params, spec.energy));
            worst = std::max(worst, std::abs(std::abs(a.a_plus * a.a_minus) - c2) / c2);
        }
        return worst;
    });
    guarded("factorization", "initial_q_values", 1e-10, [&] {
        // q+- = -+ i c exp(-+ theta0) at t = 0
        double worst = 0.0;
        for (const auto& params : param_sets) {
            for (int i = 0; i < 10; ++i) {
                TrajectorySpec spec;
                spec.params = params;
                const auto pts = random_on_shell_points(params, 1, rng);
                spec.energy = hamiltonian(params, pts.front());
                spec.theta0 = Complex{rng(-1.0, 1.0), params.is_pt() ? rng(-0.3, 0.3) : 0.0};
                const auto xs = position_at(spec, 0.0);
                const PhasePoint pt{xs.x, momentum_at(spec, 0.0, xs.x).value, 0.0};
                const auto [qp, qm] = q_values(params, pt, spec.energy, 0.0, conv);
                const Complex c = c_of_E(params, spec.energy);
                const Complex want_p = -kI * c * std::exp(-spec.theta0);
                const Complex want_m = kI * c * std::exp(spec.theta0);
                worst = std::max({worst, std::abs(qp - want_p) / std::abs(want_p),
                                  std::abs(qm - want_m) / std::abs(want_m)});
            }
        }
        return worst;
    });

    guarded("poisson", "canonical", 1e-8, [&] {
        const auto fx = [](Complex x, Complex) { return x; };
        const auto fp = [](Complex, Complex p) { return p; };
        double worst = 0.0;
        for (int i = 0; i < 20; ++i)
            worst = std::max(worst, std::abs(poisson_bracket(fx, fp, detail::random_phase_point(rng)) - 1.0));
        return worst;
    });
    for (const auto& params : param_sets) {
        if (!selected("poisson", "ladder_hamiltonian." + label(params)) &&
            !selected("poisson", "ladder_pair." + label(params)))
            continue;
        const auto pts = random_on_shell_points(params, 100, rng);
        guarded("poisson", "ladder_hamiltonian." + label(params), 1e-5,
                [&] { return ladder_hamiltonian_bracket_residual(params, pts, conv); });
        guarded("poisson", "ladder_pair." + label(params), 1e-4,
                [&] { return ladder_pair_bracket_residual(params, pts, conv); });
    }

    if (selected("motion", "q_drift") || selected("oracle", "closed_form") ||
        selected("oracle", "energy_drift")) {
        const auto motion_cases = random_admissible_cases(rng, 8, -5.0, 5.0);
        guarded("motion", "q_drift", 1e-6, [&] {
            double worst = 0.0;
            for (const auto& spec : motion_cases) worst = std::max(worst, q_drift(spec, 5.0, {}, conv));
            return worst;
        });
        const auto oracle_cases = random_admissible_cases(rng, 10, 0.0, 3.0);
        OracleComparison total;
        bool oracle_ok = true;
        try {
            for (const auto& spec : oracle_cases) {
                const auto cmp = compare_with_oracle(spec);
                total.max_position_error = std::max(total.max_position_error, cmp.max_position_error);
                total.max_energy_drift = std::max(total.max_energy_drift, cmp.max_energy_drift);
            }
        } catch (const Error&) {
            oracle_ok = false;
        }
        const double inf = std::numeric_limits<double>::infinity();
        if (selected("oracle", "closed_form"))
            record("oracle", "closed_form", oracle_ok ? total.max_position_error : inf, 1e-6);
        if (selected("oracle", "energy_drift"))
            record("oracle", "energy_drift", oracle_ok ? total.max_energy_drift : inf, 1e-8);
    }
    return results;
}

}  // namespace scarf
