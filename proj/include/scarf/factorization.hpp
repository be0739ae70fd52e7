#pragma once

// Factorization H = A+ A- + gamma(H) for the scattering sector (E > 0).
//
//   A+- = -+ i f(x) p + i sqrt(E) g(x) - i delta / sqrt(E)
//   f = cosh(alpha0 x / 2),  g = sinh(alpha0 x / 2)
//   gamma(E) = gamma0 + delta^2 / E,  c(E) = sqrt(E - gamma(E))
//   alpha(E) = i alpha0 sqrt(E),  {A+-, H} = +- i alpha(H) A+-
//   Q+- = A+- exp(-+ i alpha(E) t)   (constant along trajectories)

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "scarf/model.hpp"

namespace scarf {

inline Complex ladder_f(const ScarfParams& params, Complex x) {
    return std::cosh(0.5 * params.alpha0 * x);
}

inline Complex ladder_g(const ScarfParams& params, Complex x) {
    return std::sinh(0.5 * params.alpha0 * x);
}

namespace detail {
inline void require_nonzero_energy(Complex energy) {
    if (energy == Complex{0.0, 0.0}) throw DomainError("energy must be nonzero");
}
}  // namespace detail

inline Complex gamma_of_H(const ScarfParams& params, Complex energy) {
    detail::require_nonzero_energy(energy);
    return params.gamma0 + params.coupling * params.coupling / energy;
}

/// Principal square root of E - gamma(E).
inline Complex c_of_E(const ScarfParams& params, Complex energy) {
    return std::sqrt(energy - gamma_of_H(params, energy));
}

/// Structure function alpha(E) = i alpha0 sqrt(E), principal branch.
inline Complex alpha_of_H(const ScarfParams& params, Complex energy) {
    detail::require_nonzero_energy(energy);
    return kI * params.alpha0 * std::sqrt(energy);
}

struct EnergyInterval {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    bool contains(double e) const noexcept { return e > lower && e < upper; }
};

/// Admissible real energies for classical scattering motion, i.e. E > 0 with
/// c(E)^2 > 0.
struct EnergyWindows {
    std::vector<EnergyInterval> intervals;
    bool all_positive = false;

    bool contains(double e) const noexcept {
        return std::any_of(intervals.begin(), intervals.end(),
                           [e](const EnergyInterval& iv) { return iv.contains(e); });
    }
};

inline EnergyWindows energy_windows(const ScarfParams& params) {
    params.validate();
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double g0 = params.gamma0;
    const double d = params.coupling_strength();
    EnergyWindows w;
    if (!params.is_pt()) {
        // E^2 - gamma0 E - delta^2 > 0 has exactly one positive root
        w.intervals.push_back({0.5 * (g0 + std::sqrt(g0 * g0 + 4.0 * d * d)), inf});
        return w;
    }
    // E^2 - gamma0 E + delta_I^2 > 0
    const double disc = g0 * g0 - 4.0 * d * d;
    if (disc < 0.0) {
        w.intervals.push_back({0.0, inf});
        w.all_positive = true;
        return w;
    }
    const double root = std::sqrt(disc);
    const double lo = 0.5 * (g0 - root);
    const double hi = 0.5 * (g0 + root);
    // lo == 0 only for delta_I == 0; disc == 0 leaves a single excluded point
    if (lo > 0.0) w.intervals.push_back({0.0, lo});
    w.intervals.push_back({hi, inf});
    return w;
}

/// Sign freedom left in A+- after the scattering substitution sqrt(-E) -> s i sqrt(E).
/// The resolved convention (both +1) is the one for which A+ A- + gamma(H) = H
/// and {A+-, H} = +- i alpha(H) A+- both hold; see the factorization tests.
struct LadderConvention {
    int sqrt_sign = +1;  ///< sqrt(-E) = sqrt_sign * i sqrt(E)
    int phi_sign = +1;   ///< phi(H) = phi_sign * (-i delta / sqrt(E))
};

inline constexpr LadderConvention kResolvedConvention{};

struct LadderValue {
    Complex a_plus;
    Complex a_minus;
};

/// A+- at a phase point for an explicitly supplied energy (off-shell evaluation
/// is allowed; on-shell callers pass E = hamiltonian(point)).
inline LadderValue ladder_values(const ScarfParams& params, const PhasePoint& point,
                                 Complex energy,
                                 LadderConvention conv = kResolvedConvention) {
    detail::require_nonzero_energy(energy);
    const Complex root_e = std::sqrt(energy);
    const Complex fp = ladder_f(params, point.x) * point.p;
    const Complex common = static_cast<double>(conv.sqrt_sign) * kI * root_e *
                               ladder_g(params, point.x) +
                           static_cast<double>(conv.phi_sign) * (-kI * params.coupling / root_e);
    return {-kI * fp + common, kI * fp + common};
}

/// Values of the time-dependent integrals of motion Q+- at time t.
inline std::pair<Complex, Complex> q_values(const ScarfParams& params, const PhasePoint& point,
                                            Complex energy, double t,
                                            LadderConvention conv = kResolvedConvention) {
    const LadderValue a = ladder_values(params, point, energy, conv);
    const Complex phase = -kI * alpha_of_H(params, energy) * t;
    return {a.a_plus * std::exp(phase), a.a_minus * std::exp(-phase)};
}

/// Finite-difference step for poisson_bracket: h = relative * max(1, |coordinate|).
struct BracketStep {
    double relative = 1e-6;
};

/// {F, G} = dF/dx dG/dp - dF/dp dG/dx with central differences along real
/// steps in each complex coordinate. F and G are callables (Complex x,
/// Complex p) -> Complex, holomorphic near the point.
template <class F, class G>
Complex poisson_bracket(F&& f, G&& g, const PhasePoint& point, BracketStep step = {}) {
    const double hx = step.relative * std::max(1.0, std::abs(point.x));
    const double hp = step.relative * std::max(1.0, std::abs(point.p));
    const Complex x = point.x;
    const Complex p = point.p;
    const Complex fx = (f(x + hx, p) - f(x - hx, p)) / (2.0 * hx);
    const Complex fp = (f(x, p + hp) - f(x, p - hp)) / (2.0 * hp);
    const Complex gx = (g(x + hx, p) - g(x - hx, p)) / (2.0 * hx);
    const Complex gp = (g(x, p + hp) - g(x, p - hp)) / (2.0 * hp);
    return fx * gp - fp * gx;
}

// Phase-space functions for the bracket checker. The ladder functions are
// taken on shell, E = H(x, p).

inline auto hamiltonian_function(const ScarfParams& params) {
    return [params](Complex x, Complex p) { return hamiltonian(params, {x, p}); };
}

inline auto ladder_plus_function(const ScarfParams& params,
                                 LadderConvention conv = kResolvedConvention) {
    return [params, conv](Complex x, Complex p) {
        const PhasePoint pt{x, p};
        return ladder_values(params, pt, hamiltonian(params, pt), conv).a_plus;
    };
}

inline auto ladder_minus_function(const ScarfParams& params,
                                  LadderConvention conv = kResolvedConvention) {
    return [params, conv](Complex x, Complex p) {
        const PhasePoint pt{x, p};
        return ladder_values(params, pt, hamiltonian(params, pt), conv).a_minus;
    };
}

/// On-shell coefficient k(H) in {A+, A-} = k(H) A0 with A0 = -i sqrt(H).
/// From A+ A- = H - gamma(H): {A+, A-} = i alpha(H) (1 - gamma'(H))
/// = -i alpha0 A0 (1 + delta^2 / H^2).
inline Complex ladder_bracket_coefficient(const ScarfParams& params, Complex energy) {
    detail::require_nonzero_energy(energy);
    return -kI * params.alpha0 *
           (1.0 + params.coupling * params.coupling / (energy * energy));
}

}  // namespace scarf
