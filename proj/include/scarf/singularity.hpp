#pragma once

// Spectral singularity: the quantum predicates, and the classical detector
// that scans energy for a divergence of Re p at the barrier centre.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "scarf/closed_form.hpp"

namespace scarf {

namespace detail {
inline void require_pt(const ScarfParams& params, const char* what) {
    params.validate();
    if (!params.is_pt())
        throw DomainError(std::string(what) + " is defined only for the PT-symmetric variant");
}
}  // namespace detail

struct QuantumSsEnergy {
    double value;
    bool physical;  ///< value > 0
};

/// E_s = (|2 delta_I| - (gamma0 + 1/4)) / 4
inline QuantumSsEnergy quantum_ss_energy(const ScarfParams& params) {
    detail::require_pt(params, "quantum spectral-singularity energy");
    const double d = params.coupling_strength();
    const double e = 0.25 * (std::abs(2.0 * d) - (params.gamma0 + 0.25));
    return {e, e > 0.0};
}

struct QuantumSsCondition {
    bool inequality_holds;
    std::optional<int> quantized_n;
};

/// |2 delta_I| > gamma0 + sign(delta_I)/4, and gamma0 + |2 delta_I| = 4n^2 + 4n + 3/4
/// for some n in [0, n_max] (matched to 1e-9).
inline QuantumSsCondition quantum_ss_condition(const ScarfParams& params, int n_max) {
    detail::require_pt(params, "quantum spectral-singularity condition");
    if (n_max < 0) throw DomainError("n_max must be non-negative");
    const double d = params.coupling_strength();
    const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    QuantumSsCondition out{std::abs(2.0 * d) > params.gamma0 + 0.25 * sign, std::nullopt};
    const double lhs = params.gamma0 + std::abs(2.0 * d);
    for (int n = 0; n <= n_max; ++n) {
        const double rhs = 4.0 * n * n + 4.0 * n + 0.75;
        if (std::abs(lhs - rhs) <= 1e-9) {
            out.quantized_n = n;
            break;
        }
    }
    return out;
}

/// |2 delta_I| > gamma0 (strict).
inline bool classical_ss_condition(const ScarfParams& params) {
    detail::require_pt(params, "classical spectral-singularity condition");
    return std::abs(2.0 * params.coupling_strength()) > params.gamma0;
}

/// Scan statistic at one energy: Re p at the sample nearest Re x = 0.
struct BarrierMomentum {
    double re_p = 0.0;
    bool divergent = false;
};

struct ScanOptions {
    double t_start = -1.0;
    double t_end = 1.0;
    std::size_t samples = 2001;
    bool refine = true;
    double resolution = 1e-2;
};

struct SingularityScan {
    std::vector<double> energies;
    std::vector<BarrierMomentum> barrier_momentum;
    std::size_t peak_index = 0;
    double peak_energy = 0.0;
    BarrierMomentum peak_value;
    /// Golden-section refinement between the grid neighbours of the peak.
    std::optional<double> refined_peak_energy;
    std::optional<BarrierMomentum> refined_peak_value;

    /// Refined location when available, grid location otherwise.
    double best_peak_energy() const { return refined_peak_energy.value_or(peak_energy); }
};

/// Evaluates the barrier statistic for real energy e. Branch points and
/// vanishing cosh(alpha0 x / 2) on the sample grid are reported as divergence.
inline BarrierMomentum barrier_momentum(const ScarfParams& params, double energy, Complex theta0,
                                        const ScanOptions& options = {}) {
    TrajectorySpec spec;
    spec.params = params;
    spec.energy = Complex{energy, 0.0};
    spec.theta0 = theta0;
    spec.t_start = options.t_start;
    spec.t_end = options.t_end;
    spec.samples = options.samples;
    spec.allow_outside_windows = true;
    spec.validate();

    const detail::ClosedForm cf(spec);
    PositionSample prev;
    double best_abs_re_x = std::numeric_limits<double>::infinity();
    BarrierMomentum best;
    for (std::size_t k = 0; k < spec.samples; ++k) {
        const double t = spec.time_at(k);
        const auto ev = detail::evaluate_position(cf, t, k == 0 ? nullptr : &prev, kPoleEps);
        prev = ev.sample;
        const double abs_re_x = std::abs(ev.sample.x.real());
        if (!(abs_re_x < best_abs_re_x)) continue;
        best_abs_re_x = abs_re_x;
        if (ev.at_branch_point) {
            best = {0.0, true};
            continue;
        }
        const Momentum p = detail::evaluate_momentum(cf, t, ev.sample.x, kPoleEps);
        best = p.divergent ? BarrierMomentum{0.0, true} : BarrierMomentum{p.value.real(), false};
    }
    return best;
}

namespace detail {
inline double scan_key(const BarrierMomentum& m) {
    return m.divergent ? std::numeric_limits<double>::infinity() : m.re_p;
}
}  // namespace detail

inline SingularityScan scan_classical_ss(const ScarfParams& params, const std::vector<double>& e_grid,
                                         Complex theta0, const ScanOptions& options = {}) {
    params.validate();
    if (e_grid.empty()) throw DomainError("energy grid is empty");
    for (std::size_t i = 0; i < e_grid.size(); ++i) {
        if (!(e_grid[i] > 0.0)) throw DomainError("scan energies must be positive");
        if (i > 0 && !(e_grid[i] > e_grid[i - 1]))
            throw DomainError("scan energies must be strictly increasing");
    }

    SingularityScan scan;
    scan.energies = e_grid;
    scan.barrier_momentum.reserve(e_grid.size());
    for (double e : e_grid) scan.barrier_momentum.push_back(barrier_momentum(params, e, theta0, options));

    // first maximum wins; divergence counts as +inf
    for (std::size_t i = 1; i < e_grid.size(); ++i)
        if (detail::scan_key(scan.barrier_momentum[i]) >
            detail::scan_key(scan.barrier_momentum[scan.peak_index]))
            scan.peak_index = i;
    scan.peak_energy = e_grid[scan.peak_index];
    scan.peak_value = scan.barrier_momentum[scan.peak_index];

    if (!options.refine || scan.peak_value.divergent || e_grid.size() < 2) return scan;

    // golden-section maximisation between the neighbours of the grid peak
    const std::size_t i = scan.peak_index;
    double a = e_grid[i == 0 ? 0 : i - 1];
    double b = e_grid[std::min(i + 1, e_grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double e) { return barrier_momentum(params, e, theta0, options); };

    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    BarrierMomentum f1 = eval(x1);
    BarrierMomentum f2 = eval(x2);
    double best_e = scan.peak_energy;
    BarrierMomentum best_v = scan.peak_value;
    auto consider = [&](double e, const BarrierMomentum& v) {
        if (detail::scan_key(v) > detail::scan_key(best_v)) {
            best_e = e;
            best_v = v;
        }
    };
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > options.resolution && !best_v.divergent) {
        if (detail::scan_key(f1) >= detail::scan_key(f2)) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1);
            consider(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2);
            consider(x2, f2);
        }
    }
    scan.refined_peak_energy = best_e;
    scan.refined_peak_value = best_v;
    return scan;
}

/// True when some interior local maximum of the (finite) statistic exceeds
/// factor times the median; divergent entries always count as a peak.
inline bool has_interior_peak(const SingularityScan& scan, double factor = 3.0) {
    const auto& m = scan.barrier_momentum;
    if (m.size() < 3) return false;
    std::vector<double> finite;
    for (const auto& v : m)
        if (!v.divergent) finite.push_back(v.re_p);
    if (finite.size() != m.size()) return true;
    std::vector<double> sorted = finite;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (std::size_t i = 1; i + 1 < m.size(); ++i)
        if (m[i].re_p > m[i - 1].re_p && m[i].re_p >= m[i + 1].re_p &&
            m[i].re_p > factor * std::abs(median))
            return true;
    return false;
}

/// Uniform grid lo, lo + step, ... up to hi (inclusive within step/2).
inline std::vector<double> energy_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw DomainError("invalid energy grid");
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
        const double e = lo + static_cast<double>(k) * step;
        if (e > hi + 0.5 * step) break;
        out.push_back(e);
    }
    return out;
}

}  // namespace scarf
