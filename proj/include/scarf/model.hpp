#pragma once

// Scarf II potential family and the complex phase-space Hamiltonian
//
//   V(x) = gamma0 sech^2(alpha0 x / 2) + 2 delta sech(alpha0 x / 2) tanh(alpha0 x / 2)
//   H(x, p) = p^2 + V(x)                          (units hbar = 2m = 1)
//
// delta is real for the Hermitian variant and purely imaginary (i delta_I)
// for the PT-symmetric one.

#include <cmath>
#include <complex>
#include <string>

#include "scarf/errors.hpp"

namespace scarf {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Default guard on |cosh(alpha0 x / 2)| below which V is treated as a pole.
inline constexpr double kPoleEps = 1e-12;

enum class Variant { Hermitian, PTSymmetric };

inline const char* to_string(Variant v) {
    return v == Variant::Hermitian ? "hermitian" : "pt";
}

struct ScarfParams {
    double alpha0 = 2.0;
    double gamma0 = 6.0;
    Complex coupling{2.0, 0.0};
    Variant variant = Variant::Hermitian;

    static ScarfParams hermitian(double alpha0, double gamma0, double delta) {
        ScarfParams p{alpha0, gamma0, Complex{delta, 0.0}, Variant::Hermitian};
        p.validate();
        return p;
    }

    /// PT-symmetric variant with coupling delta = i * delta_imag.
    static ScarfParams pt_symmetric(double alpha0, double gamma0, double delta_imag) {
        ScarfParams p{alpha0, gamma0, Complex{0.0, delta_imag}, Variant::PTSymmetric};
        p.validate();
        return p;
    }

    bool is_pt() const noexcept { return variant == Variant::PTSymmetric; }

    /// delta for Hermitian, delta_I for PT.
    double coupling_strength() const noexcept {
        return is_pt() ? coupling.imag() : coupling.real();
    }

    void validate() const {
        if (!(alpha0 > 0.0) || !std::isfinite(alpha0))
            throw DomainError("alpha0 must be a positive finite number");
        if (!(gamma0 > 0.0) || !std::isfinite(gamma0))
            throw DomainError("gamma0 must be a positive finite number");
        if (!std::isfinite(coupling.real()) || !std::isfinite(coupling.imag()))
            throw DomainError("coupling must be finite");
        if (variant == Variant::Hermitian && coupling.imag() != 0.0)
            throw DomainError("Hermitian variant requires a real coupling");
        if (variant == Variant::PTSymmetric && coupling.real() != 0.0)
            throw DomainError("PT-symmetric variant requires a purely imaginary coupling");
    }
};

struct PhasePoint {
    Complex x;
    Complex p;
    double t = 0.0;
};

namespace detail {

struct SechTanh {
    Complex sech;
    Complex tanh;
};

// sech and tanh from exp(-|z|)-style forms, so no intermediate overflows for
// large |Re z|; far out exp(-z) underflows and the values go to 0 and +/-1.
inline SechTanh sech_tanh(Complex z, double pole_eps) {
    const bool flip = z.real() < 0.0;
    const Complex w = flip ? -z : z;
    const Complex e = std::exp(-w);
    const Complex e2 = e * e;
    const Complex denom = 1.0 + e2;
    // |cosh w| = |1 + e^{-2w}| / (2 |e^{-w}|)
    if (std::abs(denom) <= 2.0 * pole_eps * std::abs(e))
        throw PoleError("potential evaluated at a pole of sech", z);
    SechTanh out{2.0 * e / denom, (1.0 - e2) / denom};
    if (flip) out.tanh = -out.tanh;
    return out;
}

}  // namespace detail

inline Complex potential(const ScarfParams& params, Complex x, double pole_eps = kPoleEps) {
    const auto [s, t] = detail::sech_tanh(0.5 * params.alpha0 * x, pole_eps);
    return params.gamma0 * s * s + 2.0 * params.coupling * s * t;
}

/// Analytic dV/dx.
inline Complex potential_derivative(const ScarfParams& params, Complex x,
                                    double pole_eps = kPoleEps) {
    const auto [s, t] = detail::sech_tanh(0.5 * params.alpha0 * x, pole_eps);
    // d sech = -sech tanh, d tanh = sech^2, chain factor alpha0 / 2
    return params.alpha0 * (-params.gamma0 * s * s * t + params.coupling * s * (s * s - t * t));
}

inline Complex hamiltonian(const ScarfParams& params, const PhasePoint& point,
                           double pole_eps = kPoleEps) {
    return point.p * point.p + potential(params, point.x, pole_eps);
}

}  // namespace scarf
