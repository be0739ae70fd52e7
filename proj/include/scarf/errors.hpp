#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace scarf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or an operation outside its domain (E = 0, Hermitian
/// input to a PT-only predicate, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation too close to a pole of sech(alpha0 x / 2).
class PoleError : public Error {
public:
    PoleError(const std::string& what, std::complex<double> x) : Error(what), x_(x) {}
    std::complex<double> where() const noexcept { return x_; }

private:
    std::complex<double> x_;
};

/// The asinh argument of the closed-form position reached a branch point (+/- i).
class BranchPointError : public Error {
public:
    BranchPointError(const std::string& what, std::complex<double> argument)
        : Error(what), argument_(argument) {}
    std::complex<double> argument() const noexcept { return argument_; }

private:
    std::complex<double> argument_;
};

/// A sampled trajectory failed: carries the offending time.
class TrajectoryError : public Error {
public:
    TrajectoryError(const std::string& what, double t) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

}  // namespace scarf
