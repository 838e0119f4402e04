#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// argument outside the domain of a formula (v <= b, bad order, ...)
class DomainError : public Error {
public:
    using Error::Error;
};

class SupercriticalError : public Error {
public:
    using Error::Error;
};

// pressure level outside the three-root band (sigma_lo, sigma_hi)
class OutOfBandError : public Error {
public:
    using Error::Error;
};

class InadmissiblePairError : public Error {
public:
    InadmissiblePairError(const std::string& what, std::string failed)
        : Error(what), failed_(std::move(failed)) {}
    const std::string& failed_condition() const { return failed_; }

private:
    std::string failed_;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class OffsetError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual = 0.0)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class NoSolutionError : public Error {
public:
    NoSolutionError(const std::string& what, double residual, double eps_star)
        : Error(what), residual_(residual), eps_star_(eps_star) {}
    double residual() const { return residual_; }
    double eps_star() const { return eps_star_; }

private:
    double residual_;
    double eps_star_;
};

class MeanViolationError : public Error {
public:
    using Error::Error;
};

class CrossCheckError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

} // namespace vdw
