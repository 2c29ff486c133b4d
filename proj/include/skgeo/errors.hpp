#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skgeo {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text, model file, or matrix file.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    explicit ParseError(const std::string& msg) : Error(msg), position_(0) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Vector/matrix size does not match the frame or model dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Point lies outside the positivity domain (e.g. e^{-K} <= 0, r <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be invertible is singular or too ill-conditioned.
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& msg, double smallest_singular_value)
        : Error(msg), smallest_sv_(smallest_singular_value) {}

    double smallest_singular_value() const noexcept { return smallest_sv_; }

private:
    double smallest_sv_ = 0.0;
};

/// Runtime evaluation failure (division by zero at a point).
class EvalError : public Error {
public:
    EvalError(const std::string& msg, std::string subexpression)
        : Error(msg + ": " + subexpression),
          subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

}  // namespace skgeo
