#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affsurf {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Expression text could not be parsed. Offsets are 1-based byte positions;
// end-of-input is reported as length + 1.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation left a function's domain (log of a non-positive value, division
// by zero, ...). Offset identifies the offending node when known (0 otherwise).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message, std::size_t offset = 0)
        : Error(offset ? message + " at offset " + std::to_string(offset) : message),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// A geometric precondition failed: degenerate tangent plane, singular frame,
// non-unimodular gauge, inconsistent coefficient reads.
class GeometryError : public Error {
public:
    using Error::Error;
};

// ODE state became non-finite during integration.
class DivergenceError : public Error {
public:
    explicit DivergenceError(double v)
        : Error("integration diverged (non-finite state) near v = " + std::to_string(v)),
          v_(v) {}
    double where() const noexcept { return v_; }

private:
    double v_;
};

// Malformed input file (bad JSON, wrong schema, inconsistent shapes).
class FormatError : public Error {
public:
    using Error::Error;
};

// Invalid argument to a library call.
class ArgumentError : public Error {
public:
    using Error::Error;
};

} // namespace affsurf
