#pragma once

#include <stdexcept>
#include <string>

namespace wpnet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Tangent construction or viewpoint placement is impossible.
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& msg) : Error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A numerical routine failed to reach its requested accuracy.
class NumericError : public Error {
public:
    NumericError(const std::string& msg, double achieved_rel_error)
        : Error(msg), achieved_rel_error(achieved_rel_error) {}

    double achieved_rel_error;
};

/// Configuration or input data violates a model invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Filesystem / output failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace wpnet
