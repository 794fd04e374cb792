#pragma once

#include <stdexcept>
#include <string>

namespace dri {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that violates a documented precondition (r <= 0, e >= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Geometry for which a requested quantity is undefined.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

// Orbit is unbound or intersects the reference sphere.
class ImpactError : public Error {
public:
    using Error::Error;
};

// Iterative procedure failed to converge or the step size collapsed.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace dri
