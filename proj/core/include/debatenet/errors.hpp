#pragma once

#include <stdexcept>
#include <string>

namespace debatenet {

/// Solver failed to reach the requested tolerance.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double residual, long iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    long iterations() const noexcept { return iterations_; }

private:
    double residual_;
    long iterations_;
};

/// A file could not be opened or read.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates the declared file format.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace debatenet
