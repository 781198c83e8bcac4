#pragma once

#include <stdexcept>
#include <string>

namespace rislab {

/// Input outside an operation's domain (bad index, negative argument, size mismatch).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request the library refuses by policy, e.g. passive beamforming on a MIMO link.
class UnsupportedConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument sits on a pole of a meromorphic function.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An integration plan that cannot be honoured (contour through a pole, coincident pole families).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical method did not reach its tolerance. Carries the best value it had.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double partial, double error_estimate)
        : std::runtime_error(what), partial_(partial), error_estimate_(error_estimate) {}

    double partial() const noexcept { return partial_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_;
    double error_estimate_;
};

/// Every point of an estimator failed its validity guard.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rislab
