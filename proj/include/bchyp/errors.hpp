// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bchyp {

// Invalid input: parameter outside its admissible range, malformed argument.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A precondition that is checked numerically failed (e.g. a matrix that was
// supposed to be unitary or a ball contraction produced an inadmissible
// spectrum downstream).
class InvariantViolation : public DomainError {
public:
    explicit InvariantViolation(const std::string& msg) : DomainError(msg) {}
};

// A requested accuracy could not be certified.  best_estimate carries the
// last iterate so callers can still inspect it.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

// Problem size beyond the configured limits (rank cap, orbit materialization,
// tensor-grid dimensionality, rejection acceptance too small).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// No evaluation route can serve the request (e.g. tensor quadrature outside
// its supported (rank, field) set, generic spectral parameters in rank >= 2).
class RouteError : public std::runtime_error {
public:
    explicit RouteError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bchyp
