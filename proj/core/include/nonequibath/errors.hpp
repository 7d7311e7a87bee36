#ifndef NONEQUIBATH_ERRORS_HPP
#define NONEQUIBATH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nonequibath {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration input: unreadable files, malformed JSON, tables that
/// do not describe a usable model.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Structural defect of the physical model (as opposed to bad numbers).
class ModelError : public Error {
public:
    using Error::Error;
};

/// A numerical routine was asked to run outside its guards, or failed to
/// meet its accuracy contract.
class NumericsError : public Error {
public:
    using Error::Error;
};

/// Scalar argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two coupled transitions share a Bohr frequency within tolerance, so the
/// per-line rate construction does not apply.
class DegenerateBohrFrequency : public ModelError {
public:
    DegenerateBohrFrequency(std::size_t lower_a, std::size_t upper_a, double omega_a,
                            std::size_t lower_b, std::size_t upper_b, double omega_b);

    std::size_t lower_a, upper_a;
    std::size_t lower_b, upper_b;
    double omega_a, omega_b;
};

/// The level graph induced by nonzero rates is disconnected; the stationary
/// state is not unique.
class ReducibleGenerator : public ModelError {
public:
    explicit ReducibleGenerator(std::size_t components);
    std::size_t components;
};

/// Fewer couplings than needed to connect all three levels.
class DisconnectedSystem : public ModelError {
public:
    using ModelError::ModelError;
};

/// The field table has no entry at a Bohr frequency of the system.
class MissingFieldEntry : public ConfigError {
public:
    explicit MissingFieldEntry(double omega);
    double omega;
};

/// Integration step exceeds the stability guard of the integrator.
class StepTooLarge : public NumericsError {
public:
    StepTooLarge(double dt, double limit);
    double dt, limit;
};

/// Occupation is undefined or infinite for beta <= 0.
class NonPositiveBeta : public DomainError {
public:
    explicit NonPositiveBeta(double beta);
    double beta;
};

/// Local inverse temperature is undefined for occupation <= 0.
class NonPositiveOccupation : public DomainError {
public:
    explicit NonPositiveOccupation(double occupation);
    double occupation;
};

/// Emission/absorption quotient diverges at zero occupation.
class ZeroOccupation : public DomainError {
public:
    explicit ZeroOccupation(double occupation);
    double occupation;
};

}  // namespace nonequibath

#endif
