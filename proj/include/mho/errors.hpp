#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mho {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied arguments outside the documented domain.
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed on valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class BracketError : public InputError {
public:
    using InputError::InputError;
};

class DivergenceError : public InputError {
public:
    using InputError::InputError;
};

/// (E, J) pair that admits no trajectory: r(E - k^2 r^2/2) >= |J| c has no solution.
class NoMotionError : public InputError {
public:
    using InputError::InputError;
};

/// Orbit quantity requested on a circle or segment where it has no annulus meaning.
class DegenerateOrbitError : public InputError {
public:
    using InputError::InputError;
};

/// The Hamiltonian vector field divides by |p|; J = 0 orbits pass through p = 0.
class SingularFieldError : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedError : public InputError {
public:
    using InputError::InputError;
};

/// A function returned a non-finite value. ODE drivers attach the last accepted state.
class EvaluationError : public NumericalError {
public:
    explicit EvaluationError(const std::string& what,
                             double last_time = std::numeric_limits<double>::quiet_NaN(),
                             std::vector<double> last_state = {})
        : NumericalError(what), last_time_(last_time), last_state_(std::move(last_state)) {}

    double last_time() const noexcept { return last_time_; }
    const std::vector<double>& last_state() const noexcept { return last_state_; }

private:
    double last_time_;
    std::vector<double> last_state_;
};

class StiffnessError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Adaptive procedure ran out of budget. The best available estimate is kept.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double best_value, double best_error)
        : NumericalError(what), best_value_(best_value), best_error_(best_error) {}

    double best_value() const noexcept { return best_value_; }
    double best_error() const noexcept { return best_error_; }

private:
    double best_value_;
    double best_error_;
};

}  // namespace mho
