#pragma once

#include <functional>

namespace mho::numerics {

using RealFunction = std::function<double(double)>;

/// Root of f in [a, b] with f(a) f(b) <= 0.
///
/// Secant steps (Newton steps when a derivative is supplied) are accepted only
/// while they stay strictly inside the current bracket and at least halve it
/// every second iteration; otherwise the interval is bisected. The returned
/// point always lies in [a, b] and the final bracket is no wider than tol.
///
/// Throws BracketError when f(a) and f(b) share a sign, DomainError for a >= b
/// or tol <= 0, and EvaluationError when f returns a non-finite value.
double find_root_bracketed(const RealFunction& f, double a, double b, double tol);

double find_root_bracketed(const RealFunction& f, const RealFunction& df, double a, double b,
                           double tol);

}  // namespace mho::numerics
