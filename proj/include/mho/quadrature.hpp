#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace mho::numerics {

using RealFunction = std::function<double(double)>;

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kDefaultAbsTol = 1e-12;

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct GaussNode {
    double x;  ///< node on [-1, 1]
    double w;
};

/// n-point Gauss-Legendre rule on [-1, 1], computed once and cached.
const std::vector<GaussNode>& gauss_legendre(int n);

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(rel_tol |value|, abs_tol). Nodes never touch the
/// endpoints, so integrable endpoint singularities of square-root type are
/// handled by subdivision. Tolerances tighter than the roundoff floor
/// 50 eps integral |f| are capped at twice that floor. Throws ConvergenceError
/// (carrying the best estimate) when max_intervals is exhausted.
QuadratureResult quad_adaptive(const RealFunction& f, double a, double b,
                               double rel_tol = kDefaultRelTol, double abs_tol = kDefaultAbsTol,
                               std::size_t max_intervals = 4000);

/// Integral of f over [a, inf), mapped onto [0, 1) through x = a + t / (1 - t).
QuadratureResult quad_adaptive_semi_infinite(const RealFunction& f, double a,
                                             double rel_tol = kDefaultRelTol,
                                             double abs_tol = kDefaultAbsTol,
                                             std::size_t max_intervals = 4000);

/// Integral of g(k) sin(omega k) over [a, b].
///
/// Panels end on the zeros of sin(omega k), so each covers half a period
/// (panels wider than max_panel are split evenly) and carries a 15-point
/// Gauss rule. The panel grid is halved until two successive panel sums agree
/// to max(rel_tol |value|, abs_tol, roundoff floor); that difference is the
/// reported error. Truncating a decaying integrand at b is the caller's choice
/// and is not part of the estimate. Throws DomainError for omega <= 0.
QuadratureResult quad_sine(const RealFunction& g, double omega, double a, double b,
                           double rel_tol = kDefaultRelTol, double abs_tol = 0.0,
                           double max_panel = std::numeric_limits<double>::infinity());

}  // namespace mho::numerics
