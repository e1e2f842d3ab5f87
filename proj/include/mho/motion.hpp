#pragma once

#include <cmath>
#include <string_view>

#include "mho/params.hpp"

namespace mho::classical {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
};

/// Planar position (m) and momentum (J s / m).
struct PhaseState {
    Vec2 x;
    Vec2 p;
};

struct Invariants2D {
    double energy = 0.0;            ///< E = c|p| + kappa^2 x^2 / 2
    double angular_momentum = 0.0;  ///< J = x^1 p^2 - x^2 p^1, sign kept
};

enum class MotionType { Circle, Annulus, Segment };

std::string_view to_string(MotionType type);

/// Real roots of (kappa^2/2) r^3 - E r + |J| c = 0: r_min <= r_max are the
/// non-negative pair bounding the motion, r_minus is the negative root.
struct TurningRadii {
    double r_min = 0.0;
    double r_max = 0.0;
    double r_minus = 0.0;
};

struct MotionClass {
    MotionType type = MotionType::Annulus;
    double lambda = 0.0;  ///< (|J| c / kappa^2) (3 kappa^2 / 2E)^{3/2}
    TurningRadii radii;
};

Invariants2D invariants_of(const PhaseState& state, const OscillatorParams& params);

/// The dimensionless orbit parameter lambda in [0, 1] for admissible (E, J).
double motion_parameter(const Invariants2D& inv, const OscillatorParams& params);

inline constexpr double kDefaultClassifyTol = 1e-9;

/// Circle when |lambda - 1| <= tol, Segment when lambda <= tol, Annulus otherwise.
/// Throws NoMotionError when lambda > 1 + tol and DomainError for E <= 0.
MotionClass classify(const Invariants2D& inv, const OscillatorParams& params,
                     double tol = kDefaultClassifyTol);

/// Closed-form turning radii from alpha = asin(lambda):
/// r_min = 2R sin(alpha/3), r_max = R(sqrt3 cos(alpha/3) - sin(alpha/3)),
/// r_minus = -R(sqrt3 cos(alpha/3) + sin(alpha/3)), R = sqrt(2E / 3kappa^2).
TurningRadii turning_radii(const Invariants2D& inv, const OscillatorParams& params);

struct CircleOrbit {
    double radius = 0.0;            ///< R = sqrt(2E / 3 kappa^2)
    double angular_frequency = 0.0; ///< omega = c / R
    double momentum = 0.0;          ///< p0 = 2E / 3c
};

CircleOrbit circle_orbit(double energy, const OscillatorParams& params);

/// Phase state on the uniform circular orbit of energy E, starting at angle phi0
/// and rotating counter-clockwise.
PhaseState circle_state(double energy, const OscillatorParams& params, double phi0 = 0.0);

/// Inverse of motion_parameter at fixed energy: J >= 0 with the requested lambda.
double angular_momentum_for(double lambda, double energy, const OscillatorParams& params);

}  // namespace mho::classical
