#include "mho/motion.hpp"

#include <algorithm>
#include <numbers>

namespace mho::classical {

std::string_view to_string(MotionType type) {
    switch (type) {
        case MotionType::Circle: return "circle";
        case MotionType::Annulus: return "annulus";
        case MotionType::Segment: return "segment";
    }
    return "unknown";
}

Invariants2D invariants_of(const PhaseState& state, const OscillatorParams& params) {
    params.validate();
    const double r2 = state.x.dot(state.x);
    return {params.c * state.p.norm() + 0.5 * params.kappa2 * r2, state.x.cross(state.p)};
}

double motion_parameter(const Invariants2D& inv, const OscillatorParams& params) {
    params.validate();
    if (!(inv.energy > 0.0) || !std::isfinite(inv.energy)) throw DomainError("energy must be positive");
    const double scale = 3.0 * params.kappa2 / (2.0 * inv.energy);
    return std::abs(inv.angular_momentum) * params.c / params.kappa2 * scale * std::sqrt(scale);
}

double angular_momentum_for(double lambda, double energy, const OscillatorParams& params) {
    params.validate();
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
    if (!(energy > 0.0)) throw DomainError("energy must be positive");
    const double scale = 2.0 * energy / (3.0 * params.kappa2);
    return lambda * params.kappa2 / params.c * scale * std::sqrt(scale);
}

TurningRadii turning_radii(const Invariants2D& inv, const OscillatorParams& params) {
    const double lambda = motion_parameter(inv, params);
    if (!(lambda <= 1.0)) throw DomainError("turning_radii: lambda must lie in [0, 1]");
    const double alpha = std::asin(lambda);
    const double big_r = std::sqrt(2.0 * inv.energy / (3.0 * params.kappa2));
    const double s = std::sin(alpha / 3.0), c = std::cos(alpha / 3.0);
    const double sqrt3 = std::numbers::sqrt3;
    return {2.0 * big_r * s, big_r * (sqrt3 * c - s), -big_r * (sqrt3 * c + s)};
}

MotionClass classify(const Invariants2D& inv, const OscillatorParams& params, double tol) {
    double lambda = motion_parameter(inv, params);
    if (lambda > 1.0 + tol) {
        throw NoMotionError("classify: no trajectory satisfies r(E - kappa^2 r^2/2) >= |J| c (lambda > 1)");
    }
    MotionClass out;
    if (std::abs(lambda - 1.0) <= tol) {
        lambda = std::min(lambda, 1.0);
        out.type = MotionType::Circle;
    } else if (lambda <= tol) {
        out.type = MotionType::Segment;
    } else {
        out.type = MotionType::Annulus;
    }
    out.lambda = lambda;
    // A circle within tol gets the exact double root r_min = r_max = R.
    const double j = angular_momentum_for(out.type == MotionType::Circle ? 1.0 : lambda, inv.energy, params);
    out.radii = turning_radii({inv.energy, j}, params);
    return out;
}

CircleOrbit circle_orbit(double energy, const OscillatorParams& params) {
    params.validate();
    if (!(energy > 0.0)) throw DomainError("circle_orbit: energy must be positive");
    const double radius = std::sqrt(2.0 * energy / (3.0 * params.kappa2));
    return {radius, params.c / radius, 2.0 * energy / (3.0 * params.c)};
}

PhaseState circle_state(double energy, const OscillatorParams& params, double phi0) {
    const CircleOrbit orbit = circle_orbit(energy, params);
    const double cs = std::cos(phi0), sn = std::sin(phi0);
    return {{orbit.radius * cs, orbit.radius * sn}, {-orbit.momentum * sn, orbit.momentum * cs}};
}

}  // namespace mho::classical
