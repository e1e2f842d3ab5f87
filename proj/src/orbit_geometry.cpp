#include "mho/orbit_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mho/elliptic.hpp"

namespace mho::classical {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Squared turning radii a = r_min^2 < b = r_max^2 < cc = r_minus^2 and |J| c.
struct Geometry {
    double a, b, cc, jc;
};

Geometry annulus_geometry(const Invariants2D& inv, const OscillatorParams& params, const char* who) {
    const double lambda = motion_parameter(inv, params);
    if (lambda > 1.0) throw NoMotionError(std::string(who) + ": lambda > 1 admits no motion");
    if (lambda == 0.0 || lambda == 1.0) {
        throw DegenerateOrbitError(std::string(who) + ": undefined for circle (lambda = 1) or segment (lambda = 0)");
    }
    const TurningRadii r = turning_radii(inv, params);
    return {r.r_min * r.r_min, r.r_max * r.r_max, r.r_minus * r.r_minus,
            std::abs(inv.angular_momentum) * params.c};
}

// integral over u of du / (x sqrt(r_minus^2 - x)), x = a + (b - a) sin^2 u
double angle_integral(const Geometry& g, double u0, double u1) {
    auto integrand = [&](double u) {
        const double s = std::sin(u);
        const double x = g.a + (g.b - g.a) * s * s;
        return 1.0 / (x * std::sqrt(g.cc - x));
    };
    return numerics::quad_adaptive(integrand, u0, u1, 1e-13, 1e-300).value;
}

double clamp_radius(double r, double r_min, double r_max) {
    const double slack = 1e-12 * r_max;
    if (!(r >= r_min - slack && r <= r_max + slack)) {
        throw DomainError("trajectory_angle: r must lie in [r_min, r_max]");
    }
    return std::clamp(r, r_min, r_max);
}

}  // namespace

double apsidal_angle(const Invariants2D& inv, const OscillatorParams& params, OrbitMethod method) {
    const Geometry g = annulus_geometry(inv, params, "apsidal_angle");
    if (method == OrbitMethod::Quadrature) return 2.0 * g.jc / params.kappa2 * angle_integral(g, 0.0, kHalfPi);
    const double k = std::sqrt((g.b - g.a) / (g.cc - g.a));
    const double prefactor = 2.0 * g.jc / (params.kappa2 * g.a * std::sqrt(g.cc - g.a));
    return prefactor * specfun::ellip_pi(kHalfPi, 1.0 - g.b / g.a, k);
}

double trajectory_angle(double r, const Invariants2D& inv, const OscillatorParams& params, Anchor anchor,
                        double phi0, OrbitMethod method) {
    const Geometry g = annulus_geometry(inv, params, "trajectory_angle");
    r = clamp_radius(r, std::sqrt(g.a), std::sqrt(g.b));
    const double r2 = r * r;
    const double k = std::sqrt((g.b - g.a) / (g.cc - g.a));

    if (method == OrbitMethod::Quadrature) {
        const double u = std::asin(std::sqrt(std::clamp((r2 - g.a) / (g.b - g.a), 0.0, 1.0)));
        const double scale = 2.0 * g.jc / params.kappa2;
        return anchor == Anchor::FromRmin ? phi0 + scale * angle_integral(g, 0.0, u)
                                          : phi0 - scale * angle_integral(g, u, kHalfPi);
    }

    if (anchor == Anchor::FromRmin) {
        const double phi = std::asin(std::sqrt(std::clamp((r2 - g.a) / (g.b - g.a), 0.0, 1.0)));
        const double prefactor = 2.0 * g.jc / (params.kappa2 * g.a * std::sqrt(g.cc - g.a));
        return phi0 + prefactor * specfun::ellip_pi(phi, 1.0 - g.b / g.a, k);
    }
    const double arg = (g.cc - g.a) * (g.b - r2) / ((g.b - g.a) * (g.cc - r2));
    const double phi = std::asin(std::sqrt(std::clamp(arg, 0.0, 1.0)));
    const double n = (g.b - g.a) / (g.cc - g.a) * g.cc / g.b;
    const double prefactor = 2.0 * g.jc / (params.kappa2 * g.cc * g.b * std::sqrt(g.cc - g.a));
    return phi0 - prefactor * ((g.cc - g.b) * specfun::ellip_pi(phi, n, k) + g.b * specfun::ellip_f(phi, k));
}

double radial_period(const Invariants2D& inv, const OscillatorParams& params) {
    const double lambda = motion_parameter(inv, params);
    if (lambda > 1.0) throw NoMotionError("radial_period: lambda > 1 admits no motion");
    const TurningRadii r = turning_radii(inv, params);
    const double a = r.r_min * r.r_min, b = r.r_max * r.r_max, cc = r.r_minus * r.r_minus;
    const double energy = inv.energy, k2 = params.kappa2;
    auto integrand = [&](double u) {
        const double s = std::sin(u);
        const double x = a + (b - a) * s * s;
        return (energy - 0.5 * k2 * x) / std::sqrt(cc - x);
    };
    const double integral = numerics::quad_adaptive(integrand, 0.0, kHalfPi, 1e-13, 1e-300).value;
    return 4.0 / (params.c * k2) * integral;
}

Periodicity detect_periodicity(double delta_phi, long max_denominator, double tol) {
    Periodicity out;
    out.ratio = delta_phi / std::numbers::pi;
    // Convergents h/k of the continued fraction of ratio.
    long h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    double rest = out.ratio;
    for (int it = 0; it < 64; ++it) {
        const double whole = std::floor(rest);
        const long digit = static_cast<long>(whole);
        const long h = digit * h_prev + h_prev2;
        const long k = digit * k_prev + k_prev2;
        if (k > max_denominator) break;
        if (std::abs(out.ratio - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
            out.periodic = true;
            out.numerator = h;
            out.denominator = k;
            return out;
        }
        h_prev2 = h_prev, h_prev = h;
        k_prev2 = k_prev, k_prev = k;
        const double frac = rest - whole;
        if (frac < 1e-15) break;
        rest = 1.0 / frac;
    }
    return out;
}

}  // namespace mho::classical
