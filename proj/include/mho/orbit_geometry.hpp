#pragma once

#include "mho/motion.hpp"
#include "mho/quadrature.hpp"

namespace mho::classical {

enum class OrbitMethod { Elliptic, Quadrature };

enum class Anchor { FromRmin, FromRmax };

/// Polar angle swept between a passage through r_min and the next through r_max.
///
/// Elliptic: closed form through the complete integral of the third kind with
/// characteristic 1 - r_max^2/r_min^2 and modulus
/// sqrt((r_max^2 - r_min^2)/(r_minus^2 - r_min^2)).
/// Quadrature: (|J|c/2) integral of dx / (x sqrt(x(E - kappa^2 x/2)^2 - J^2 c^2))
/// over [r_min^2, r_max^2], after x = r_min^2 + (r_max^2 - r_min^2) sin^2 u
/// removes both endpoint singularities.
///
/// Only defined on annulus orbits; lambda of exactly 0 or 1 throws DegenerateOrbitError.
double apsidal_angle(const Invariants2D& inv, const OscillatorParams& params,
                     OrbitMethod method = OrbitMethod::Elliptic);

/// Polar angle phi(r) on the branch that starts at r_min (phi increasing with r)
/// or ends at r_max (phi increasing to phi0 as r reaches r_max).
/// r must lie in [r_min, r_max]; values within 1e-12 relative are clamped.
double trajectory_angle(double r, const Invariants2D& inv, const OscillatorParams& params,
                        Anchor anchor, double phi0 = 0.0,
                        OrbitMethod method = OrbitMethod::Elliptic);

/// Time between successive passages through r_min.
/// 2 integral_{r_min}^{r_max} dr / |dr/dt| with |dr/dt| = c sqrt(1 - J^2 c^2 / (r^2 (E - kappa^2 r^2 / 2)^2)),
/// evaluated with the same substitution as apsidal_angle. The integrand stays
/// regular at lambda = 0 (giving 2 r_max / c) and at lambda = 1 (giving 2 pi R / (sqrt3 c)).
double radial_period(const Invariants2D& inv, const OscillatorParams& params);

struct Periodicity {
    bool periodic = false;
    long numerator = 0;    ///< m in delta_phi / pi = m / n
    long denominator = 0;  ///< n
    double ratio = 0.0;    ///< delta_phi / pi
};

/// Continued-fraction test of delta_phi / pi against rationals m/n with n <= max_denominator.
Periodicity detect_periodicity(double delta_phi, long max_denominator = 64, double tol = 1e-6);

}  // namespace mho::classical
