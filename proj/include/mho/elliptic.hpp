#pragma once

namespace mho::specfun {

/// Carlson R_C(x, y); y < 0 gives the Cauchy principal value.
double carlson_rc(double x, double y);

/// Carlson R_F(x, y, z): x, y, z >= 0 with at most one of them zero.
double carlson_rf(double x, double y, double z);

/// Carlson R_J(x, y, z, p): x, y, z >= 0 with at most one zero, p != 0.
/// Negative p returns the Cauchy principal value.
double carlson_rj(double x, double y, double z, double p);

/// Legendre incomplete integral of the first kind,
/// F(phi, k) = integral_0^phi dt / sqrt(1 - k^2 sin^2 t), for phi in [0, pi/2].
double ellip_f(double phi, double k);

/// Complete integral K(k) = F(pi/2, k).
double ellip_k(double k);

/// Legendre incomplete integral of the third kind,
/// Pi(phi, n, k) = integral_0^phi dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t)).
/// Requires n sin^2(phi) < 1.
double ellip_pi(double phi, double n, double k);

}  // namespace mho::specfun
