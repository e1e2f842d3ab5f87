#include "mho/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mho/errors.hpp"

namespace mho::specfun {
namespace {

constexpr double kTol = 1e-16;  // target relative truncation error of the duplication series

void check_rf_domain(double x, double y, double z, const char* who) {
    if (!(x >= 0.0 && y >= 0.0 && z >= 0.0) || !std::isfinite(x + y + z)) {
        throw DomainError(std::string(who) + ": arguments must be finite and non-negative");
    }
    if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
        throw DomainError(std::string(who) + ": at most one argument may be zero");
    }
}

// R_C(1, 1 + e) for e > -1, the building block of the R_J sum.
double rc_one(double e) {
    if (std::abs(e) < 1e-4) return 1.0 + e * (-1.0 / 3 + e * (1.0 / 5 + e * (-1.0 / 7 + e / 9)));
    if (e > 0.0) {
        const double s = std::sqrt(e);
        return std::atan(s) / s;
    }
    const double s = std::sqrt(-e);
    return std::atanh(s) / s;
}

double rj_positive(double x, double y, double z, double p) {
    const double a0 = (x + y + z + 2.0 * p) / 5.0;
    const double delta = (p - x) * (p - y) * (p - z);
    const double q = std::pow(kTol / 4.0, -1.0 / 6.0) *
                     std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z), std::abs(a0 - p)});
    double a = a0, fac = 1.0, sum = 0.0;
    const double x0 = x, y0 = y, z0 = z;
    for (int m = 0; m < 100 && fac * q >= std::abs(a); ++m) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
        const double lambda = sx * sy + sx * sz + sy * sz;
        const double d = (sp + sx) * (sp + sy) * (sp + sz);
        const double e = delta * fac * fac * fac / (d * d);
        sum += fac * rc_one(e) / d;
        a = 0.25 * (a + lambda);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
        fac *= 0.25;
    }
    const double xx = (a0 - x0) * fac / a, yy = (a0 - y0) * fac / a, zz = (a0 - z0) * fac / a;
    const double pp = -0.5 * (xx + yy + zz);
    const double e2 = xx * yy + xx * zz + yy * zz - 3.0 * pp * pp;
    const double e3 = xx * yy * zz + 2.0 * e2 * pp + 4.0 * pp * pp * pp;
    const double e4 = (2.0 * xx * yy * zz + e2 * pp + 3.0 * pp * pp * pp) * pp;
    const double e5 = xx * yy * zz * pp * pp;
    const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                          9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return fac * series / (a * std::sqrt(a)) + 6.0 * sum;
}

}  // namespace

double carlson_rc(double x, double y) {
    if (!(x >= 0.0) || y == 0.0 || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("carlson_rc: require x >= 0 and y != 0");
    }
    if (y < 0.0) return std::sqrt(x / (x - y)) * carlson_rc(x - y, -y);
    if (x == y) return 1.0 / std::sqrt(x);
    if (x < y) return std::acos(std::sqrt(x / y)) / std::sqrt(y - x);
    return std::acosh(std::sqrt(x / y)) / std::sqrt(x - y);
}

double carlson_rf(double x, double y, double z) {
    check_rf_domain(x, y, z, "carlson_rf");
    const double a0 = (x + y + z) / 3.0;
    const double q = std::pow(3.0 * kTol, -1.0 / 6.0) *
                     std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    double a = a0, fac = 1.0;
    const double x0 = x, y0 = y;
    for (int m = 0; m < 100 && fac * q >= std::abs(a); ++m) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lambda = sx * sy + sx * sz + sy * sz;
        a = 0.25 * (a + lambda);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        fac *= 0.25;
    }
    const double xx = (a0 - x0) * fac / a, yy = (a0 - y0) * fac / a, zz = -(xx + yy);
    const double e2 = xx * yy - zz * zz, e3 = xx * yy * zz;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

double carlson_rj(double x, double y, double z, double p) {
    check_rf_domain(x, y, z, "carlson_rj");
    if (p == 0.0 || !std::isfinite(p)) throw DomainError("carlson_rj: p must be finite and non-zero");
    if (p > 0.0) return rj_positive(x, y, z, p);

    // Principal value through the transformation to a positive fourth argument.
    const double xt = std::min({x, y, z}), zt = std::max({x, y, z}), yt = x + y + z - xt - zt;
    if (!(yt > 0.0)) throw DomainError("carlson_rj: principal value needs two positive arguments");
    const double a = 1.0 / (yt - p);
    const double b = a * (zt - yt) * (yt - xt);
    const double pt = yt + b;
    const double rho = xt * zt / yt;
    const double tau = p * pt / yt;
    return a * (b * rj_positive(xt, yt, zt, pt) + 3.0 * (carlson_rc(rho, tau) - carlson_rf(xt, yt, zt)));
}

double ellip_f(double phi, double k) {
    if (!(phi >= 0.0 && phi <= std::numbers::pi / 2)) throw DomainError("ellip_f: phi must lie in [0, pi/2]");
    const double k2 = k * k;
    if (!(k2 <= 1.0)) throw DomainError("ellip_f: |k| must not exceed 1");
    if (phi == 0.0) return 0.0;
    const double s = std::sin(phi), c = std::cos(phi);
    if (k2 == 1.0 && phi == std::numbers::pi / 2) throw DivergenceError("ellip_f: F(pi/2, 1) diverges");
    return s * carlson_rf(c * c, 1.0 - k2 * s * s, 1.0);
}

double ellip_k(double k) { return ellip_f(std::numbers::pi / 2, k); }

double ellip_pi(double phi, double n, double k) {
    if (!(phi >= 0.0 && phi <= std::numbers::pi / 2)) throw DomainError("ellip_pi: phi must lie in [0, pi/2]");
    const double k2 = k * k;
    if (!(k2 <= 1.0)) throw DomainError("ellip_pi: |k| must not exceed 1");
    if (!std::isfinite(n)) throw DomainError("ellip_pi: characteristic must be finite");
    if (phi == 0.0) return 0.0;
    const double s = std::sin(phi), c = std::cos(phi);
    const double s2 = s * s;
    if (!(n * s2 < 1.0)) throw DomainError("ellip_pi: require n sin^2(phi) < 1");
    if (k2 == 1.0 && phi == std::numbers::pi / 2) throw DivergenceError("ellip_pi: diverges at k = 1, phi = pi/2");
    const double f = ellip_f(phi, k);
    if (n == 0.0) return f;
    return f + n / 3.0 * s2 * s * carlson_rj(c * c, 1.0 - k2 * s2, 1.0, 1.0 - n * s2);
}

}  // namespace mho::specfun
