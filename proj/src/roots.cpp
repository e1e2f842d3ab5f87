#include "mho/roots.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mho/errors.hpp"

namespace mho::numerics {
namespace {

constexpr int kMaxIterations = 400;

double checked(const RealFunction& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw EvaluationError("non-finite function value at x = " + std::to_string(x), x);
    }
    return v;
}

double solve(const RealFunction& f, const RealFunction* df, double a, double b, double tol) {
    if (!(a < b)) throw DomainError("find_root_bracketed: require a < b");
    if (!(tol > 0.0)) throw DomainError("find_root_bracketed: require tol > 0");

    double fa = checked(f, a);
    double fb = checked(f, b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketError("find_root_bracketed: f(a) and f(b) have the same sign");
    }

    // Most recent iterate and its predecessor drive the secant step.
    double x_prev = a, f_prev = fa;
    double x = b, fx = fb;
    if (std::abs(fa) < std::abs(fb)) std::swap(x_prev, x), std::swap(f_prev, fx);

    bool force_bisect = false;
    for (int it = 0; it < kMaxIterations; ++it) {
        const double width = b - a;
        const double mid = 0.5 * (a + b);
        if (width <= tol || mid <= a || mid >= b) break;

        double candidate = std::numeric_limits<double>::quiet_NaN();
        if (!force_bisect) {
            if (df != nullptr) {
                const double slope = (*df)(x);
                if (std::isfinite(slope) && slope != 0.0) candidate = x - fx / slope;
            } else if (fx != f_prev) {
                candidate = x - fx * (x - x_prev) / (fx - f_prev);
            }
        }
        // Steps shorter than the tolerance are stretched so the bracket can close.
        if (std::isfinite(candidate) && std::abs(candidate - x) < 0.5 * tol) {
            candidate = x + std::copysign(0.5 * tol, mid - x);
        }
        if (!(candidate > a && candidate < b)) candidate = mid;

        const double fc = checked(f, candidate);
        if (fc == 0.0) return candidate;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = candidate;
            fa = fc;
        } else {
            b = candidate;
            fb = fc;
        }
        x_prev = x;
        f_prev = fx;
        x = candidate;
        fx = fc;

        force_bisect = (b - a) > 0.5 * width;
    }
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

}  // namespace

double find_root_bracketed(const RealFunction& f, double a, double b, double tol) {
    return solve(f, nullptr, a, b, tol);
}

double find_root_bracketed(const RealFunction& f, const RealFunction& df, double a, double b,
                           double tol) {
    return solve(f, &df, a, b, tol);
}

}  // namespace mho::numerics
