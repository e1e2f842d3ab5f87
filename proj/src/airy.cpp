#include "mho/airy.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <shared_mutex>

#include "mho/errors.hpp"
#include "mho/roots.hpp"

namespace mho::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kAi0 = 0.355028053887817239260063186004183176;    // 3^{-2/3} / Gamma(2/3)
constexpr double kAip0 = -0.258819403792806798405183560189203963;  // -3^{-1/3} / Gamma(1/3)

constexpr double kTableLo = -10.0;
constexpr double kTableHi = 9.0;
constexpr double kTableStep = 0.25;
constexpr int kTableSize = static_cast<int>((kTableHi - kTableLo) / kTableStep) + 1;

struct Pair {
    double y, dy;
};

// Taylor expansion of an Airy-equation solution about x0, evaluated at x0 + h.
Pair taylor_step(double x0, Pair start, double h) {
    double c_prev2 = 0.0;  // c_{k-1}
    double c_prev = start.y;  // c_k at k = 0
    double c = start.dy;      // c_{k+1}
    double y = start.y + start.dy * h;
    double dy = start.dy;
    double hk = h;  // h^{k+1}
    // c_{k+2} (k+2)(k+1) = x0 c_k + c_{k-1}
    for (int k = 0; k < 300; ++k) {
        const double next = (x0 * c_prev + c_prev2) / ((k + 2.0) * (k + 1.0));
        const double term_dy = (k + 2.0) * next * hk;
        hk *= h;
        const double term_y = next * hk;
        y += term_y;
        dy += term_dy;
        c_prev2 = c_prev;
        c_prev = c;
        c = next;
        const double scale = kEps * 0.01 * (std::abs(y) + std::abs(dy));
        if (k > 4 && std::abs(term_y) <= scale && std::abs(term_dy) <= scale &&
            std::abs(c_prev * hk) <= scale) {
            break;
        }
    }
    return {y, dy};
}

// Ai = e^{-zeta} / (2 sqrt(pi) x^{1/4}) sum (-1)^k u_k zeta^{-k}, and the v_k series for Ai'.
AiryValue asymptotic_positive(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    if (zeta > 740.0) return {0.0, 0.0, true};
    double u = 1.0, sum_u = 1.0, sum_v = 1.0;
    double zpow = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        zpow *= -zeta;
        const double tu = u / zpow, tv = v / zpow;
        if (std::abs(tu) >= last) break;
        last = std::abs(tu);
        sum_u += tu;
        sum_v += tv;
        if (std::abs(tu) < 1e-3 * kEps) break;
    }
    const double quarter = std::sqrt(std::sqrt(x));
    const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    AiryValue out{e / quarter * sum_u, -quarter * e * sum_v, false};
    out.underflow = out.ai == 0.0;
    return out;
}

AiryValue asymptotic_negative(double x) {
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    // even_u = sum (-1)^k u_{2k} zeta^{-2k}, odd_u = sum (-1)^k u_{2k+1} zeta^{-2k-1}
    double even_u = 1.0, odd_u = 0.0, even_v = 1.0, odd_v = 0.0;
    double u = 1.0, zpow = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        zpow *= zeta;
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        const double tu = sign * u / zpow, tv = sign * v / zpow;
        if (std::abs(tu) >= last) break;
        last = std::abs(tu);
        if (k % 2 == 0) {
            even_u += tu;
            even_v += tv;
        } else {
            odd_u += tu;
            odd_v += tv;
        }
        if (std::abs(tu) < 1e-3 * kEps) break;
    }
    const double theta = zeta - std::numbers::pi / 4.0;
    const double s = std::sin(theta), c = std::cos(theta);
    const double quarter = std::sqrt(std::sqrt(z));
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    return {norm / quarter * (c * even_u + s * odd_u), norm * quarter * (s * even_v - c * odd_v), false};
}

struct NodeTable {
    std::array<Pair, kTableSize> nodes{};

    NodeTable() {
        auto at = [](int i) { return kTableLo + kTableStep * i; };
        const int i_zero = static_cast<int>(-kTableLo / kTableStep);
        const int i_left = static_cast<int>((-2.0 - kTableLo) / kTableStep);
        const int i_right = static_cast<int>((2.0 - kTableLo) / kTableStep);
        for (int i = i_left; i <= i_right; ++i) nodes[i] = taylor_step(0.0, {kAi0, kAip0}, at(i) - at(i_zero));
        const AiryValue top = asymptotic_positive(kTableHi);
        nodes[kTableSize - 1] = {top.ai, top.ai_prime};
        for (int i = kTableSize - 2; i > i_right; --i) nodes[i] = taylor_step(at(i + 1), nodes[i + 1], -kTableStep);
        for (int i = i_left - 1; i >= 0; --i) nodes[i] = taylor_step(at(i + 1), nodes[i + 1], -kTableStep);
    }
};

const NodeTable& node_table() {
    static const NodeTable table;
    return table;
}

}  // namespace

AiryValue airy(double x) {
    if (std::isnan(x)) return {x, x, false};
    if (x > kTableHi) return asymptotic_positive(x);
    if (x < kTableLo) return asymptotic_negative(x);
    const auto& table = node_table();
    const int i = static_cast<int>(std::lround((x - kTableLo) / kTableStep));
    const double x0 = kTableLo + kTableStep * i;
    const Pair p = taylor_step(x0, table.nodes[static_cast<std::size_t>(i)], x - x0);
    return {p.y, p.dy, false};
}

double airy_ai(double x) { return airy(x).ai; }

double airy_ai_prime(double x) { return airy(x).ai_prime; }

namespace {

class ZeroCache {
public:
    double get(int n) {
        {
            std::shared_lock lock(mutex_);
            if (static_cast<std::size_t>(n) <= zeros_.size()) return zeros_[static_cast<std::size_t>(n - 1)];
        }
        std::unique_lock lock(mutex_);
        while (zeros_.size() < static_cast<std::size_t>(n)) zeros_.push_back(compute(static_cast<int>(zeros_.size()) + 1));
        return zeros_[static_cast<std::size_t>(n - 1)];
    }

private:
    static double compute(int n) {
        const double t = 3.0 * std::numbers::pi * (4.0 * n - 1.0) / 8.0;
        const double t2 = 1.0 / (t * t);
        const double seed = -std::cbrt(t * t) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)));
        const double half_width = 0.3 * std::numbers::pi / std::sqrt(-seed);
        double lo = seed - half_width, hi = seed + half_width;
        // The seed error is far below the half-spacing, so a sign change is expected.
        for (int widen = 0; airy_ai(lo) * airy_ai(hi) > 0.0 && widen < 8; ++widen) {
            lo -= 0.25 * half_width;
            hi += 0.25 * half_width;
        }
        const double tol = 4.0 * kEps * std::abs(seed);
        return numerics::find_root_bracketed([](double x) { return airy_ai(x); },
                                             [](double x) { return airy_ai_prime(x); }, lo, hi, tol);
    }

    std::shared_mutex mutex_;
    std::vector<double> zeros_;
};

ZeroCache& zero_cache() {
    static ZeroCache cache;
    return cache;
}

}  // namespace

double airy_zero(int n) {
    if (n < 1) throw DomainError("airy_zero: n must be >= 1");
    return zero_cache().get(n);
}

AiryZeroTable airy_zero_table(int n) {
    if (n < 1) throw DomainError("airy_zero_table: n must be >= 1");
    AiryZeroTable table;
    table.zeros.reserve(static_cast<std::size_t>(n));
    table.derivative_values.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double a = airy_zero(i);
        table.zeros.push_back(a);
        table.derivative_values.push_back(airy_ai_prime(a));
    }
    return table;
}

}  // namespace mho::specfun
