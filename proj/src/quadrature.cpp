#include "mho/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "mho/errors.hpp"

namespace mho::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK qk15 abscissae and weights; odd indices are the embedded Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error, resabs;
    bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const RealFunction& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw EvaluationError("quadrature: non-finite integrand", x);
    return v;
}

Segment kronrod15(const RealFunction& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 15> fv{};
    fv[7] = checked(f, center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = checked(f, center - dx);
        fv[14 - j] = checked(f, center + dx);
    }
    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    double resabs = std::abs(kronrod);
    for (int j = 0; j < 7; ++j) {
        const double pair = fv[j] + fv[14 - j];
        kronrod += kWgk[j] * pair;
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    }
    kronrod *= half;
    gauss *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs(kronrod - gauss);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return {a, b, kronrod, err, resabs};
}

std::vector<GaussNode> compute_gauss_legendre(int n) {
    std::vector<GaussNode> nodes(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = {-z, w};
        nodes[static_cast<std::size_t>(n - 1 - i)] = {z, w};
    }
    return nodes;
}

}  // namespace

const std::vector<GaussNode>& gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    static std::mutex mutex;
    static std::map<int, std::vector<GaussNode>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

QuadratureResult quad_adaptive(const RealFunction& f, double a, double b, double rel_tol,
                               double abs_tol, std::size_t max_intervals) {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quad_adaptive: tolerances must be positive");
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) {
        auto r = quad_adaptive(f, b, a, rel_tol, abs_tol, max_intervals);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<Segment> heap;
    std::vector<Segment> frozen;  // too narrow to split further
    const Segment first = kronrod15(f, a, b);
    heap.push(first);
    std::size_t evaluations = 15;
    double total = first.value;
    double total_err = first.error;
    double total_abs = first.resabs;
    double frozen_err = 0.0;

    // Every segment error is at least 50 eps resabs, so requests below the summed
    // floor are met once the remaining error is within twice that floor.
    auto converged = [&] {
        return total_err <= std::max({rel_tol * std::abs(total), abs_tol, 100.0 * kEps * total_abs});
    };

    while (!converged()) {
        if (heap.empty() || heap.size() + frozen.size() >= max_intervals) {
            throw ConvergenceError("quad_adaptive: interval budget exhausted", total, total_err);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 100.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            frozen_err += worst.error;
            if (heap.empty() || total_err - frozen_err <= 0.0) {
                if (frozen_err <= std::max(rel_tol * std::abs(total), abs_tol)) break;
                throw ConvergenceError("quad_adaptive: roundoff limits subdivision", total, total_err);
            }
            continue;
        }
        const Segment left = kronrod15(f, worst.a, mid);
        const Segment right = kronrod15(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift accumulated by the running updates.
    double value = 0.0, err = 0.0;
    for (const auto& s : frozen) value += s.value, err += s.error;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {value, err, evaluations};
}

QuadratureResult quad_adaptive_semi_infinite(const RealFunction& f, double a, double rel_tol,
                                             double abs_tol, std::size_t max_intervals) {
    auto mapped = [&](double t) {
        const double s = 1.0 - t;
        return f(a + t / s) / (s * s);
    };
    return quad_adaptive(mapped, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
}

QuadratureResult quad_sine(const RealFunction& g, double omega, double a, double b, double rel_tol,
                           double abs_tol, double max_panel) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("quad_sine: omega must be positive");
    if (!(rel_tol > 0.0)) throw DomainError("quad_sine: rel_tol must be positive");
    if (!(max_panel > 0.0)) throw DomainError("quad_sine: max_panel must be positive");
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) {
        auto r = quad_sine(g, omega, b, a, rel_tol, abs_tol, max_panel);
        r.value = -r.value;
        return r;
    }

    const double half_period = std::numbers::pi / omega;
    std::vector<double> edges{a};
    {
        const int pieces = std::max(1, static_cast<int>(std::ceil(half_period / max_panel - 1e-12)));
        const double step = half_period / pieces;
        const double base = std::floor(a / half_period) * half_period;
        const double slack = 1e-12 * step;
        for (long i = 1;; ++i) {
            const double next = base + static_cast<double>(i) * step;
            if (next >= b - slack) break;
            if (next > a + slack) edges.push_back(next);
        }
        edges.push_back(b);
    }

    const auto& rule = gauss_legendre(15);
    std::size_t evaluations = 0;
    auto panel = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double s = 0.0;
        for (const auto& node : rule) {
            const double k = c + h * node.x;
            const double v = g(k) * std::sin(omega * k);
            if (!std::isfinite(v)) throw EvaluationError("quad_sine: non-finite integrand", k);
            s += node.w * v;
        }
        evaluations += rule.size();
        return s * h;
    };

    struct Sum {
        double value, magnitude;
    };
    auto sweep = [&](int split) {
        Sum out{0.0, 0.0};
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double lo = edges[i], hi = edges[i + 1];
            const double w = (hi - lo) / split;
            double p = 0.0;
            for (int j = 0; j < split; ++j) p += panel(lo + j * w, j + 1 == split ? hi : lo + (j + 1) * w);
            out.value += p;
            out.magnitude += std::abs(p);
        }
        return out;
    };

    Sum coarse = sweep(1);
    for (int split = 2; split <= 64; split *= 2) {
        const Sum fine = sweep(split);
        const double diff = std::abs(fine.value - coarse.value);
        const double floor = 100.0 * kEps * fine.magnitude;
        if (diff <= std::max({rel_tol * std::abs(fine.value), abs_tol, floor})) {
            return {fine.value, diff + floor, evaluations};
        }
        coarse = fine;
    }
    throw ConvergenceError("quad_sine: panel refinement did not converge", coarse.value,
                           std::abs(coarse.value) * rel_tol);
}

}  // namespace mho::numerics
