#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mho/errors.hpp"

namespace mho::numerics {

template <std::size_t N>
using OdeState = std::array<double, N>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;  ///< 0 selects the step automatically
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 2'000'000;
};

struct StepStatistics {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

/// Accepted steps of an integration plus the fifth-order Dormand-Prince
/// continuous extension on every step.
template <std::size_t N>
class OdeSolution {
public:
    using State = OdeState<N>;

    const std::vector<double>& times() const { return times_; }
    const std::vector<State>& states() const { return states_; }
    const StepStatistics& statistics() const { return stats_; }
    double t_begin() const { return times_.front(); }
    double t_end() const { return times_.back(); }

    /// Dense output at any t in [t_begin, t_end].
    State operator()(double t) const {
        if (!(t >= times_.front() && t <= times_.back())) {
            throw DomainError("OdeSolution: time outside the integrated span");
        }
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - times_.begin());
        i = i == 0 ? 0 : std::min(i - 1, coefficients_.size() - 1);
        const double h = times_[i + 1] - times_[i];
        const double s = (t - times_[i]) / h;
        const double s1 = 1.0 - s;
        const auto& r = coefficients_[i];
        State y{};
        for (std::size_t k = 0; k < N; ++k) {
            y[k] = r[0][k] + s * (r[1][k] + s1 * (r[2][k] + s * (r[3][k] + s1 * r[4][k])));
        }
        return y;
    }

private:
    template <std::size_t M, class Field>
    friend OdeSolution<M> integrate_ode(Field&&, const OdeState<M>&, double, double, const OdeOptions&);

    std::vector<double> times_;
    std::vector<State> states_;
    std::vector<std::array<State, 5>> coefficients_;
    StepStatistics stats_;
};

namespace detail {

template <std::size_t N>
std::vector<double> to_vector(const OdeState<N>& y) {
    return {y.begin(), y.end()};
}

template <std::size_t N>
bool all_finite(const OdeState<N>& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of dy/dt = field(t, y) from t0 to t1.
///
/// A step is accepted when the RMS of the embedded error, scaled by
/// abs_tol + rel_tol max(|y_n|, |y_n+1|), is at most one. Throws
/// EvaluationError (with the last accepted state) when the field returns a
/// non-finite value and StiffnessError when the step size underflows.
template <std::size_t N, class Field>
OdeSolution<N> integrate_ode(Field&& field, const OdeState<N>& y0, double t0, double t1,
                             const OdeOptions& options = {}) {
    using State = OdeState<N>;
    if (!(t1 > t0)) throw DomainError("integrate_ode: require t1 > t0");
    if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) {
        throw DomainError("integrate_ode: tolerances must be positive");
    }
    if (!detail::all_finite(y0)) throw DomainError("integrate_ode: non-finite initial state");

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                     d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                     d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    OdeSolution<N> sol;
    sol.times_.push_back(t0);
    sol.states_.push_back(y0);

    double t = t0;
    State y = y0;

    auto eval = [&](double tt, const State& yy) {
        State k = field(tt, yy);
        ++sol.stats_.evaluations;
        if (!detail::all_finite(k)) {
            throw EvaluationError("integrate_ode: non-finite field value", t, detail::to_vector(y));
        }
        return k;
    };
    auto combine = [](const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
        State out = base;
        for (const auto& [coef, k] : terms) {
            for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
        }
        return out;
    };
    auto scaled_norm = [&](const State& v, const State& ya, const State& yb) {
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = options.abs_tol + options.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            sum += (v[i] / sc) * (v[i] / sc);
        }
        return std::sqrt(sum / static_cast<double>(N));
    };

    State k1 = eval(t, y);

    double h = options.initial_step;
    if (!(h > 0.0)) {
        // Hairer-Norsett-Wanner starting step heuristic.
        const double d0 = scaled_norm(y, y, y), d1n = scaled_norm(k1, y, y);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, t1 - t0);
        const State y1 = combine(y, h0, {{1.0, &k1}});
        const State kk = eval(t + h0, y1);
        State diff{};
        for (std::size_t i = 0; i < N; ++i) diff[i] = kk[i] - k1[i];
        const double d2 = scaled_norm(diff, y, y) / h0;
        const double h1 = std::max(d1n, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                     : std::pow(0.01 / std::max(d1n, d2), 0.2);
        h = std::min(100.0 * h0, h1);
    }
    h = std::min({h, options.max_step, t1 - t0});

    while (t < t1) {
        if (sol.stats_.accepted + sol.stats_.rejected >= options.max_steps) {
            throw StiffnessError("integrate_ode: step budget exhausted at t = " + std::to_string(t));
        }
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            throw StiffnessError("integrate_ode: step size underflow at t = " + std::to_string(t));
        }
        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }

        const State k2 = eval(t + c2 * h, combine(y, h, {{a21, &k1}}));
        const State k3 = eval(t + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
        const State k4 = eval(t + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = eval(t + c5 * h, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = eval(t + h, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new = combine(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const State k7 = eval(t + h, y_new);

        State err_vec{};
        for (std::size_t i = 0; i < N; ++i) {
            err_vec[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        }
        const double err = scaled_norm(err_vec, y, y_new);

        if (err <= 1.0) {
            std::array<State, 5> r{};
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = y_new[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                r[0][i] = y[i];
                r[1][i] = ydiff;
                r[2][i] = bspl;
                r[3][i] = ydiff - h * k7[i] - bspl;
                r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            t = last ? t1 : t + h;
            y = y_new;
            k1 = k7;
            sol.times_.push_back(t);
            sol.states_.push_back(y);
            sol.coefficients_.push_back(r);
            ++sol.stats_.accepted;
            if (last) break;
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = std::min(h * factor, options.max_step);
        } else {
            ++sol.stats_.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return sol;
}

}  // namespace mho::numerics
