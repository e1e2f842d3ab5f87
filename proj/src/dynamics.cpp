#include "mho/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mho/roots.hpp"

namespace mho::classical {

FlatState to_flat(const PhaseState& s) { return {s.x.x, s.x.y, s.p.x, s.p.y}; }

PhaseState from_flat(const FlatState& y) { return {{y[0], y[1]}, {y[2], y[3]}}; }

PhaseState hamilton_field(const PhaseState& s, const OscillatorParams& params) {
    const double pn = s.p.norm();
    if (pn == 0.0) throw SingularFieldError("hamilton_field: |p| = 0");
    return {{params.c * s.p.x / pn, params.c * s.p.y / pn}, {-params.kappa2 * s.x.x, -params.kappa2 * s.x.y}};
}

Simulation simulate(const PhaseState& state0, const OscillatorParams& params, double t_end,
                    const numerics::OdeOptions& options) {
    params.validate();
    if (!(t_end > 0.0)) throw DomainError("simulate: t_end must be positive");
    const Invariants2D inv0 = invariants_of(state0, params);
    const double scale_j = state0.x.norm() * state0.p.norm();
    if (!(scale_j > 0.0) || std::abs(inv0.angular_momentum) <= 1e-14 * scale_j) {
        throw SingularFieldError("simulate: J = 0 orbits pass through p = 0; use segment_motion");
    }
    const double p_floor = 1e-12 * inv0.energy / params.c;

    auto field = [&](double, const FlatState& y) -> FlatState {
        const PhaseState s = from_flat(y);
        if (s.p.norm() < p_floor) throw StiffnessError("simulate: |p| fell below the floor 1e-12 E/c");
        return to_flat(hamilton_field(s, params));
    };

    Simulation out{numerics::integrate_ode<4>(field, to_flat(state0), 0.0, t_end, options), inv0, {}, {}};
    const auto& sol = out.solution;
    const auto& times = sol.times();
    const auto& states = sol.states();
    auto& d = out.diagnostics;
    d.r_min_observed = std::numeric_limits<double>::infinity();
    d.r_max_observed = 0.0;

    auto xp = [&](double t) {
        const PhaseState s = from_flat(sol(t));
        return s.x.dot(s.p);
    };

    for (std::size_t i = 0; i < times.size(); ++i) {
        const PhaseState s = from_flat(states[i]);
        const Invariants2D inv = invariants_of(s, params);
        d.max_energy_drift = std::max(d.max_energy_drift, std::abs(inv.energy - inv0.energy) / inv0.energy);
        d.max_angular_momentum_drift =
            std::max(d.max_angular_momentum_drift,
                     std::abs(inv.angular_momentum - inv0.angular_momentum) / std::abs(inv0.angular_momentum));
        const PhaseState v = hamilton_field(s, params);
        d.max_speed_defect = std::max(d.max_speed_defect, std::abs(v.x.norm() - params.c) / params.c);
        const double r = s.x.norm();
        d.r_min_observed = std::min(d.r_min_observed, r);
        d.r_max_observed = std::max(d.r_max_observed, r);

        // p(t) is C^1, so the chord between accepted steps tracks its closest approach to p = 0.
        if (i > 0) {
            const Vec2 a = from_flat(states[i - 1]).p, dp{s.p.x - a.x, s.p.y - a.y};
            const double len2 = dp.dot(dp);
            const double u = len2 > 0.0 ? std::clamp(-a.dot(dp) / len2, 0.0, 1.0) : 0.0;
            if (Vec2{a.x + u * dp.x, a.y + u * dp.y}.norm() < p_floor) {
                throw StiffnessError("simulate: |p| fell below the floor 1e-12 E/c");
            }
        }

        if (i > 0 && i + 1 < times.size()) {
            const double h = 1e-3 * std::min(times[i] - times[i - 1], times[i + 1] - times[i]);
            const double derivative = (xp(times[i] + h) - xp(times[i] - h)) / (2.0 * h);
            const double expected = inv0.energy - 1.5 * params.kappa2 * s.x.dot(s.x);
            d.max_xp_residual = std::max(d.max_xp_residual, std::abs(derivative - expected) / inv0.energy);
        }
    }

    // Radial turning points are the sign changes of x.p = r dr/dt |p| / c.
    double prev = xp(times.front());
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double cur = xp(times[i]);
        if (prev != 0.0 && cur != 0.0 && (prev > 0.0) != (cur > 0.0)) {
            const double t_turn = numerics::find_root_bracketed(xp, times[i - 1], times[i], 1e-14 * t_end);
            const PhaseState s = from_flat(sol(t_turn));
            const double r = s.x.norm();
            out.extrema.push_back({t_turn, r, s.p.norm(), prev < 0.0});
            d.r_min_observed = std::min(d.r_min_observed, r);
            d.r_max_observed = std::max(d.r_max_observed, r);
        }
        prev = cur;
    }
    return out;
}

double segment_period(double energy, const OscillatorParams& params) {
    params.validate();
    if (!(energy > 0.0)) throw DomainError("segment: energy must be positive");
    return 4.0 * std::sqrt(2.0 * energy) / params.kappa() / params.c;
}

SegmentPoint segment_motion(double t, double energy, const OscillatorParams& params) {
    const double period = segment_period(energy, params);
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("segment_motion: t must be finite and >= 0");
    const double cycles = std::floor(2.0 * t / period);
    const double sign = std::fmod(cycles, 2.0) == 0.0 ? 1.0 : -1.0;
    const double x = sign * params.c * (t - (2.0 * cycles + 1.0) * period / 4.0);
    return {x, (energy - 0.5 * params.kappa2 * x * x) / params.c};
}

}  // namespace mho::classical
