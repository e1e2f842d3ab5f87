#pragma once

#include <vector>

#include "mho/motion.hpp"
#include "mho/ode.hpp"

namespace mho::classical {

/// ODE state layout: (x1, x2, p1, p2).
using FlatState = numerics::OdeState<4>;

FlatState to_flat(const PhaseState& s);
PhaseState from_flat(const FlatState& y);

/// Hamilton's equations dx/dt = c p/|p|, dp/dt = -kappa^2 x.
/// Throws SingularFieldError when p = 0.
PhaseState hamilton_field(const PhaseState& s, const OscillatorParams& params);

/// A detected radial turning point along a simulated orbit.
struct RadialExtremum {
    double t = 0.0;
    double r = 0.0;
    double p = 0.0;  ///< |p| at the turning point
    bool minimum = false;
};

struct SimulationDiagnostics {
    double max_energy_drift = 0.0;            ///< max |E(t) - E0| / E0
    double max_angular_momentum_drift = 0.0;  ///< max |J(t) - J0| / |J0|
    double max_speed_defect = 0.0;            ///< max ||dx/dt| - c| / c
    double max_xp_residual = 0.0;             ///< max |d(x.p)/dt - (E - 3 kappa^2 x^2 / 2)| / E
    double r_min_observed = 0.0;
    double r_max_observed = 0.0;
};

struct Simulation {
    numerics::OdeSolution<4> solution;
    Invariants2D initial;
    SimulationDiagnostics diagnostics;
    std::vector<RadialExtremum> extrema;  ///< in time order
};

/// Orbit integration defaults: two orders tighter than the generic ODE defaults,
/// which keeps E and J drift below 1e-8 over tens of radial periods for lambda >= 0.01.
inline numerics::OdeOptions default_orbit_options() {
    numerics::OdeOptions options;
    options.rel_tol = 1e-12;
    options.abs_tol = 1e-14;
    return options;
}

/// Integrates an orbit with J != 0 over [0, t_end] and collects diagnostics:
/// drift of E and J, the speed defect, the residual of
/// d(x.p)/dt = E - (3/2) kappa^2 x^2 (central differences of the dense output),
/// and the radial turning points (zeros of x.p).
///
/// J = 0 throws SingularFieldError (use segment_motion); |p| falling below
/// 1e-12 E / c during integration throws StiffnessError.
Simulation simulate(const PhaseState& state0, const OscillatorParams& params, double t_end,
                    const numerics::OdeOptions& options = default_orbit_options());

struct SegmentPoint {
    double x = 0.0;
    double p = 0.0;
};

/// Period T = 4 r_max / c of the J = 0 motion, r_max = sqrt(2E) / kappa.
double segment_period(double energy, const OscillatorParams& params);

/// Exact J = 0 motion started at x = -r_max with p = 0:
/// x(t) = (-1)^[2t/T] c (t - (2[2t/T] + 1) T/4), p(t) = (E - kappa^2 x^2 / 2) / c.
SegmentPoint segment_motion(double t, double energy, const OscillatorParams& params);

}  // namespace mho::classical
