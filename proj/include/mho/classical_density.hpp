#pragma once

#include "mho/params.hpp"
#include "mho/quadrature.hpp"

namespace mho::classical {

/// r_max = sqrt(2E) / kappa, the J = 0 turning radius.
double segment_rmax(double energy, const OscillatorParams& params);

/// Density of the isotropic ensemble of J = 0 orbits of energy E:
/// theta(r_max - r) / (4 pi r_max r^2). Returns +inf at r = 0.
double classical_density(double r, double energy, const OscillatorParams& params);

struct ClassicalAverages {
    double mean_potential = 0.0;  ///< <kappa^2 r^2 / 2> = E/3
    double mean_kinetic = 0.0;    ///< <c p> = 2E/3
    double mean_r = 0.0;          ///< <r> = r_max / 2
};

ClassicalAverages classical_averages(double energy, const OscillatorParams& params);

struct ClassicalAveragesQuadrature {
    numerics::QuadratureResult norm;
    numerics::QuadratureResult mean_potential;
    numerics::QuadratureResult mean_kinetic;
    numerics::QuadratureResult mean_r;
};

/// The same moments integrated against rho_cl(r) 4 pi r^2 dr on [0, r_max].
ClassicalAveragesQuadrature classical_averages_by_quadrature(double energy, const OscillatorParams& params,
                                                             double rel_tol = 1e-12);

}  // namespace mho::classical
