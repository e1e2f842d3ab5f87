#include "mho/classical_density.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mho::classical {

double segment_rmax(double energy, const OscillatorParams& params) {
    params.validate();
    if (!(energy > 0.0)) throw DomainError("energy must be positive");
    return std::sqrt(2.0 * energy) / params.kappa();
}

double classical_density(double r, double energy, const OscillatorParams& params) {
    const double r_max = segment_rmax(energy, params);
    if (!(r >= 0.0)) throw DomainError("classical_density: r must be >= 0");
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    if (r > r_max) return 0.0;
    return 1.0 / (4.0 * std::numbers::pi * r_max * r * r);
}

ClassicalAverages classical_averages(double energy, const OscillatorParams& params) {
    const double r_max = segment_rmax(energy, params);
    return {energy / 3.0, 2.0 * energy / 3.0, 0.5 * r_max};
}

ClassicalAveragesQuadrature classical_averages_by_quadrature(double energy, const OscillatorParams& params,
                                                             double rel_tol) {
    const double r_max = segment_rmax(energy, params);
    // rho_cl 4 pi r^2 is the constant 1 / r_max on the support; written out
    // through classical_density so the quadrature exercises it.
    auto moment = [&](auto weight) {
        auto integrand = [&](double r) {
            return weight(r) * classical_density(r, energy, params) * 4.0 * std::numbers::pi * r * r;
        };
        return numerics::quad_adaptive(integrand, 0.0, r_max, rel_tol, 1e-300);
    };
    const double k2 = params.kappa2;
    return {moment([](double) { return 1.0; }),
            moment([k2](double r) { return 0.5 * k2 * r * r; }),
            moment([&](double r) { return energy - 0.5 * k2 * r * r; }),  // c p on the orbit
            moment([](double r) { return r; })};
}

}  // namespace mho::classical
