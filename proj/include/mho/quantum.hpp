#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mho/params.hpp"
#include "mho/quadrature.hpp"

namespace mho::quantum {

/// Bound state n >= 1 of the massless spinless Salpeter equation with
/// potential kappa^2 r^2 / 2 at zero angular momentum.
struct EnergyLevel {
    int n = 0;
    double energy = 0.0;           ///< E_n = -(2 c kappa hbar)^{2/3} a_n / 2
    double airy_zero = 0.0;        ///< a_n
    double airy_prime_at_zero = 0.0;  ///< Ai'(a_n)
};

/// Only l = 0 has a closed-form solution; any other l throws UnsupportedError.
EnergyLevel energy_level(int n, const OscillatorParams& params, int l = 0);

enum class Space { Momentum, Position };

std::string_view to_string(Space space);

struct RadialWavefunction {
    int n = 0;
    Space space = Space::Momentum;
    std::vector<double> grid;    ///< k (J s / m) or r (m)
    std::vector<double> values;  ///< psi~_n(k) or psi_n(r)
    double beta = 0.0;           ///< 2c / (2 c kappa hbar)^{2/3}
    double normalization_defect = 0.0;  ///< |integral 4 pi q^2 |psi|^2 dq - 1|
};

/// Everything needed to evaluate one level: scale factors, the Airy zero and
/// the prefactors of the normalized momentum and position wavefunctions.
///
///   psi~_n(k) = sqrt(c / 2pi) s^{-1} Ai(beta k + a_n) / (Ai'(a_n) k)
///   psi_n(r)  = sqrt(c / hbar) / (pi s Ai'(a_n) r) integral_0^kmax sin(k r / hbar) Ai(beta k + a_n) dk
///
/// with s = (2 c kappa hbar)^{1/3}, beta = 2c / s^2 and beta kmax + a_n = 14.
class SalpeterLevel {
public:
    SalpeterLevel(int n, const OscillatorParams& params);

    const EnergyLevel& level() const { return level_; }
    const OscillatorParams& params() const { return params_; }
    double beta() const { return beta_; }
    double k_max() const { return k_max_; }
    /// Classical turning radius sqrt(2 E_n) / kappa of the J = 0 motion.
    double r_max() const { return r_max_; }

    /// Momentum-space wavefunction; finite limit sqrt(c/2pi) beta / s at k = 0.
    double momentum(double k) const;
    /// Position-space wavefunction through the sine transform.
    double position(double r) const;
    /// rho_n(r) = |psi_n(r)|^2.
    double density(double r) const;

    /// integral_0^inf 4 pi k^2 |psi~_n|^2 dk.
    numerics::QuadratureResult momentum_norm(double rel_tol = 1e-12) const;
    /// integral_0^inf 4 pi r^2 |psi_n|^2 dr, integrated to cut_factor * r_max plus a fitted tail.
    numerics::QuadratureResult position_norm(double cut_factor = 6.0, double rel_tol = 1e-9) const;
    /// integral_0^inf 4 pi r^{2+power} rho_n dr: quadrature to r_cut plus a power-law tail
    /// fitted to rho_n on the last octave; half the tail is added to the error.
    numerics::QuadratureResult position_moment(int power, double r_cut, double rel_tol = 1e-9) const;

private:
    double sine_transform(double r) const;

    OscillatorParams params_;
    EnergyLevel level_;
    double s_ = 0.0;
    double beta_ = 0.0;
    double k_max_ = 0.0;
    double r_max_ = 0.0;
    double momentum_prefactor_ = 0.0;
    double position_prefactor_ = 0.0;
    double max_panel_ = 0.0;
    double moment1_ = 0.0;  ///< integral_0^kmax k Ai(beta k + a_n) dk
    double moment3_ = 0.0;  ///< integral_0^kmax k^3 Ai(beta k + a_n) dk
};

RadialWavefunction momentum_wavefunction(int n, const OscillatorParams& params, std::span<const double> k_grid);

RadialWavefunction position_wavefunction(int n, const OscillatorParams& params, std::span<const double> r_grid);

/// Default position grid: `points` equally spaced radii on (0, 2 r_max(E_n)].
std::vector<double> default_position_grid(int n, const OscillatorParams& params, int points = 400);

/// Default momentum grid: `points` equally spaced momenta on (0, k_max].
std::vector<double> default_momentum_grid(int n, const OscillatorParams& params, int points = 400);

struct Expectations {
    double energy = 0.0;
    double kinetic = 0.0;    ///< c integral 4 pi k^3 |psi~_n|^2 dk
    double potential = 0.0;  ///< (kappa^2 / 2) <r^2>
    double mean_r = 0.0;     ///< position-space <r>
    double mean_r2 = 0.0;    ///< hbar^2 integral |d chi / dk|^2 dk, chi = sqrt(4 pi) k psi~_n
    double kinetic_error = 0.0;
    double potential_error = 0.0;
    double mean_r_error = 0.0;
};

/// Expectation values of level n. <r^2> comes from the momentum representation
/// (the gradient of psi~), so kinetic + potential = E_n is a genuine check.
/// <r> integrates to 2 r_max(E_n) plus the fitted tail.
Expectations expectations(int n, const OscillatorParams& params);

/// integral_0^inf Ai(x + a_m) Ai(x + a_n) dx / (Ai'(a_m) Ai'(a_n)), the L^2
/// inner product of the normalized momentum wavefunctions.
double orthonormality_check(int m, int n, const OscillatorParams& params);

struct DensityRow {
    double r = 0.0;
    double rho_quantum = 0.0;
    double rho_classical = 0.0;
};

struct DensityComparison {
    int n = 0;
    double energy = 0.0;
    double r_max = 0.0;
    std::vector<DensityRow> rows;
    numerics::QuadratureResult l1_distance;    ///< integral |rho_n - rho_cl| 4 pi r^2 dr
    numerics::QuadratureResult quantum_norm;   ///< integral rho_n 4 pi r^2 dr
    double classical_norm = 0.0;               ///< integral rho_cl 4 pi r^2 dr (exactly 1)
    double kolmogorov_distance = 0.0;          ///< max over the grid of |F_n(r) - F_cl(r)|
};

/// Pairs rho_n(r) with the classical density at energy E_n on r_grid and
/// integrates their L1 distance (quadrature to 6 r_max plus the fitted tail).
DensityComparison density_compare(int n, const OscillatorParams& params, std::span<const double> r_grid);

}  // namespace mho::quantum
