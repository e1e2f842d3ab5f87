#include "mho/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mho/airy.hpp"
#include "mho/classical_density.hpp"

namespace mho::quantum {
namespace {

constexpr double kPi = std::numbers::pi;
// Airy envelope at the truncation point beta k_max + a_n: Ai(14) ~ 1e-16 relative to O(1) values.
constexpr double kAiryCutoff = 14.0;
// Below this value of k_max r / hbar the sine is replaced by its two-term series.
constexpr double kSmallArgument = 1e-4;

void require_level(int n) {
    if (n < 1) throw DomainError("level index n must be >= 1");
}

numerics::QuadratureResult add(numerics::QuadratureResult a, const numerics::QuadratureResult& b) {
    a.value += b.value;
    a.abs_error_estimate += b.abs_error_estimate;
    a.evaluations += b.evaluations;
    return a;
}

// Power-law continuation of rho_n beyond r_cut, rho ~ rho(r_cut) (r / r_cut)^{-q}, with q
// measured inside the last octave. Returns integral_{r_cut}^inf 4 pi r^{2+power} rho dr.
double fitted_tail(const SalpeterLevel& level, int power, double r_cut) {
    const double r_inner = 0.75 * r_cut;
    const double rho_inner = level.density(r_inner);
    const double rho_cut = level.density(r_cut);
    if (rho_cut == 0.0) return 0.0;
    const double q = std::log(rho_inner / rho_cut) / std::log(r_cut / r_inner);
    const double excess = q - 3.0 - power;
    if (!(excess > 0.5)) {
        throw ConvergenceError("position tail decays too slowly for the fitted continuation", 0.0,
                               std::numeric_limits<double>::infinity());
    }
    return 4.0 * kPi * rho_cut * std::pow(r_cut, 3.0 + power) / excess;
}

}  // namespace

std::string_view to_string(Space space) { return space == Space::Momentum ? "momentum" : "position"; }

EnergyLevel energy_level(int n, const OscillatorParams& params, int l) {
    params.validate();
    require_level(n);
    if (l != 0) throw UnsupportedError("only l = 0 levels have a closed-form solution");
    const double s = std::cbrt(2.0 * params.c * params.kappa() * params.hbar);
    const double a = specfun::airy_zero(n);
    return {n, -0.5 * s * s * a, a, specfun::airy_ai_prime(a)};
}

SalpeterLevel::SalpeterLevel(int n, const OscillatorParams& params)
    : params_(params), level_(energy_level(n, params)) {
    s_ = std::cbrt(2.0 * params.c * params.kappa() * params.hbar);
    beta_ = 2.0 * params.c / (s_ * s_);
    k_max_ = (kAiryCutoff - level_.airy_zero) / beta_;
    r_max_ = std::sqrt(2.0 * level_.energy) / params.kappa();
    momentum_prefactor_ = std::sqrt(params.c / (2.0 * kPi)) / (s_ * level_.airy_prime_at_zero);
    position_prefactor_ = std::sqrt(params.c / params.hbar) / (kPi * s_ * level_.airy_prime_at_zero);
    // A quarter of the shortest Airy wavelength on [0, k_max], reached at k = 0.
    max_panel_ = 0.25 * 2.0 * kPi / (beta_ * std::sqrt(std::max(1.0, -level_.airy_zero)));

    const double a = level_.airy_zero, beta = beta_;
    moment1_ = numerics::quad_adaptive([&](double k) { return k * specfun::airy_ai(beta * k + a); }, 0.0, k_max_,
                                       1e-13, 1e-300)
                   .value;
    moment3_ = numerics::quad_adaptive([&](double k) { return k * k * k * specfun::airy_ai(beta * k + a); }, 0.0,
                                       k_max_, 1e-13, 1e-300)
                   .value;
}

double SalpeterLevel::momentum(double k) const {
    if (!(k >= 0.0)) throw DomainError("momentum wavefunction needs k >= 0");
    const double x = beta_ * k;
    const double a = level_.airy_zero;
    if (x < 1e-4) {
        // Ai(a + x) / k = beta Ai'(a) (1 + a x^2 / 6 + x^3 / 12 + ...) since Ai(a) = 0.
        return momentum_prefactor_ * beta_ * level_.airy_prime_at_zero * (1.0 + x * x * (a / 6.0 + x / 12.0));
    }
    return momentum_prefactor_ * specfun::airy_ai(x + a) / k;
}

double SalpeterLevel::sine_transform(double r) const {
    const double a = level_.airy_zero, beta = beta_;
    auto envelope = [a, beta](double k) { return specfun::airy_ai(beta * k + a); };
    return numerics::quad_sine(envelope, r / params_.hbar, 0.0, k_max_, 1e-11, 0.0, max_panel_).value;
}

double SalpeterLevel::position(double r) const {
    if (!(r >= 0.0)) throw DomainError("position wavefunction needs r >= 0");
    const double hbar = params_.hbar;
    if (k_max_ * r / hbar < kSmallArgument) {
        return position_prefactor_ * (moment1_ / hbar - r * r * moment3_ / (6.0 * hbar * hbar * hbar));
    }
    return position_prefactor_ * sine_transform(r) / r;
}

double SalpeterLevel::density(double r) const {
    const double psi = position(r);
    return psi * psi;
}

numerics::QuadratureResult SalpeterLevel::momentum_norm(double rel_tol) const {
    auto integrand = [this](double k) {
        const double v = momentum(k);
        return 4.0 * kPi * k * k * v * v;
    };
    return add(numerics::quad_adaptive(integrand, 0.0, k_max_, rel_tol, 1e-300),
               numerics::quad_adaptive_semi_infinite(integrand, k_max_, rel_tol, 1e-300));
}

numerics::QuadratureResult SalpeterLevel::position_moment(int power, double r_cut, double rel_tol) const {
    if (!(r_cut > r_max_)) throw DomainError("position_moment: r_cut must exceed r_max");
    auto integrand = [this, power](double r) { return 4.0 * kPi * std::pow(r, 2 + power) * density(r); };
    auto result = add(numerics::quad_adaptive(integrand, 0.0, r_max_, rel_tol, 1e-14),
                      numerics::quad_adaptive(integrand, r_max_, r_cut, rel_tol, 1e-14));
    const double tail = fitted_tail(*this, power, r_cut);
    result.value += tail;
    result.abs_error_estimate += 0.5 * tail;
    return result;
}

numerics::QuadratureResult SalpeterLevel::position_norm(double cut_factor, double rel_tol) const {
    return position_moment(0, cut_factor * r_max_, rel_tol);
}

RadialWavefunction momentum_wavefunction(int n, const OscillatorParams& params, std::span<const double> k_grid) {
    const SalpeterLevel level(n, params);
    RadialWavefunction out;
    out.n = n;
    out.space = Space::Momentum;
    out.beta = level.beta();
    double prev = 0.0;
    for (double k : k_grid) {
        if (!(k > 0.0) || !(k > prev)) throw DomainError("momentum grid must be positive and increasing");
        prev = k;
        out.grid.push_back(k);
        out.values.push_back(level.momentum(k));
    }
    out.normalization_defect = std::abs(level.momentum_norm().value - 1.0);
    return out;
}

RadialWavefunction position_wavefunction(int n, const OscillatorParams& params, std::span<const double> r_grid) {
    const SalpeterLevel level(n, params);
    RadialWavefunction out;
    out.n = n;
    out.space = Space::Position;
    out.beta = level.beta();
    double prev = 0.0;
    for (double r : r_grid) {
        if (!(r > 0.0) || !(r > prev)) throw DomainError("position grid must be positive and increasing");
        prev = r;
        out.grid.push_back(r);
        out.values.push_back(level.position(r));
    }
    out.normalization_defect = std::abs(level.position_norm().value - 1.0);
    return out;
}

std::vector<double> default_position_grid(int n, const OscillatorParams& params, int points) {
    if (points < 1) throw DomainError("grid needs at least one point");
    const EnergyLevel lv = energy_level(n, params);
    const double r_max = std::sqrt(2.0 * lv.energy) / params.kappa();
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = 2.0 * r_max * (i + 1) / points;
    return grid;
}

std::vector<double> default_momentum_grid(int n, const OscillatorParams& params, int points) {
    if (points < 1) throw DomainError("grid needs at least one point");
    const SalpeterLevel level(n, params);
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = level.k_max() * (i + 1) / points;
    return grid;
}

Expectations expectations(int n, const OscillatorParams& params) {
    const SalpeterLevel level(n, params);
    const double a = level.level().airy_zero, beta = level.beta(), k_max = level.k_max();
    const double c = params.c, hbar = params.hbar;

    auto kinetic_integrand = [&](double k) {
        const double v = level.momentum(k);
        return c * 4.0 * kPi * k * k * k * v * v;
    };
    const auto kinetic = add(numerics::quad_adaptive(kinetic_integrand, 0.0, k_max, 1e-12, 1e-300),
                             numerics::quad_adaptive_semi_infinite(kinetic_integrand, k_max, 1e-12, 1e-300));

    // chi(k) = sqrt(4 pi) k psi~_n(k) = sqrt(4 pi) A Ai(beta k + a_n), so <r^2> = hbar^2 int chi'^2 dk.
    const double amplitude = std::sqrt(4.0 * kPi) * std::sqrt(c / (2.0 * kPi)) /
                             (std::cbrt(2.0 * c * params.kappa() * hbar) * level.level().airy_prime_at_zero);
    auto gradient_integrand = [&](double k) {
        const double d = amplitude * beta * specfun::airy_ai_prime(beta * k + a);
        return hbar * hbar * d * d;
    };
    const auto r2 = add(numerics::quad_adaptive(gradient_integrand, 0.0, k_max, 1e-12, 1e-300),
                        numerics::quad_adaptive_semi_infinite(gradient_integrand, k_max, 1e-12, 1e-300));

    const auto mean_r = level.position_moment(1, 2.0 * level.r_max());

    Expectations out;
    out.energy = level.level().energy;
    out.kinetic = kinetic.value;
    out.kinetic_error = kinetic.abs_error_estimate;
    out.mean_r2 = r2.value;
    out.potential = 0.5 * params.kappa2 * r2.value;
    out.potential_error = 0.5 * params.kappa2 * r2.abs_error_estimate;
    out.mean_r = mean_r.value;
    out.mean_r_error = mean_r.abs_error_estimate;
    return out;
}

double orthonormality_check(int m, int n, const OscillatorParams& params) {
    params.validate();
    require_level(m);
    require_level(n);
    const double am = specfun::airy_zero(m), an = specfun::airy_zero(n);
    auto integrand = [am, an](double x) { return specfun::airy_ai(x + am) * specfun::airy_ai(x + an); };
    const double x_cut = kAiryCutoff - std::min(am, an);
    const double integral = numerics::quad_adaptive(integrand, 0.0, x_cut, 1e-13, 1e-13).value +
                            numerics::quad_adaptive_semi_infinite(integrand, x_cut, 1e-13, 1e-16).value;
    return integral / (specfun::airy_ai_prime(am) * specfun::airy_ai_prime(an));
}

DensityComparison density_compare(int n, const OscillatorParams& params, std::span<const double> r_grid) {
    const SalpeterLevel level(n, params);
    DensityComparison out;
    out.n = n;
    out.energy = level.level().energy;
    out.r_max = level.r_max();
    const double r_max = out.r_max;

    double prev = 0.0;
    for (double r : r_grid) {
        if (!(r > 0.0) || !(r > prev)) throw DomainError("density grid must be positive and increasing");
        prev = r;
        out.rows.push_back({r, level.density(r), classical::classical_density(r, out.energy, params)});
    }

    const double r_cut = 6.0 * r_max;
    auto radial_q = [&](double r) { return 4.0 * kPi * r * r * level.density(r); };
    auto inside = [&](double r) { return std::abs(radial_q(r) - 1.0 / r_max); };
    auto l1 = add(numerics::quad_adaptive(inside, 0.0, r_max, 1e-9, 1e-12),
                  numerics::quad_adaptive(radial_q, r_max, r_cut, 1e-9, 1e-14));
    const double tail = fitted_tail(level, 0, r_cut);
    l1.value += tail;
    l1.abs_error_estimate += 0.5 * tail;
    out.l1_distance = l1;
    out.quantum_norm = level.position_norm();
    out.classical_norm = 1.0;  // (1 / r_max) integrated over [0, r_max]

    // Cumulative distributions on the grid (trapezoid on 4 pi r^2 rho from r = 0).
    double cdf = 0.0, r_prev = 0.0, f_prev = 0.0;
    for (const auto& row : out.rows) {
        const double f = 4.0 * kPi * row.r * row.r * row.rho_quantum;
        cdf += 0.5 * (f + f_prev) * (row.r - r_prev);
        const double cdf_classical = std::min(row.r, r_max) / r_max;
        out.kolmogorov_distance = std::max(out.kolmogorov_distance, std::abs(cdf - cdf_classical));
        r_prev = row.r;
        f_prev = f;
    }
    return out;
}

}  // namespace mho::quantum
