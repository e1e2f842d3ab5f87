#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mho/airy.hpp"
#include "mho/errors.hpp"
#include "mho/ode.hpp"
#include "mho/quadrature.hpp"
#include "mho/roots.hpp"

using namespace mho;
using namespace mho::numerics;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kA1 = -2.338107410459767038;        // mpmath airyaizero(1)
constexpr double kAiPrimeA1 = 0.70121082272069136;   // mpmath airyai(a1, 1)
}  // namespace

TEST_CASE("root finder on simple brackets") {
    CHECK(std::abs(find_root_bracketed([](double x) { return x; }, -1.0, 1.0, 1e-12)) <= 1e-12);

    // Heron iteration as the independent value of sqrt(2).
    double heron = 1.5;
    for (int i = 0; i < 8; ++i) heron = 0.5 * (heron + 2.0 / heron);
    const double r = find_root_bracketed([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12);
    CHECK(r == doctest::Approx(heron).epsilon(1e-12));

    const double z = find_root_bracketed([](double x) { return specfun::airy_ai(x); }, -3.0, -2.0, 1e-12);
    CHECK(std::abs(z - kA1) <= 2e-12);

    const double zn = find_root_bracketed([](double x) { return x * x - 2.0; }, [](double x) { return 2.0 * x; },
                                          1.0, 2.0, 1e-13);
    CHECK(std::abs(zn - heron) <= 1e-13);
}

TEST_CASE("root finder accepts roots on the bracket ends") {
    CHECK(find_root_bracketed([](double x) { return x - 1.0; }, 1.0, 3.0, 1e-12) == 1.0);
    CHECK(find_root_bracketed([](double x) { return x - 3.0; }, 1.0, 3.0, 1e-12) == 3.0);
}

TEST_CASE("root finder stays inside the bracket") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    int tested = 0;
    for (int i = 0; i < 500; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        auto f = [](double x) { return std::cos(x) + 0.3 * x - 0.1; };
        if (f(a) * f(b) > 0.0 || b - a < 1e-3) continue;
        const double r = find_root_bracketed(f, a, b, 1e-12);
        CHECK(r >= a);
        CHECK(r <= b);
        CHECK(std::abs(f(r)) <= 1e-10);
        ++tested;
    }
    CHECK(tested > 50);
}

TEST_CASE("root finder errors") {
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), BracketError);
    CHECK_THROWS_AS(find_root_bracketed([](double) { return std::nan(""); }, -1.0, 1.0, 1e-12), EvaluationError);
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x; }, 1.0, -1.0, 1e-12), DomainError);
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x; }, -1.0, 1.0, 0.0), DomainError);
    // A jump without a root still closes the bracket on the discontinuity.
    const double jump = find_root_bracketed([](double x) { return x < 0.3 ? -1.0 : 1.0; }, -1.0, 2.0, 1e-10);
    CHECK(std::abs(jump - 0.3) <= 1e-10);
}

TEST_CASE("Gauss-Legendre rules are exact for polynomials of degree 2n - 1") {
    for (int n : {1, 2, 5, 15, 20}) {
        const auto& rule = gauss_legendre(n);
        REQUIRE(rule.size() == static_cast<std::size_t>(n));
        const int degree = 2 * n - 1;
        double sum = 0.0, even = 0.0;
        for (const auto& node : rule) {
            sum += node.w * std::pow(node.x, degree);
            even += node.w * std::pow(node.x, degree - 1);
        }
        CHECK(std::abs(sum) <= 1e-14);
        CHECK(even == doctest::Approx(2.0 / degree).epsilon(1e-13));
    }
}

TEST_CASE("adaptive quadrature: reference integrals") {
    const auto one = quad_adaptive([](double) { return 1.0; }, 0.0, 1.0);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.evaluations > 0);
    CHECK(one.abs_error_estimate >= 0.0);

    const auto sing = quad_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 1e-12);
    CHECK(std::abs(sing.value - 2.0) <= 2e-10);

    const auto log_sing = quad_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12, 1e-14);
    CHECK(std::abs(log_sing.value + 1.0) <= 1e-12);

    const auto exp_tail = quad_adaptive_semi_infinite([](double x) { return std::exp(-x); }, 0.0);
    CHECK(exp_tail.value == doctest::Approx(1.0).epsilon(1e-12));
    const auto inv_sq = quad_adaptive_semi_infinite([](double x) { return 1.0 / (x * x); }, 1.0);
    CHECK(inv_sq.value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("adaptive quadrature reproduces the Airy normalization integral") {
    auto f = [](double x) {
        const double v = specfun::airy_ai(x + kA1);
        return v * v;
    };
    const auto q = quad_adaptive_semi_infinite(f, 0.0, 1e-12, 1e-15);

    // Trapezoid oracle: f'(0) = 0 and f decays super-exponentially, so the
    // endpoint corrections of the Euler-Maclaurin series vanish.
    const double h = 1e-3;
    double trap = 0.5 * f(0.0);
    for (int i = 1; i <= 25000; ++i) trap += f(i * h);
    trap *= h;

    CHECK(std::abs(q.value - trap) <= 1e-9);
    CHECK(std::abs(q.value - kAiPrimeA1 * kAiPrimeA1) <= 1e-12);
}

TEST_CASE("adaptive quadrature reports budget exhaustion") {
    auto wild = [](double x) { return std::sin(1.0 / x) / x; };
    try {
        (void)quad_adaptive(wild, 1e-6, 1.0, 1e-12, 1e-14, 8);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_value()));
        CHECK(e.best_error() > 0.0);
    }
    CHECK_THROWS_AS(quad_adaptive([](double x) { return x; }, 0.0, 1.0, 0.0, 1e-12), DomainError);
}

TEST_CASE("sine quadrature: reference integrals") {
    const auto a = quad_sine([](double) { return 1.0; }, 1.0, 0.0, kPi);
    CHECK(a.value == doctest::Approx(2.0).epsilon(1e-14));

    const auto b = quad_sine([](double k) { return std::exp(-k); }, 1.0, 0.0, 40.0);
    CHECK(std::abs(b.value - 0.5) <= 1e-12);

    auto g = [](double k) { return specfun::airy_ai(k + kA1); };
    const double k_max = 14.0 - kA1;
    const auto s = quad_sine(g, 3.0, 0.0, k_max, 1e-12);
    const auto ref = quad_adaptive([&](double k) { return g(k) * std::sin(3.0 * k); }, 0.0, k_max, 1e-13, 1e-15);
    CHECK(std::abs(s.value - ref.value) <= 1e-10);

    CHECK_THROWS_AS(quad_sine(g, 0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(quad_sine(g, -1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("sine and adaptive quadrature agree on a decaying integrand") {
    for (double omega : {0.5, 2.0, 7.0, 25.0}) {
        auto g = [](double k) { return k * k * std::exp(-k); };
        const auto s = quad_sine(g, omega, 0.0, 60.0, 1e-12);
        const auto q = quad_adaptive([&](double k) { return g(k) * std::sin(omega * k); }, 0.0, 60.0, 1e-13, 1e-15);
        // Closed form of the infinite integral: Im 2 / (1 - i omega)^3.
        const double exact = std::imag(2.0 / std::pow(std::complex<double>(1.0, -omega), 3));
        CHECK(std::abs(s.value - q.value) <= 1e-9);
        CHECK(std::abs(s.value - exact) <= 1e-11);
    }
}

TEST_CASE("ode: constant and rotation fields") {
    auto still = integrate_ode<1>([](double, const OdeState<1>&) { return OdeState<1>{0.0}; }, {1.0}, 0.0, 10.0);
    CHECK(still.states().back()[0] == 1.0);
    CHECK(still.t_end() == 10.0);

    OdeOptions opt;
    opt.rel_tol = 1e-10;
    auto rot = [](double, const OdeState<2>& y) { return OdeState<2>{y[1], -y[0]}; };
    const auto sol = integrate_ode<2>(rot, {1.0, 0.0}, 0.0, 2.0 * kPi, opt);
    CHECK(std::abs(sol.states().back()[0] - 1.0) <= 1e-8);
    CHECK(std::abs(sol.states().back()[1]) <= 1e-8);

    REQUIRE(sol.times().size() == sol.states().size());
    for (std::size_t i = 1; i < sol.times().size(); ++i) CHECK(sol.times()[i] > sol.times()[i - 1]);
    for (std::size_t i = 0; i < sol.times().size(); ++i) {
        const auto y = sol(sol.times()[i]);
        CHECK(std::abs(y[0] - sol.states()[i][0]) <= 1e-14);
        CHECK(std::abs(y[1] - sol.states()[i][1]) <= 1e-14);
    }
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 2.0 * kPi * i / 1000.0;
        const auto y = sol(t);
        worst = std::max({worst, std::abs(y[0] - std::cos(t)), std::abs(y[1] + std::sin(t))});
    }
    CHECK(worst <= 1e-8);
    CHECK_THROWS_AS(sol(7.0), DomainError);
}

TEST_CASE("ode: conserved energy drifts at most 100 tol per unit time") {
    // Anharmonic oscillator H = v^2/2 + q^4/4.
    auto field = [](double, const OdeState<2>& y) { return OdeState<2>{y[1], -y[0] * y[0] * y[0]}; };
    auto energy = [](const OdeState<2>& y) { return 0.5 * y[1] * y[1] + 0.25 * std::pow(y[0], 4); };
    for (double tol : {1e-6, 1e-8, 1e-10}) {
        OdeOptions opt;
        opt.rel_tol = tol;
        opt.abs_tol = tol;
        const double t_end = 50.0;
        const auto sol = integrate_ode<2>(field, {1.0, 0.5}, 0.0, t_end, opt);
        const double e0 = energy(sol.states().front());
        double drift = 0.0;
        for (const auto& y : sol.states()) drift = std::max(drift, std::abs(energy(y) - e0) / e0);
        CHECK(drift <= 100.0 * tol * t_end);
    }
}

TEST_CASE("ode: error reporting") {
    auto poisoned = [](double t, const OdeState<1>&) {
        return OdeState<1>{t < 1.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN()};
    };
    try {
        (void)integrate_ode<1>(poisoned, {0.0}, 0.0, 2.0);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.last_time() <= 1.0);
        REQUIRE(e.last_state().size() == 1);
        CHECK(std::abs(e.last_state()[0] - e.last_time()) <= 1e-9);
    }

    OdeOptions tight;
    tight.max_steps = 10;
    auto rot = [](double, const OdeState<2>& y) { return OdeState<2>{y[1], -y[0]}; };
    CHECK_THROWS_AS(integrate_ode<2>(rot, {1.0, 0.0}, 0.0, 1000.0, tight), StiffnessError);

    // Finite-time blow-up of y' = y^2 at t = 1.
    auto blowup = [](double, const OdeState<1>& y) { return OdeState<1>{y[0] * y[0]}; };
    CHECK_THROWS_AS(integrate_ode<1>(blowup, {1.0}, 0.0, 2.0), NumericalError);

    CHECK_THROWS_AS(integrate_ode<2>(rot, {1.0, 0.0}, 1.0, 0.0), DomainError);
}
