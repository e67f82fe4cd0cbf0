#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "truncprod/seeding.hpp"
#include "truncprod/special_functions.hpp"

using namespace truncprod;

namespace {

// Adaptive Simpson quadrature; the independent oracle for the incomplete
// gamma values asserted below.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Truncated integral_x^inf t^{a-1} e^{-t} dt for real a; the tail beyond
// x + 60 is below 1e-20 for the arguments used here.
double gamma_upper_quadrature(double a, double x) {
    return integrate([a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); }, x, x + 60.0);
}

}  // namespace

TEST_CASE("gamma_upper: Gamma(1, x) = e^{-x}") {
    CHECK(gamma_upper(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(gamma_upper(1.0, 1.0) == doctest::Approx(0.36788).epsilon(1e-4));
    CHECK(gamma_upper(1.0, 7.5) == doctest::Approx(std::exp(-7.5)).epsilon(1e-12));
}

TEST_CASE("gamma_upper: Gamma(0, 1) equals the quadrature oracle") {
    const double oracle = integrate([](double t) { return std::exp(-t) / t; }, 1.0, 70.0);
    CHECK(oracle == doctest::Approx(0.21938).epsilon(1e-4));
    CHECK(gamma_upper(0.0, 1.0) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(expint_e1(1.0) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("gamma_upper: matches quadrature across both evaluation branches") {
    for (double a : {0.3, 1.7, 2.0, 5.5, 9.0}) {
        for (double x : {0.2, 1.0, 3.0, 12.0, 30.0}) {
            const double oracle = gamma_upper_quadrature(a, x);
            CHECK(gamma_upper(a, x) == doctest::Approx(oracle).epsilon(1e-9));
        }
    }
}

TEST_CASE("gamma_upper: recurrence Gamma(a+1,x) = a Gamma(a,x) + x^a e^{-x}") {
    Rng rng(SeedSpec{7001, 0});
    for (int trial = 0; trial < 40; ++trial) {
        const Complex a(4.0 * rng.uniform() - 1.5, 4.0 * rng.uniform() - 2.0);
        const double x = 0.1 + 9.9 * rng.uniform();
        const Complex lhs = gamma_upper(a + 1.0, Complex(x));
        const Complex rhs = a * gamma_upper(a, Complex(x)) + std::exp(a * std::log(Complex(x)) - x);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (std::abs(lhs) + 1.0));
    }
}

TEST_CASE("gamma_upper: complex second argument on the contour region") {
    // Self-consistency between the two branches where their regions overlap.
    const Complex a(0.0, 6.0);
    const Complex x(2.0, 9.0);  // |x| slightly above |a| + 2
    const Complex via_cf = std::exp(log_gamma_upper_cf(a, x));
    const Complex via_series = std::exp(log_gamma(a)) * (1.0 - regularized_lower_series(a, x));
    CHECK(std::abs(via_cf - via_series) < 1e-9 * std::abs(via_cf));
}

TEST_CASE("gamma_upper: negative integer order by downward recurrence") {
    const double oracle = integrate([](double t) { return std::exp(-t) / (t * t); }, 1.0, 70.0);
    CHECK(gamma_upper(-1.0, 1.0) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("gamma_upper: domain errors") {
    CHECK_THROWS_AS(gamma_upper(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_upper(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(expint_e1(-1.0), std::domain_error);
}

TEST_CASE("expint_e1_scaled: large-argument asymptotics e^x E_1(x) ~ 1/x") {
    for (double x : {50.0, 300.0, 700.0}) {
        const double v = expint_e1_scaled(x);
        // 1/x - 1/x^2 <= e^x E_1(x) <= 1/x for x > 0
        CHECK(v <= 1.0 / x);
        CHECK(v >= 1.0 / x - 1.0 / (x * x));
    }
    CHECK(expint_e1_scaled(1.0) == doctest::Approx(std::exp(1.0) * expint_e1(1.0)).epsilon(1e-12));
}

TEST_CASE("log_gamma: real axis agrees with lgamma, reflection holds") {
    for (double z : {0.5, 1.0, 2.5, 10.0, 150.5}) {
        CHECK(log_gamma(Complex(z)).real() == doctest::Approx(std::lgamma(z)).epsilon(1e-13));
        CHECK(std::abs(log_gamma(Complex(z)).imag()) < 1e-12);
    }
    // Gamma(z) Gamma(1-z) = pi / sin(pi z) spot checks off the axis.
    for (Complex z : {Complex(0.3, 0.4), Complex(-1.2, 2.0), Complex(0.1, -25.0)}) {
        const Complex lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
        const Complex rhs = std::numbers::pi / std::sin(std::numbers::pi * z);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
}
