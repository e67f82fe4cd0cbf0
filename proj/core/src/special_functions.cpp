#include "truncprod/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "truncprod/spectrum.hpp"

namespace truncprod {

namespace {

constexpr double kPi = std::numbers::pi;

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    if (z.imag() < 0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = e^{-i pi z} (i/2) (1 - e^{2 i pi z});  |e^{2 i pi z}| <= 1 here
    return Complex(0, -kPi) * z + std::log(Complex(0, 0.5)) + std::log(1.0 - std::exp(Complex(0, 2 * kPi) * z));
}

constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

Complex log_gamma(Complex z) {
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const Complex t = z + 7.5;
    return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

namespace detail {

bool use_continued_fraction(Complex a, Complex x) {
    return std::abs(x) > std::abs(a) + 2.0;
}

}  // namespace detail

namespace {

// Modified Lentz evaluation of the continued fraction for
// Gamma(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - 2(2-a)/(...))).
// Returns log of the fraction part (the full log is assembled by the caller).
Complex cf_log_fraction(Complex a, Complex x) {
    constexpr double tiny = 1e-300;
    Complex b = x + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = (b == Complex(0.0)) ? Complex(1.0 / tiny) : 1.0 / b;
    Complex h = d;
    for (int i = 1; i < 20000; ++i) {
        const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const Complex delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) return std::log(h);
    }
    throw numerical_error("incomplete gamma continued fraction did not converge");
}

Complex e1_series(Complex x) {
    Complex s = -kEulerGamma - std::log(x);
    Complex term = 1.0;
    for (int n = 1; n < 500; ++n) {
        term *= -x / static_cast<double>(n);
        s -= term / static_cast<double>(n);
        if (std::abs(term) / n < 1e-18 * std::abs(s)) return s;
    }
    throw numerical_error("E1 series did not converge");
}

}  // namespace

Complex log_gamma_upper_cf(Complex a, Complex x) {
    return -x + a * std::log(x) + cf_log_fraction(a, x);
}

Complex log_gamma_upper_cf_part(Complex a, Complex x) { return cf_log_fraction(a, x); }

Complex regularized_lower_series(Complex a, Complex x) {
    // P(a,x) = x^a e^{-x} sum_{k>=0} x^k / Gamma(a+1+k)
    Complex term = std::exp(a * std::log(x) - x - log_gamma(a + 1.0));
    Complex s = term;
    for (int k = 1; k < 50000; ++k) {
        term *= x / (a + static_cast<double>(k));
        s += term;
        if (std::abs(term) < 1e-17 * std::abs(s) + 1e-300) return s;
    }
    throw numerical_error("regularized lower gamma series did not converge");
}

Complex expint_e1(Complex x) {
    if (!(x.real() > 0) && !(x.real() == 0 && x.imag() != 0))
        throw std::domain_error("expint_e1 requires Re x > 0");
    if (std::abs(x) <= 1.5) return e1_series(x);
    return std::exp(log_gamma_upper_cf(Complex(0.0), x));
}

double expint_e1(double x) {
    if (!(x > 0)) throw std::domain_error("expint_e1 requires x > 0");
    return expint_e1(Complex(x)).real();
}

double expint_e1_scaled(double x) {
    if (!(x > 0)) throw std::domain_error("expint_e1_scaled requires x > 0");
    if (x <= 1.5) return std::exp(x) * expint_e1(x);
    // e^x Gamma(0,x) = exp(x + log Gamma(0,x)); the two exponents cancel.
    return std::exp((log_gamma_upper_cf(Complex(0.0), Complex(x)) + x).real());
}

Complex gamma_upper(Complex a, Complex x) {
    if (!(x.real() > 0)) throw std::domain_error("gamma_upper requires Re x > 0");

    // Negative integer orders hit Gamma(a) poles; step down from a = 0 via
    // Gamma(a-1, x) = (Gamma(a, x) - x^{a-1} e^{-x}) / (a - 1).
    const double ar = std::round(a.real());
    if (a.imag() == 0.0 && a.real() <= 0.0 && std::abs(a.real() - ar) < 1e-14) {
        Complex g = expint_e1(x);
        for (int m = 0; m > static_cast<int>(ar); --m) {
            const Complex am = Complex(m, 0);
            g = (g - std::exp((am - 1.0) * std::log(x) - x)) / (am - 1.0);
        }
        return g;
    }
    if (std::abs(a) < 1e-12) return expint_e1(x);

    if (detail::use_continued_fraction(a, x)) return std::exp(log_gamma_upper_cf(a, x));

    if (std::abs(a) < 1e-3) {
        // Near a = 0 the subtraction Gamma(a) - gamma(a,x) cancels badly;
        // use Gamma(a,x) = [Gamma(a+1) - 1 - expm1(a log x)]/a + x^a sum_{k>=1} (-x)^k/(k! (a+k)).
        const Complex lx = std::log(x);
        const Complex head = (std::exp(log_gamma(a + 1.0)) - 1.0 - (std::exp(a * lx) - 1.0)) / a;
        Complex tail = 0.0;
        Complex pow = 1.0;
        for (int k = 1; k < 500; ++k) {
            pow *= -x / static_cast<double>(k);
            const Complex term = pow / (a + static_cast<double>(k));
            tail += term;
            if (std::abs(term) < 1e-18 * (std::abs(tail) + 1.0)) break;
        }
        return head - std::exp(a * lx) * tail;
    }
    return std::exp(log_gamma(a)) * (1.0 - regularized_lower_series(a, x));
}

double gamma_upper(double a, double x) {
    if (!(x > 0)) throw std::domain_error("gamma_upper requires x > 0");
    return gamma_upper(Complex(a), Complex(x)).real();
}

}  // namespace truncprod
