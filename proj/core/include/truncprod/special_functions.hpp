#pragma once

#include <complex>

namespace truncprod {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Principal-branch log-gamma for complex argument (Lanczos g=7 plus the
/// reflection formula, with the log-sine evaluated in log space so large
/// imaginary parts do not overflow). The imaginary part may differ from the
/// principal branch by multiples of 2*pi; use it only inside exp() or in
/// differences, which is how every caller here consumes it.
Complex log_gamma(Complex z);

/// Exponential integral E_1(x) = Gamma(0, x), Re x > 0.
double expint_e1(double x);
Complex expint_e1(Complex x);

/// e^x * E_1(x); stays finite for large x where E_1 underflows.
double expint_e1_scaled(double x);

/// Upper incomplete gamma Gamma(a, x) for complex order and complex argument
/// with Re x > 0 (real x > 0 included). Continued fraction when |x| dominates
/// |a|, series through the regularized lower function otherwise, dedicated
/// E_1 path at a = 0 and downward recurrence at negative integer a.
/// Relative accuracy ~1e-10 over the region exercised by the Bromwich
/// contours (a = p - 1, x = p*tau, Re p = 1).
Complex gamma_upper(Complex a, Complex x);
double gamma_upper(double a, double x);

/// log(Gamma(a, x)) evaluated without forming Gamma(a, x); requires the
/// continued-fraction region |x| > |a| + 2. Used where e^{+x} Gamma(a, x)
/// style products would overflow.
Complex log_gamma_upper_cf(Complex a, Complex x);

/// log of the fraction part F in Gamma(a, x) = e^{-x} x^a F(a, x); same
/// continued-fraction region as above.
Complex log_gamma_upper_cf_part(Complex a, Complex x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a) by
/// power series; converges for any finite x, efficiently when |x| <~ |a|.
Complex regularized_lower_series(Complex a, Complex x);

namespace detail {
bool use_continued_fraction(Complex a, Complex x);
}

}  // namespace truncprod
