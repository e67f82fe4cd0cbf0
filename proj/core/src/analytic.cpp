#include "truncprod/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace truncprod {

ScalingPoint::ScalingPoint(double t) : tau(t) {
    if (!(t > 0)) throw std::domain_error("ScalingPoint: tau must be positive");
}

ScalingPoint::Regime ScalingPoint::regime() const {
    if (std::abs(tau - 1.0) <= 1e-12) return Regime::critical;
    return tau < 1.0 ? Regime::subcritical : Regime::supercritical;
}

std::string to_string(ScalingPoint::Regime r) {
    switch (r) {
        case ScalingPoint::Regime::subcritical: return "subcritical";
        case ScalingPoint::Regime::critical: return "critical";
        default: return "supercritical";
    }
}

std::vector<UInt128> erlang_coefficients(int p) {
    if (p < 1 || p > 20)
        throw std::invalid_argument("erlang_coefficients: exact integer path supports 1 <= p <= 20");
    std::vector<UInt128> coeffs(p);
    UInt128 factorial = 1;  // (p-1)!
    for (int k = 2; k < p; ++k) factorial *= static_cast<UInt128>(k);
    coeffs[0] = factorial;
    for (int j = 1; j < p; ++j) {
        UInt128 c = 1;  // (p-1)!/j! = (j+1)(j+2)...(p-1)
        for (int k = j + 1; k < p; ++k) c *= static_cast<UInt128>(k);
        for (int e = 0; e < j - 1; ++e) c *= static_cast<UInt128>(p);
        c *= static_cast<UInt128>(p - j);
        coeffs[j] = c;
    }
    return coeffs;
}

double erlang_g(int p, double tau) {
    if (!(tau > 0)) throw std::domain_error("erlang_g: tau must be positive");
    if (p <= 20) {
        const auto coeffs = erlang_coefficients(p);
        double acc = 0;
        for (int j = p - 1; j >= 0; --j) acc = acc * tau + static_cast<double>(coeffs[j]);
        return acc;
    }
    // Large integer order: same expression in floating point,
    // (1-tau)(p-1)! sum_{i<p} (p tau)^i / i!  +  tau^p p^{p-1}.
    double sum = 0, term = 1;
    for (int i = 0; i < p; ++i) {
        sum += term;
        term *= p * tau / (i + 1);
    }
    const double lead = std::exp(std::lgamma(p)) * sum;
    return (1.0 - tau) * lead + std::pow(tau, p) * std::pow(static_cast<double>(p), p - 1);
}

Complex erlang_g(Complex p, double tau) {
    if (!(tau > 0)) throw std::domain_error("erlang_g: tau must be positive");
    const Complex x = p * tau;
    const Complex a = p - 1.0;
    return std::exp(x) * (1.0 - tau) * a * gamma_upper(a, x) + std::exp(a * std::log(x));
}

namespace {

// S_p assembled in log space: S_p = w * [(1-tau)(p-1) F + 1] with
// w = exp((p-1) log(p tau) - p tau - lgamma(p)) and F the continued-fraction
// part of Gamma(p-1, p tau) = e^{-x} x^{a} F. Outside the CF region the
// series path is used on the regularized lower function.
Complex moment_limit_impl(Complex p, double tau) {
    if (!(p.real() > 0)) throw std::domain_error("moment_limit: need Re p > 0");
    if (!(tau > 0)) throw std::domain_error("moment_limit: tau must be positive");
    const Complex a = p - 1.0;
    const Complex x = p * tau;
    const Complex log_w = a * std::log(x) - x - log_gamma(p);

    if (tau == 1.0) return std::exp(log_w);  // (1 - tau) term drops exactly

    if (std::abs(a) < 1e-12) {
        // p = 1 up to rounding: the Gamma(p-1) pole suppresses the first
        // term and S_1 = e^{-tau} exactly.
        return std::exp(-x);
    }

    if (detail::use_continued_fraction(a, x)) {
        const Complex log_f = log_gamma_upper_cf_part(a, x);
        return std::exp(log_w) * ((1.0 - tau) * a * std::exp(log_f) + 1.0);
    }
    // Q(a, x) = 1 - P(a, x);  (p-1) Gamma(p-1, x) / Gamma(p) = Q(p-1, x)
    const Complex q = 1.0 - regularized_lower_series(a, x);
    return (1.0 - tau) * q + std::exp(log_w);
}

}  // namespace

Complex moment_limit(Complex p, double tau) { return moment_limit_impl(p, tau); }

double moment_limit(double p, double tau) {
    if (!(p > 0)) throw std::domain_error("moment_limit: need p > 0");
    return moment_limit_impl(Complex(p), tau).real();
}

MomentAsymptotic moment_asymptotic(double p, double tau) {
    if (!(p >= 1)) throw std::domain_error("moment_asymptotic: need p >= 1");
    const ScalingPoint point(tau);
    MomentAsymptotic out;
    out.regime = point.regime();
    switch (out.regime) {
        case ScalingPoint::Regime::subcritical: out.value = 1.0 - tau; break;
        case ScalingPoint::Regime::critical:
            out.value = 1.0 / std::sqrt(2.0 * std::numbers::pi * p);
            break;
        case ScalingPoint::Regime::supercritical:
            out.value = std::pow(p, -1.5) * std::exp(-lambda_min(tau) * p);
            break;
    }
    return out;
}

double renyi_offset(double alpha, double tau) {
    if (!(alpha > 0) || alpha == 1.0)
        throw std::invalid_argument("renyi_offset: alpha > 0 and alpha != 1 (use vn_entropy_offset)");
    if (!(tau > 0)) throw std::domain_error("renyi_offset: tau must be positive");
    // ln[G_alpha/Gamma(alpha)] = alpha*tau + ln S_alpha
    const double s = moment_limit(alpha, tau);
    return (alpha * tau + std::log(s)) / (1.0 - alpha);
}

double vn_entropy_offset(double tau) {
    if (!(tau > 0)) throw std::domain_error("vn_entropy_offset: tau must be positive");
    return -std::log(tau) + (tau - 1.0) * expint_e1_scaled(tau) - kEulerGamma;
}

double lambda_min(double tau) {
    if (!(tau > 0)) throw std::domain_error("lambda_min: tau must be positive");
    return tau - 1.0 - std::log(tau);
}

}  // namespace truncprod
