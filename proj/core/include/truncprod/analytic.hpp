#pragma once

#include <complex>
#include <string>
#include <vector>

#include "truncprod/special_functions.hpp"

namespace truncprod {

/// The double-scaling parameter tau = L*deltaN/N, with its regime relative
/// to the tau = 1 threshold.
struct ScalingPoint {
    double tau = 0;

    explicit ScalingPoint(double t);

    enum class Regime { subcritical, critical, supercritical };
    Regime regime() const;
};

std::string to_string(ScalingPoint::Regime r);

using UInt128 = unsigned __int128;

/// Exact integer coefficients of the Erlang polynomial G_p(tau) in ascending
/// powers: coefficient j equals (p-1)!/j! * p^{j-1} * (p-j) for j >= 1 and
/// (p-1)! for j = 0. Degree p-1; exact through p = 20 in 128-bit arithmetic.
std::vector<UInt128> erlang_coefficients(int p);

/// G_p(tau) for integer order via the exact polynomial (Horner in double).
double erlang_g(int p, double tau);

/// Analytic continuation of G_p to complex order:
/// G_p = e^{p tau} (1-tau)(p-1) Gamma(p-1, p tau) + (p tau)^{p-1}.
/// Suitable for moderate |p tau|; the moment routines below work in log
/// space instead and stay finite for large orders.
Complex erlang_g(Complex p, double tau);

/// Double-scaling limit of the singular-value moment:
/// S_p(tau) = Gamma(p)^{-1} e^{-p tau} G_p(tau).
/// Real orders p > 0 return the (positive) real value.
double moment_limit(double p, double tau);
Complex moment_limit(Complex p, double tau);

/// Large-p form of the limit moment with its regime: 1 - tau below the
/// threshold, (2 pi p)^{-1/2} at it, p^{-3/2} e^{-lambda_min p} above it
/// (the supercritical prefactor is not fixed; compare by ratios).
struct MomentAsymptotic {
    double value = 0;
    ScalingPoint::Regime regime = ScalingPoint::Regime::critical;
};
MomentAsymptotic moment_asymptotic(double p, double tau);

/// Renyi entropy offset from ln N in the double-scaling limit:
/// (1-alpha)^{-1} ln[G_alpha(tau)/Gamma(alpha)], alpha > 0, alpha != 1.
double renyi_offset(double alpha, double tau);

/// von Neumann entropy offset from ln N:
/// -ln tau + e^tau (tau-1) Gamma(0, tau) - gamma_Euler.
double vn_entropy_offset(double tau);

/// Lower edge of the continuum of lambda = -ln sigma^2 values.
double lambda_min(double tau);

}  // namespace truncprod
