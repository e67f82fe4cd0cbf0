#include "truncprod/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "truncprod/parallel.hpp"

namespace truncprod {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_tau(double tau) {
    if (!(tau > 0)) throw std::domain_error("tau must be positive");
    return tau;
}

bool is_critical(double tau) { return std::abs(tau - 1.0) <= 1e-12; }

Complex chisq_moment_complex(Complex p) { return std::exp(-0.5 * std::log(1.0 + 2.0 * kPi * p)); }

// Trapezoid along the vertical contour of Re[g(c + iy) e^{iy lambda}].
// The abrupt-truncation ringing of the slowly decaying oscillatory tail is
// damped by a cosine taper over the last taper_fraction of the span; the
// truncation is doubled until two successive tapered sums agree within the
// mixed absolute/relative tolerance, which is also the reported estimate.
// `g` is the transform, possibly divided by p for CDF integrands.
template <typename G>
InversionPoint contour_sum(double lambda, const BromwichParams& params, G&& g) {
    const double c = params.c;
    const double h = params.h;
    const double prefactor = std::exp(c * lambda) / kPi * h;

    std::vector<double> f;
    f.reserve(4096);
    f.push_back(0.5 * g(Complex(c, 0.0)).real());

    auto extend_to = [&](int count) {
        for (int n = static_cast<int>(f.size()); n < count; ++n) {
            const double y = n * h;
            f.push_back((g(Complex(c, y)) * std::exp(Complex(0.0, y * lambda))).real());
        }
    };
    auto tapered_sum = [&](int count) {
        const int n0 = count - std::max(8, static_cast<int>(count * params.taper_fraction));
        double acc = 0;
        for (int n = 0; n < count; ++n) {
            double w = 1.0;
            if (n > n0) {
                const double t = static_cast<double>(n - n0) / (count - n0);
                w = 0.5 * (1.0 + std::cos(kPi * t));
            }
            acc += w * f[static_cast<std::size_t>(n)];
        }
        return prefactor * acc;
    };

    int count = std::min(params.max_nodes, 1500);
    extend_to(count);
    double value = tapered_sum(count);
    double prev_delta = 0;
    double change = std::abs(value);
    while (count < params.max_nodes) {
        const int next = std::min(params.max_nodes, 2 * count);
        extend_to(next);
        const double refined = tapered_sum(next);
        const double delta = refined - value;
        change = std::abs(delta);
        value = refined;
        count = next;
        const double tol = std::max(params.abs_tol, 1e-3 * std::abs(refined));
        if (change < tol) return {value, change, count};
        // At the support edge the oscillation credit vanishes and the
        // increments shrink geometrically like T^{-1/2} (ratio 1/sqrt(2)).
        // A stable signed ratio lets the tail be summed by extrapolation.
        if (prev_delta != 0.0) {
            const double rho = delta / prev_delta;
            if (rho > 0.45 && rho < 0.9) {
                const double tail = delta * rho / (1.0 - rho);
                if (std::abs(tail) < 2.0 * tol)
                    return {value + tail, std::abs(tail), count};
            }
        }
        prev_delta = delta;
    }
    std::ostringstream os;
    os << "contour quadrature exhausted " << params.max_nodes << " nodes at lambda=" << lambda
       << "; refinement still moving by " << change;
    throw inversion_error(os.str(), change);
}

}  // namespace

double atom_weight(double tau) {
    checked_tau(tau);
    return std::max(0.0, 1.0 - tau);
}

Complex contour_transform(Complex p, double tau) {
    if (is_critical(tau)) return moment_limit(p, 1.0) - chisq_moment_complex(p);
    return moment_limit(p, tau) - atom_weight(tau);
}

InversionPoint bromwich_invert_point(double tau, double lambda, const BromwichParams& params) {
    checked_tau(tau);
    if (!(lambda > 0)) throw std::domain_error("bromwich_invert: lambda must be positive");
    auto point = contour_sum(lambda, params, [tau](Complex p) { return contour_transform(p, tau); });
    if (is_critical(tau)) point.value += chisq_density(lambda);
    return point;
}

double bromwich_invert(double tau, double lambda, const BromwichParams& params) {
    return bromwich_invert_point(tau, lambda, params).value;
}

double continuum_mass_below(double tau, double lambda, const BromwichParams& params) {
    checked_tau(tau);
    if (!(lambda > 0)) throw std::domain_error("continuum_mass_below: lambda must be positive");
    const auto point =
        contour_sum(lambda, params, [tau](Complex p) { return contour_transform(p, tau) / p; });
    double mass = point.value;
    if (is_critical(tau)) mass += std::erf(std::sqrt(lambda / (2.0 * kPi)));
    return mass;
}

double continuum_tail_mass(double tau, double lambda, const BromwichParams& params) {
    return (1.0 - atom_weight(tau)) - continuum_mass_below(tau, lambda, params);
}

double bin_averaged_density(double tau, double lo, double hi, const BromwichParams& params) {
    if (!(hi > lo)) throw std::invalid_argument("bin_averaged_density: need hi > lo");
    const double below = lo > 0 ? continuum_mass_below(tau, lo, params) : 0.0;
    return (continuum_mass_below(tau, hi, params) - below) / (hi - lo);
}

namespace {

std::vector<double> profile_grid(double tau, double lambda_max, int points) {
    std::vector<double> grid;
    grid.reserve(points + 8);
    const bool critical = is_critical(tau);
    const double edge = critical ? 0.0 : lambda_min(tau);
    if (!(lambda_max > edge + 0.1))
        throw std::invalid_argument("density_profile: lambda_max must exceed the support edge");

    const double geo_start = 1e-4;
    const double geo_end = std::min(critical ? 1.0 : 0.75, (lambda_max - edge) / 4.0);
    const int n_geo = std::max(12, points / 3);
    if (!critical) {
        // a few points below the edge (density vanishes there) incl. the edge
        const double lo = std::max(0.0, edge - 0.1);
        for (int i = 0; i < 5; ++i) grid.push_back(lo + (edge - lo) * i / 5.0);
        grid.push_back(edge);
    }
    const double ratio = std::log(geo_end / geo_start) / (n_geo - 1);
    for (int i = 0; i < n_geo; ++i) grid.push_back(edge + geo_start * std::exp(ratio * i));
    const int n_lin = std::max(8, points - n_geo);
    const double lin_start = grid.back();
    for (int i = 1; i <= n_lin; ++i)
        grid.push_back(lin_start + (lambda_max - lin_start) * i / n_lin);
    return grid;
}

DensityProfile build_profile(double tau, double lambda_max, int points,
                             const BromwichParams& params, int workers) {
    DensityProfile profile;
    profile.tau = tau;
    profile.contour = params;
    profile.atom_weight = atom_weight(tau);
    profile.lambda_grid = profile_grid(tau, lambda_max, points);

    const bool critical = is_critical(tau);
    const double edge = critical ? 0.0 : lambda_min(tau);
    const int n = static_cast<int>(profile.lambda_grid.size());
    auto inverted = parallel_map(n, workers, [&](int i) -> InversionPoint {
        const double lam = profile.lambda_grid[static_cast<std::size_t>(i)];
        if (lam <= 0.0) return {0.0, 0.0, 0};
        // The density vanishes continuously at the edge (square-root rise),
        // so the exact-edge sample needs no quadrature; points strictly
        // below it are inverted to expose any ringing honestly.
        if (!critical && std::abs(lam - edge) < 1e-12) return {0.0, 0.0, 0};
        return bromwich_invert_point(tau, lam, params);
    });

    profile.density_signed.resize(n);
    profile.density.resize(n);
    for (int i = 0; i < n; ++i) {
        profile.density_signed[i] = inverted[i].value;
        profile.density[i] = std::max(0.0, inverted[i].value);
        profile.max_nodes_used = std::max(profile.max_nodes_used, inverted[i].nodes);
    }
    // Pin the exact support edge to zero on the clipped curve.
    if (!critical) {
        for (int i = 0; i < n; ++i)
            if (profile.lambda_grid[i] <= edge) profile.density[i] = 0.0;
    }
    return profile;
}

}  // namespace

DensityProfile density_profile(double tau, double lambda_max, int points,
                               const BromwichParams& params, int workers) {
    checked_tau(tau);
    if (points < 16) throw std::invalid_argument("density_profile: need at least 16 grid points");

    // The contour step and the per-point truncations are accepted only once
    // the low-order moment roundtrip lands under 1e-3; otherwise refine and
    // rebuild. The parameters actually used stay recorded on the profile.
    BromwichParams attempt = params;
    int grid_points = points;
    for (int round = 0;; ++round) {
        DensityProfile profile = build_profile(tau, lambda_max, grid_points, attempt, workers);
        double residual = 0;
        for (int p = 1; p <= 3; ++p)
            residual = std::max(
                residual,
                std::abs(laplace_roundtrip(profile, p) - moment_limit(static_cast<double>(p), tau)));
        if (residual < 1e-3) return profile;
        if (round == 2) {
            throw inversion_error("density_profile: roundtrip residual " + std::to_string(residual) +
                                      " after refinement",
                                  residual);
        }
        // Grid resolution dominates the roundtrip residual; the contour step
        // already sits far below its aliasing floor, so leave h alone.
        grid_points *= 2;
        attempt.abs_tol *= 0.5;
    }
}

double laplace_roundtrip(const DensityProfile& profile, double p) {
    if (!(p >= 0)) throw std::domain_error("laplace_roundtrip: need p >= 0");
    const auto& grid = profile.lambda_grid;
    const auto& d = profile.density_signed;
    double acc = profile.atom_weight;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double w = grid[i] - grid[i - 1];
        acc += 0.5 * w *
               (std::exp(-p * grid[i]) * d[i] + std::exp(-p * grid[i - 1]) * d[i - 1]);
    }
    if (is_critical(profile.tau)) {
        acc += chisq_partial_transform(p, grid.front());
    }
    return acc;
}

double profile_total_mass(const DensityProfile& profile) {
    double acc = laplace_roundtrip(profile, 0.0);
    acc += continuum_tail_mass(profile.tau, profile.lambda_grid.back(), profile.contour);
    return acc;
}

double chisq_moment(double p) {
    if (!(p > 0)) throw std::domain_error("chisq_moment: need p > 0");
    return 1.0 / std::sqrt(1.0 + 2.0 * kPi * p);
}

double chisq_density(double lambda) {
    if (!(lambda > 0)) throw std::domain_error("chisq_density: lambda must be positive");
    return std::exp(-lambda / (2.0 * kPi)) / (kPi * std::sqrt(2.0 * lambda));
}

double chisq_partial_transform(double p, double delta) {
    if (!(delta >= 0)) throw std::domain_error("chisq_partial_transform: need delta >= 0");
    const double beta = p + 1.0 / (2.0 * kPi);
    return std::erf(std::sqrt(beta * delta)) / std::sqrt(2.0 * kPi * beta);
}

}  // namespace truncprod
