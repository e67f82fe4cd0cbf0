#pragma once

#include <vector>

#include "truncprod/analytic.hpp"
#include "truncprod/spectrum.hpp"

namespace truncprod {

/// Raised when the contour quadrature cannot reach the requested tolerance;
/// carries the error estimate that was achieved.
class inversion_error : public numerical_error {
  public:
    inversion_error(const std::string& what, double achieved)
        : numerical_error(what), achieved_error_(achieved) {}
    double achieved_error() const { return achieved_error_; }

  private:
    double achieved_error_;
};

/// Bromwich contour parameters: vertical line Re p = c, trapezoid step h in
/// Im p, truncation grown in blocks until the running tail drops below
/// abs_tol, then finished with a cosine taper to suppress truncation ringing.
struct BromwichParams {
    double c = 1.0;
    double h = 0.25;
    double abs_tol = 1e-4;
    int max_nodes = 3000000;  // worst case is the non-oscillatory exact-edge point
    double taper_fraction = 0.3;  // tapered tail of the span, damps cutoff ringing
};

/// Weight of the delta function at lambda = 0: max(0, 1 - tau).
double atom_weight(double tau);

/// Transform actually inverted on the contour. The delta atom (tau < 1) is
/// subtracted so the integrand decays. At tau = 1 the chi-square moments
/// (1 + 2 pi p)^{-1/2} are subtracted as well: they carry the identical
/// lambda^{-1/2} edge singularity, the difference decays like p^{-3/2}, and
/// the chi-square part is restored in closed form after inversion.
Complex contour_transform(Complex p, double tau);

struct InversionPoint {
    double value = 0;        // continuum density D(lambda)
    double tail_estimate = 0;
    int nodes = 0;
};

/// Continuum density at one lambda > 0 by numerical inversion of the Laplace
/// transform along the vertical contour. Throws inversion_error if the node
/// budget is exhausted before the tail estimate reaches abs_tol.
InversionPoint bromwich_invert_point(double tau, double lambda, const BromwichParams& params = {});
double bromwich_invert(double tau, double lambda, const BromwichParams& params = {});

/// Continuum mass on [0, lambda]: same contour applied to S~(p)/p. The
/// integrand decays faster than the density's, so this converges quickly and
/// provides the extended-tail complement (1 - atom) - CDF(lambda).
double continuum_mass_below(double tau, double lambda, const BromwichParams& params = {});
double continuum_tail_mass(double tau, double lambda, const BromwichParams& params = {});

/// Density averaged over a bin, from CDF differences.
double bin_averaged_density(double tau, double lo, double hi, const BromwichParams& params = {});

/// Reconstruction of D(lambda) on a grid. The grid is refined geometrically
/// at the continuum edge (lambda_min for tau != 1; lambda -> 0 for the
/// tau = 1 integrable singularity) and uniform beyond. Negative quadrature
/// ringing is clipped in `density` but kept in `density_signed`, which is
/// what the moment roundtrip integrates.
struct DensityProfile {
    double tau = 0;
    std::vector<double> lambda_grid;
    std::vector<double> density;         // clipped at 0
    std::vector<double> density_signed;  // raw quadrature values
    double atom_weight = 0;
    BromwichParams contour;  // parameters actually used (reproducibility record)
    int max_nodes_used = 0;
};

DensityProfile density_profile(double tau, double lambda_max, int points,
                               const BromwichParams& params = {}, int workers = 1);

/// Forward transform of a reconstructed profile:
/// atom + integral e^{-p lambda} D(lambda) d lambda over the grid, with the
/// analytic edge stub for the tau = 1 singular cell [0, grid start].
double laplace_roundtrip(const DensityProfile& profile, double p);

/// Total mass of the profile: atom + grid trapezoid + edge stub + extended
/// tail beyond the grid.
double profile_total_mass(const DensityProfile& profile);

/// Moments of the exponentiated chi-square comparison law: (1 + 2 pi p)^{-1/2}.
double chisq_moment(double p);

/// Density of lambda = pi Y with Y ~ chi^2(1):
/// e^{-lambda/(2 pi)} / (pi sqrt(2 lambda)).
double chisq_density(double lambda);

/// Closed form of integral_0^delta e^{-p lambda} chisq_density(lambda) d lambda.
double chisq_partial_transform(double p, double delta);

}  // namespace truncprod
