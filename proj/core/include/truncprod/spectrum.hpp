#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace truncprod {

/// Raised when a dense linear-algebra kernel fails to converge; carries
/// whatever conditioning diagnostics were available at the failure site.
class numerical_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Squared singular values of a chain output, sorted descending, together
/// with the exponents lambda = -ln sigma^2. Values below `underflow_floor`
/// are clamped there and counted in `underflow_count` instead of being
/// dropped; the corresponding lambda is capped at `lambda_cap`.
struct SingularSpectrum {
    std::vector<double> sigma_sq;
    std::vector<double> lambda;
    int underflow_count = 0;

    static constexpr double underflow_floor = 1e-300;
    static constexpr double lambda_cap = 690.0;

    int size() const { return static_cast<int>(sigma_sq.size()); }
};

/// Eigenvalues of the density matrix rho = C C^dag / Tr C C^dag:
/// the squared singular values normalized to unit trace.
struct DensityMatrixSpectrum {
    std::vector<double> mu;  // descending, sums to 1
};

/// Singular spectrum of a dense matrix (squared values, descending).
/// Throws numerical_error with conditioning diagnostics if the SVD fails.
SingularSpectrum singular_spectrum(const Eigen::MatrixXd& m);
SingularSpectrum singular_spectrum(const Eigen::MatrixXcd& m);

DensityMatrixSpectrum density_matrix_spectrum(const SingularSpectrum& spectrum);

/// von Neumann entropy -sum mu ln mu with 0 ln 0 = 0; lies in [0, ln N].
double entropy_vn(const DensityMatrixSpectrum& rho);

/// Renyi entropy (1-alpha)^{-1} ln sum mu^alpha, alpha > 0, alpha != 1.
double entropy_renyi(const DensityMatrixSpectrum& rho, double alpha);

struct MomentEstimate {
    int p = 0;
    double mean = 0;
    double std_error = 0;
};

/// Monte Carlo moments: for each order p, the mean over realizations of
/// N^{-1} sum_i (sigma_i^2)^p and its standard error.
std::vector<MomentEstimate> empirical_moments(std::span<const SingularSpectrum> spectra,
                                              std::span<const int> p_list);

/// Mean and standard error of the mean of one set of per-realization values.
MomentEstimate mean_and_error(int p, std::span<const double> values);

}  // namespace truncprod
