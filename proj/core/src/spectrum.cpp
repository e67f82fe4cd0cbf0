#include "truncprod/spectrum.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace truncprod {

namespace {

template <typename Matrix>
SingularSpectrum spectrum_impl(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("singular_spectrum expects a square matrix");
    if (!m.allFinite()) throw std::invalid_argument("singular_spectrum: matrix has non-finite entries");

    Eigen::BDCSVD<Matrix> svd(m);
    if (svd.info() != Eigen::Success) {
        std::ostringstream os;
        os << "SVD did not converge: n=" << m.rows() << " |M|_max=" << m.cwiseAbs().maxCoeff()
           << " |M|_F=" << m.norm();
        throw numerical_error(os.str());
    }

    const auto& sv = svd.singularValues();
    SingularSpectrum out;
    out.sigma_sq.resize(sv.size());
    out.lambda.resize(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        double s2 = sv[i] * sv[i];
        if (s2 < SingularSpectrum::underflow_floor) {
            s2 = SingularSpectrum::underflow_floor;
            ++out.underflow_count;
            out.sigma_sq[i] = s2;
            out.lambda[i] = SingularSpectrum::lambda_cap;
            continue;
        }
        out.sigma_sq[i] = s2;
        out.lambda[i] = std::min(-std::log(s2), SingularSpectrum::lambda_cap);
    }
    return out;
}

}  // namespace

SingularSpectrum singular_spectrum(const Eigen::MatrixXd& m) { return spectrum_impl(m); }
SingularSpectrum singular_spectrum(const Eigen::MatrixXcd& m) { return spectrum_impl(m); }

DensityMatrixSpectrum density_matrix_spectrum(const SingularSpectrum& spectrum) {
    double trace = 0;
    for (double s2 : spectrum.sigma_sq) trace += s2;
    if (!(trace > SingularSpectrum::underflow_floor * spectrum.size() * 2)) {
        throw numerical_error("density_matrix_spectrum: all singular values vanished (zero trace)");
    }
    DensityMatrixSpectrum rho;
    rho.mu.reserve(spectrum.sigma_sq.size());
    for (double s2 : spectrum.sigma_sq) rho.mu.push_back(s2 / trace);
    return rho;
}

double entropy_vn(const DensityMatrixSpectrum& rho) {
    double s = 0;
    for (double mu : rho.mu)
        if (mu > 0) s -= mu * std::log(mu);
    return s;
}

double entropy_renyi(const DensityMatrixSpectrum& rho, double alpha) {
    if (!(alpha > 0) || alpha == 1.0)
        throw std::invalid_argument("entropy_renyi requires alpha > 0, alpha != 1 (use entropy_vn at alpha=1)");
    double s = 0;
    for (double mu : rho.mu)
        if (mu > 0) s += std::pow(mu, alpha);
    return std::log(s) / (1.0 - alpha);
}

MomentEstimate mean_and_error(int p, std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean_and_error: no values");
    const double n = static_cast<double>(values.size());
    double mean = 0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0;
    for (double v : values) var += (v - mean) * (v - mean);
    var = values.size() > 1 ? var / (n - 1) : 0.0;
    return {p, mean, std::sqrt(var / n)};
}

std::vector<MomentEstimate> empirical_moments(std::span<const SingularSpectrum> spectra,
                                              std::span<const int> p_list) {
    if (spectra.empty()) throw std::invalid_argument("empirical_moments: empty spectrum list");
    const int n = spectra.front().size();
    for (const auto& s : spectra)
        if (s.size() != n) throw std::invalid_argument("empirical_moments: spectra of mixed dimension");

    std::vector<MomentEstimate> out;
    out.reserve(p_list.size());
    std::vector<double> per_realization(spectra.size());
    for (int p : p_list) {
        if (p < 1) throw std::invalid_argument("empirical_moments: order p must be >= 1");
        for (std::size_t r = 0; r < spectra.size(); ++r) {
            double acc = 0;
            for (double s2 : spectra[r].sigma_sq) acc += std::pow(s2, p);
            per_realization[r] = acc / n;
        }
        out.push_back(mean_and_error(p, per_realization));
    }
    return out;
}

}  // namespace truncprod
