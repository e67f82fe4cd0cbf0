#include "truncprod/sampling.hpp"

#include <Eigen/QR>
#include <stdexcept>

namespace truncprod {

std::string to_string(GroupKind kind) {
    return kind == GroupKind::unitary ? "unitary" : "orthogonal";
}

GroupKind group_from_string(const std::string& name) {
    if (name == "unitary") return GroupKind::unitary;
    if (name == "orthogonal") return GroupKind::orthogonal;
    throw std::invalid_argument("unknown group kind: " + name);
}

namespace detail {
void require_dimension(int n) {
    if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1, got " + std::to_string(n));
}
}  // namespace detail

void fill_ginibre(Eigen::Ref<RealMatrix> m, Rng& rng) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.normal();
}

void fill_ginibre(Eigen::Ref<ComplexMatrix> m, Rng& rng) {
    // E|z|^2 = 1: each component has variance 1/2.
    constexpr double half = 0.70710678118654752440;  // 1/sqrt(2)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            m(i, j) = std::complex<double>(half * rng.normal(), half * rng.normal());
}

RealMatrix sample_ginibre_real(int n, Rng& rng) {
    detail::require_dimension(n);
    RealMatrix m(n, n);
    fill_ginibre(m, rng);
    return m;
}

ComplexMatrix sample_ginibre_complex(int n, Rng& rng) {
    detail::require_dimension(n);
    ComplexMatrix m(n, n);
    fill_ginibre(m, rng);
    return m;
}

namespace {

template <typename Matrix>
Matrix haar_from_ginibre(Matrix g) {
    const Eigen::Index n = g.rows();
    const Eigen::Index k = g.cols();
    Eigen::HouseholderQR<Matrix> qr(std::move(g));
    Matrix q = qr.householderQ() * Matrix::Identity(n, k);
    const auto& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < k; ++j) {
        auto d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= Eigen::numext::conj(d) / a;
    }
    return q;
}

}  // namespace

RealMatrix sample_haar_real(int n, Rng& rng) {
    return haar_from_ginibre(sample_ginibre_real(n, rng));
}

ComplexMatrix sample_haar_complex(int n, Rng& rng) {
    return haar_from_ginibre(sample_ginibre_complex(n, rng));
}

RealMatrix sample_haar_columns_real(int n, int cols, Rng& rng) {
    detail::require_dimension(n);
    if (cols < 1 || cols > n) throw std::invalid_argument("column count out of range");
    RealMatrix g(n, cols);
    fill_ginibre(g, rng);
    return haar_from_ginibre(std::move(g));
}

ComplexMatrix sample_haar_columns_complex(int n, int cols, Rng& rng) {
    detail::require_dimension(n);
    if (cols < 1 || cols > n) throw std::invalid_argument("column count out of range");
    ComplexMatrix g(n, cols);
    fill_ginibre(g, rng);
    return haar_from_ginibre(std::move(g));
}

Eigen::VectorXd sample_unit_vector_real(int n, Rng& rng) {
    detail::require_dimension(n);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    return v / v.norm();
}

Eigen::VectorXcd sample_unit_vector_complex(int n, Rng& rng) {
    detail::require_dimension(n);
    constexpr double half = 0.70710678118654752440;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = std::complex<double>(half * rng.normal(), half * rng.normal());
    return v / v.norm();
}

RealMatrix sample_ginibre_real(int n, const SeedSpec& seed) {
    Rng rng(seed);
    return sample_ginibre_real(n, rng);
}

ComplexMatrix sample_ginibre_complex(int n, const SeedSpec& seed) {
    Rng rng(seed);
    return sample_ginibre_complex(n, rng);
}

RealMatrix sample_haar_real(int n, const SeedSpec& seed) {
    Rng rng(seed);
    return sample_haar_real(n, rng);
}

ComplexMatrix sample_haar_complex(int n, const SeedSpec& seed) {
    Rng rng(seed);
    return sample_haar_complex(n, rng);
}

Eigen::VectorXd sample_unit_vector_real(int n, const SeedSpec& seed) {
    Rng rng(seed);
    return sample_unit_vector_real(n, rng);
}

Eigen::VectorXcd sample_unit_vector_complex(int n, const SeedSpec& seed) {
    Rng rng(seed);
    return sample_unit_vector_complex(n, rng);
}

}  // namespace truncprod
