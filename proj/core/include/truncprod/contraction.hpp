#pragma once

#include <Eigen/Dense>
#include <Eigen/QR>
#include <complex>
#include <stdexcept>
#include <string>

#include "truncprod/sampling.hpp"
#include "truncprod/seeding.hpp"
#include "truncprod/spectrum.hpp"

namespace truncprod {

/// Full description of one ensemble experiment: N-dimensional matrices,
/// truncation depth delta_n (rows/columns zeroed per factor), chain length,
/// group, seeding and realization count.
struct ContractionConfig {
    int n = 0;
    int delta_n = 1;
    int chain_length = 0;  // number of truncated factors L
    GroupKind group = GroupKind::unitary;
    SeedSpec seed;
    int realizations = 1;

    void validate() const;
};

/// Which product the chain accumulates: C_L multiplies truncated Haar
/// factors; Q_L multiplies rank-(N - delta_n) projectors. Q_L has the same
/// singular-value statistics as C_{L-1}.
enum class ChainType { product, projector };

/// Figure-caption convention L = tau*N/deltaN - 1 for C-products: the product
/// of L truncated factors corresponds to the scaling parameter
/// tau = (L+1)*deltaN/N; a projector chain of L factors corresponds to
/// tau = L*deltaN/N.
int chain_length_for_tau(double tau, int n, int delta_n, ChainType type = ChainType::product);
double effective_tau(int chain_length, int n, int delta_n, ChainType type = ChainType::product);

/// P U P with P the projector that keeps indices > delta_n: the first
/// delta_n rows and columns are zeroed.
template <typename Derived>
typename Derived::PlainObject truncate(const Eigen::MatrixBase<Derived>& u, int delta_n) {
    if (delta_n < 0 || delta_n >= u.rows())
        throw std::invalid_argument("truncate: delta_n must satisfy 0 <= delta_n < n, got " +
                                    std::to_string(delta_n));
    typename Derived::PlainObject out = u;
    out.topRows(delta_n).setZero();
    out.leftCols(delta_n).setZero();
    return out;
}

/// Streaming product of truncated Haar factors. Each advance() draws a fresh
/// Haar matrix (QR of Ginibre with phase correction, applied through its
/// Householder reflectors) and accumulates P U P into the running product.
template <typename Scalar>
class ContractionChain {
  public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    ContractionChain(int n, int delta_n, const SeedSpec& seed)
        : n_(n), delta_n_(delta_n), rng_(seed), accumulated_(Matrix::Identity(n, n)), ginibre_(n, n) {
        if (n < 1) throw std::invalid_argument("ContractionChain: n must be >= 1");
        if (delta_n < 1 || delta_n >= n)
            throw std::invalid_argument("ContractionChain: need 1 <= delta_n < n");
    }

    void advance(int steps = 1) {
        for (int s = 0; s < steps; ++s) step();
    }

    int steps_taken() const { return steps_; }
    const Matrix& matrix() const { return accumulated_; }

  private:
    void step() {
        fill_ginibre(ginibre_, rng_);
        Eigen::HouseholderQR<Eigen::Ref<Matrix>> qr(ginibre_);
        // C <- P (Q Lambda) (P C); Lambda scales row j of the operand by
        // conj(R_jj)/|R_jj|, which is the Haar phase correction on Q's columns.
        accumulated_.topRows(delta_n_).setZero();
        const auto& r = qr.matrixQR();
        for (int j = 0; j < n_; ++j) {
            const Scalar d = r(j, j);
            const double a = std::abs(d);
            if (a > 0.0) accumulated_.row(j) *= Eigen::numext::conj(d) / a;
        }
        accumulated_.applyOnTheLeft(qr.householderQ());
        accumulated_.topRows(delta_n_).setZero();
        ++steps_;
    }

    int n_;
    int delta_n_;
    int steps_ = 0;
    Rng rng_;
    Matrix accumulated_;
    Matrix ginibre_;
};

/// Streaming product of rank-(n - delta_n) projectors P = I - V V^dag built
/// from delta_n orthonormal isotropic columns. Cost per step is O(delta_n n^2).
template <typename Scalar>
class ProjectorChain {
  public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    ProjectorChain(int n, int delta_n, const SeedSpec& seed)
        : n_(n), delta_n_(delta_n), rng_(seed), accumulated_(Matrix::Identity(n, n)) {
        if (n < 1) throw std::invalid_argument("ProjectorChain: n must be >= 1");
        if (delta_n < 1 || delta_n >= n)
            throw std::invalid_argument("ProjectorChain: need 1 <= delta_n < n");
    }

    void advance(int steps = 1) {
        for (int s = 0; s < steps; ++s) step();
    }

    int steps_taken() const { return steps_; }
    const Matrix& matrix() const { return accumulated_; }

  private:
    void step() {
        Matrix v = sample_columns(rng_);
        accumulated_.noalias() -= v * (v.adjoint() * accumulated_);
        ++steps_;
    }

    Matrix sample_columns(Rng& rng) {
        if constexpr (std::is_same_v<Scalar, double>) {
            return sample_haar_columns_real(n_, delta_n_, rng);
        } else {
            return sample_haar_columns_complex(n_, delta_n_, rng);
        }
    }

    int n_;
    int delta_n_;
    int steps_ = 0;
    Rng rng_;
    Matrix accumulated_;
};

/// C_L = U~_L ... U~_1 for one realization (config.seed used as-is).
/// chain_length 0 gives the identity.
RealMatrix product_chain_real(const ContractionConfig& config);
ComplexMatrix product_chain_complex(const ContractionConfig& config);

/// Q_L = P_L ... P_1 for one realization; requires chain_length >= 1.
RealMatrix projector_chain_real(const ContractionConfig& config);
ComplexMatrix projector_chain_complex(const ContractionConfig& config);

/// Kaczmarz-type product of n rank-(n-1) projectors built from independent
/// isotropic real unit vectors.
RealMatrix kaczmarz_chain(int n, const SeedSpec& seed);

}  // namespace truncprod
