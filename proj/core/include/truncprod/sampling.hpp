#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "truncprod/seeding.hpp"

namespace truncprod {

/// Matrix group the ensemble is drawn from. Unitary matrices are complex,
/// orthogonal ones real; the Hermitian conjugate degrades to the transpose
/// in the orthogonal case.
enum class GroupKind { unitary, orthogonal };

std::string to_string(GroupKind kind);
GroupKind group_from_string(const std::string& name);

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Fills `m` with i.i.d. Gaussian entries: N(0,1) real entries, or complex
/// entries whose real and imaginary parts are each N(0,1/2) so that
/// E|z|^2 = 1.
void fill_ginibre(Eigen::Ref<RealMatrix> m, Rng& rng);
void fill_ginibre(Eigen::Ref<ComplexMatrix> m, Rng& rng);

/// n x n Ginibre matrix for the requested group.
RealMatrix sample_ginibre_real(int n, Rng& rng);
ComplexMatrix sample_ginibre_complex(int n, Rng& rng);

/// Haar-distributed matrix from U(n) or O(n): QR factorization of a Ginibre
/// draw, with column j of Q multiplied by conj(R_jj)/|R_jj|. Without that
/// phase (sign) correction the QR convention would bias the distribution.
RealMatrix sample_haar_real(int n, Rng& rng);
ComplexMatrix sample_haar_complex(int n, Rng& rng);

/// Isotropic unit vector (normalized Ginibre column).
Eigen::VectorXd sample_unit_vector_real(int n, Rng& rng);
Eigen::VectorXcd sample_unit_vector_complex(int n, Rng& rng);

/// Matrix with `cols` orthonormal columns distributed as the leading columns
/// of a Haar matrix (thin QR of a Ginibre block, phase-corrected).
RealMatrix sample_haar_columns_real(int n, int cols, Rng& rng);
ComplexMatrix sample_haar_columns_complex(int n, int cols, Rng& rng);

// Seeded one-shot variants; each constructs its private engine, so they are
// pure functions of (n, kind, seed) and safe to call concurrently.

RealMatrix sample_ginibre_real(int n, const SeedSpec& seed);
ComplexMatrix sample_ginibre_complex(int n, const SeedSpec& seed);
RealMatrix sample_haar_real(int n, const SeedSpec& seed);
ComplexMatrix sample_haar_complex(int n, const SeedSpec& seed);
Eigen::VectorXd sample_unit_vector_real(int n, const SeedSpec& seed);
Eigen::VectorXcd sample_unit_vector_complex(int n, const SeedSpec& seed);

namespace detail {
void require_dimension(int n);
}

}  // namespace truncprod
