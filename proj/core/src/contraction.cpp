#include "truncprod/contraction.hpp"

#include <cmath>

namespace truncprod {

void ContractionConfig::validate() const {
    if (n < 2) throw std::invalid_argument("config.n: matrix dimension must be >= 2, got " + std::to_string(n));
    if (delta_n < 1 || delta_n >= n)
        throw std::invalid_argument("config.delta_n: need 1 <= delta_n < n, got " + std::to_string(delta_n));
    if (chain_length < 0)
        throw std::invalid_argument("config.chain_length: must be >= 0, got " + std::to_string(chain_length));
    if (realizations < 1)
        throw std::invalid_argument("config.realizations: must be >= 1, got " + std::to_string(realizations));
}

int chain_length_for_tau(double tau, int n, int delta_n, ChainType type) {
    if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
    if (n < 2 || delta_n < 1 || delta_n >= n) throw std::invalid_argument("invalid (n, delta_n)");
    const long rounded = std::lround(tau * n / delta_n);
    const long length = type == ChainType::product ? rounded - 1 : rounded;
    if (length < 0) throw std::invalid_argument("tau too small: resolved chain length is negative");
    return static_cast<int>(length);
}

double effective_tau(int chain_length, int n, int delta_n, ChainType type) {
    const int factors = type == ChainType::product ? chain_length + 1 : chain_length;
    return static_cast<double>(factors) * delta_n / n;
}

namespace {

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> product_impl(const ContractionConfig& config) {
    config.validate();
    ContractionChain<Scalar> chain(config.n, config.delta_n, config.seed);
    chain.advance(config.chain_length);
    return chain.matrix();
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> projector_impl(const ContractionConfig& config) {
    config.validate();
    if (config.chain_length < 1)
        throw std::invalid_argument("config.chain_length: projector chain needs at least one factor");
    ProjectorChain<Scalar> chain(config.n, config.delta_n, config.seed);
    chain.advance(config.chain_length);
    return chain.matrix();
}

}  // namespace

RealMatrix product_chain_real(const ContractionConfig& config) {
    return product_impl<double>(config);
}

ComplexMatrix product_chain_complex(const ContractionConfig& config) {
    return product_impl<std::complex<double>>(config);
}

RealMatrix projector_chain_real(const ContractionConfig& config) {
    return projector_impl<double>(config);
}

ComplexMatrix projector_chain_complex(const ContractionConfig& config) {
    return projector_impl<std::complex<double>>(config);
}

RealMatrix kaczmarz_chain(int n, const SeedSpec& seed) {
    detail::require_dimension(n);
    Rng rng(seed);
    RealMatrix q = RealMatrix::Identity(n, n);
    Eigen::VectorXd u(n);
    for (int step = 0; step < n; ++step) {
        u = sample_unit_vector_real(n, rng);
        q.noalias() -= u * (u.transpose() * q);
    }
    return q;
}

}  // namespace truncprod
