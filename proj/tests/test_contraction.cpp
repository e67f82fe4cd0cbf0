#include <doctest.h>

#include <cmath>
#include <numeric>

#include "truncprod/contraction.hpp"
#include "truncprod/experiment.hpp"
#include "truncprod/parallel.hpp"

using namespace truncprod;

namespace {

double max_sigma_sq(const SingularSpectrum& s) {
    return s.sigma_sq.empty() ? 0.0 : s.sigma_sq.front();
}

MomentEstimate trace_moment_mc(int count, int workers, const std::function<double(int)>& value) {
    std::vector<double> values = parallel_map(count, workers, value);
    return mean_and_error(1, values);
}

}  // namespace

TEST_CASE("truncate: projector on the identity") {
    RealMatrix eye = RealMatrix::Identity(5, 5);
    RealMatrix t = truncate(eye, 1);
    CHECK(t(0, 0) == 0.0);
    for (int i = 1; i < 5; ++i) CHECK(t(i, i) == 1.0);
    CHECK(truncate(eye, 0) == eye);
}

TEST_CASE("truncate: zeroed rows and columns, rank bound") {
    auto u = sample_haar_complex(12, SeedSpec{3, 0});
    auto t = truncate(u, 3);
    CHECK(t.topRows(3).cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.leftCols(3).cwiseAbs().maxCoeff() == 0.0);
    // Rank bound checked through the singular values themselves.
    auto spec = singular_spectrum(t);
    int numerically_nonzero = 0;
    for (double s2 : spec.sigma_sq)
        if (s2 > 1e-20) ++numerically_nonzero;
    CHECK(numerically_nonzero <= 12 - 3);
}

TEST_CASE("truncate: depth must stay below the dimension") {
    RealMatrix eye = RealMatrix::Identity(4, 4);
    CHECK_THROWS_AS(truncate(eye, 4), std::invalid_argument);
    CHECK_THROWS_AS(truncate(eye, -1), std::invalid_argument);
}

TEST_CASE("product chain: empty product is the identity") {
    ContractionConfig config{.n = 6, .delta_n = 1, .chain_length = 0, .group = GroupKind::unitary,
                             .seed = {1, 0}, .realizations = 1};
    CHECK(product_chain_complex(config) == ComplexMatrix::Identity(6, 6));
}

TEST_CASE("product chain: singular values stay below one") {
    ContractionConfig config{.n = 24, .delta_n = 2, .chain_length = 7, .group = GroupKind::unitary,
                             .seed = {8, 4}, .realizations = 1};
    auto spec = singular_spectrum(product_chain_complex(config));
    CHECK(max_sigma_sq(spec) <= 1.0 + 1e-10);
    config.group = GroupKind::orthogonal;
    auto spec_o = singular_spectrum(product_chain_real(config));
    CHECK(max_sigma_sq(spec_o) <= 1.0 + 1e-10);
}

TEST_CASE("product chain: deterministic and consistent with streaming snapshots") {
    ContractionConfig config{.n = 10, .delta_n = 2, .chain_length = 3, .group = GroupKind::unitary,
                             .seed = {55, 9}, .realizations = 1};
    auto a = product_chain_complex(config);
    auto b = product_chain_complex(config);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);

    ContractionChain<std::complex<double>> chain(10, 2, config.seed);
    chain.advance(2);
    chain.advance(1);
    CHECK((chain.matrix() - a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("product chain: exact first moment at L=1, N=4") {
    // Exact Haar moment E|U_ij|^2 = 1/N summed over the (N - dN)^2 surviving
    // entries gives E[Tr C C^dag]/N = 9/16.
    ContractionConfig base{.n = 4, .delta_n = 1, .chain_length = 1, .group = GroupKind::unitary,
                           .seed = {2024, 0}, .realizations = 1};
    auto est = trace_moment_mc(100000, 2, [&](int r) {
        ContractionConfig c = base;
        c.seed.stream_index = static_cast<std::uint64_t>(r);
        auto m = product_chain_complex(c);
        return m.cwiseAbs2().sum() / c.n;
    });
    CHECK(std::abs(est.mean - 9.0 / 16.0) < 4 * est.std_error);
}

TEST_CASE("projector chain: single projector is idempotent") {
    ContractionConfig config{.n = 20, .delta_n = 3, .chain_length = 1, .group = GroupKind::unitary,
                             .seed = {77, 0}, .realizations = 1};
    auto q = projector_chain_complex(config);
    CHECK(((q * q) - q).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((q - q.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("projector chain: tower property E[Tr Q Q^dag]/N = ((N-dN)/N)^L") {
    ContractionConfig base{.n = 50, .delta_n = 5, .chain_length = 4, .group = GroupKind::orthogonal,
                           .seed = {31337, 0}, .realizations = 1};
    auto est = trace_moment_mc(10000, 2, [&](int r) {
        ContractionConfig c = base;
        c.seed.stream_index = static_cast<std::uint64_t>(r);
        auto m = projector_chain_real(c);
        return m.cwiseAbs2().sum() / c.n;
    });
    const double expected = std::pow(45.0 / 50.0, 4);
    CHECK(std::abs(est.mean - expected) < 4 * est.std_error);
}

TEST_CASE("projector chain Q_L matches product chain C_{L-1} in distribution") {
    const int n = 100, delta_n = 2, length = 5, realizations = 150;
    const std::vector<int> p_list{1, 2, 3, 4, 5};

    ContractionConfig cq{.n = n, .delta_n = delta_n, .chain_length = length,
                         .group = GroupKind::unitary, .seed = {606, 0}, .realizations = realizations};
    ContractionConfig cc = cq;
    cc.chain_length = length - 1;
    cc.seed.master_seed = 607;

    const std::vector<int> sq{length}, sc{length - 1};
    auto q_runs = run_chain_snapshots(cq, sq, ChainType::projector, 2);
    auto c_runs = run_chain_snapshots(cc, sc, ChainType::product, 2);
    auto q_m = snapshot_moments(q_runs, 0, p_list);
    auto c_m = snapshot_moments(c_runs, 0, p_list);
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        const double combined =
            std::sqrt(q_m[i].std_error * q_m[i].std_error + c_m[i].std_error * c_m[i].std_error);
        CHECK(std::abs(q_m[i].mean - c_m[i].mean) < 3 * combined);
    }
}

TEST_CASE("snapshot runner: results independent of the worker count") {
    ContractionConfig config{.n = 20, .delta_n = 1, .chain_length = 6, .group = GroupKind::unitary,
                             .seed = {7070, 0}, .realizations = 9};
    const std::vector<int> steps{3, 6};
    auto one = run_chain_snapshots(config, steps, ChainType::product, 1);
    auto many = run_chain_snapshots(config, steps, ChainType::product, 4);
    REQUIRE(one.size() == many.size());
    for (std::size_t r = 0; r < one.size(); ++r)
        for (std::size_t k = 0; k < steps.size(); ++k)
            for (int i = 0; i < one[r].spectra[k].size(); ++i)
                CHECK(one[r].spectra[k].sigma_sq[i] == many[r].spectra[k].sigma_sq[i]);
}

TEST_CASE("unitary and orthogonal chains share their moment statistics") {
    const int n = 100, length = 99, realizations = 40;
    const std::vector<int> p_list{1, 2, 3};
    const std::vector<int> steps{length};
    ContractionConfig cu{.n = n, .delta_n = 1, .chain_length = length, .group = GroupKind::unitary,
                         .seed = {501, 0}, .realizations = realizations};
    ContractionConfig co = cu;
    co.group = GroupKind::orthogonal;
    co.seed.master_seed = 502;
    auto mu = snapshot_moments(run_chain_snapshots(cu, steps, ChainType::product, 2), 0, p_list);
    auto mo = snapshot_moments(run_chain_snapshots(co, steps, ChainType::product, 2), 0, p_list);
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        const double combined = std::hypot(mu[i].std_error, mo[i].std_error);
        CHECK(std::abs(mu[i].mean - mo[i].mean) < 3 * combined);
    }
}

TEST_CASE("kaczmarz: one-dimensional product is the zero matrix") {
    auto q = kaczmarz_chain(1, SeedSpec{1, 0});
    CHECK(std::abs(q(0, 0)) < 1e-15);
}

TEST_CASE("kaczmarz: contraction property and first moment 1/e") {
    auto spec_small = singular_spectrum(kaczmarz_chain(40, SeedSpec{2, 0}));
    CHECK(max_sigma_sq(spec_small) <= 1.0 + 1e-10);

    // Eq. evaluated at p=1: (p/e)^p / p! = 1/e.
    const int n = 300, realizations = 20;
    auto spectra = run_kaczmarz_spectra(n, SeedSpec{4242, 0}, realizations, 2);
    const std::vector<int> p_list{1};
    auto m = empirical_moments(spectra, p_list);
    CHECK(std::abs(m[0].mean - std::exp(-1.0)) < 3 * m[0].std_error);
}

TEST_CASE("singular spectrum: identity and diagonal cases") {
    auto eye_spec = singular_spectrum(RealMatrix(RealMatrix::Identity(4, 4)));
    for (double s2 : eye_spec.sigma_sq) CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
    for (double l : eye_spec.lambda) CHECK(std::abs(l) < 1e-12);

    RealMatrix d = RealMatrix::Zero(2, 2);
    d(1, 1) = 0.5;
    auto spec = singular_spectrum(d);
    CHECK(spec.sigma_sq[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(spec.sigma_sq[1] == SingularSpectrum::underflow_floor);
    CHECK(spec.underflow_count == 1);
    CHECK(spec.lambda[1] == SingularSpectrum::lambda_cap);
}

TEST_CASE("singular spectrum: Haar matrices have unit spectrum") {
    auto u = sample_haar_complex(40, SeedSpec{91, 0});
    auto spec = singular_spectrum(u);
    for (double s2 : spec.sigma_sq) CHECK(std::abs(s2 - 1.0) < 1e-10);
}

TEST_CASE("empirical moments: identity spectra and monotonicity") {
    std::vector<SingularSpectrum> spectra(3, singular_spectrum(RealMatrix(RealMatrix::Identity(5, 5))));
    const std::vector<int> p_list{1, 2, 5};
    auto m = empirical_moments(spectra, p_list);
    for (const auto& e : m) {
        CHECK(e.mean == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.std_error == doctest::Approx(0.0));
    }

    ContractionConfig config{.n = 30, .delta_n = 3, .chain_length = 6, .group = GroupKind::orthogonal,
                             .seed = {12, 0}, .realizations = 1};
    auto spec = singular_spectrum(product_chain_real(config));
    const std::vector<int> orders{1, 2, 3, 4, 5, 6, 7, 8};
    auto single = empirical_moments(std::vector<SingularSpectrum>{spec}, orders);
    for (std::size_t i = 1; i < single.size(); ++i) CHECK(single[i].mean <= single[i - 1].mean + 1e-15);

    CHECK_THROWS_AS(empirical_moments(std::vector<SingularSpectrum>{}, p_list), std::invalid_argument);
}

TEST_CASE("empirical moments: tau = 1 first moment approaches 1/e") {
    // Double-scaling value with G_1 = 1; N = 300 keeps the finite-size bias
    // far below the Monte Carlo band.
    const int n = 300;
    ContractionConfig config{.n = n, .delta_n = 1,
                             .chain_length = chain_length_for_tau(1.0, n, 1),
                             .group = GroupKind::orthogonal, .seed = {818, 0}, .realizations = 20};
    const std::vector<int> steps{config.chain_length};
    auto runs = run_chain_snapshots(config, steps, ChainType::product, 2);
    const std::vector<int> p_list{1};
    auto m = snapshot_moments(runs, 0, p_list);
    CHECK(std::abs(m[0].mean - std::exp(-1.0)) < 3 * m[0].std_error);
}

TEST_CASE("density matrix spectrum: normalization and degenerate input") {
    SingularSpectrum two;
    two.sigma_sq = {1.0, 1.0};
    two.lambda = {0.0, 0.0};
    auto rho = density_matrix_spectrum(two);
    CHECK(rho.mu[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rho.mu[1] == doctest::Approx(0.5).epsilon(1e-14));

    SingularSpectrum pure;
    pure.sigma_sq = {0.7, 0.0, 0.0};
    pure.lambda = {-std::log(0.7), 690, 690};
    auto rho_pure = density_matrix_spectrum(pure);
    CHECK(rho_pure.mu[0] == doctest::Approx(1.0).epsilon(1e-14));

    auto chain_spec = singular_spectrum(product_chain_complex(
        {.n = 16, .delta_n = 2, .chain_length = 4, .group = GroupKind::unitary, .seed = {5, 5},
         .realizations = 1}));
    auto rho_chain = density_matrix_spectrum(chain_spec);
    CHECK(std::abs(std::accumulate(rho_chain.mu.begin(), rho_chain.mu.end(), 0.0) - 1.0) < 1e-12);

    SingularSpectrum dead;
    dead.sigma_sq = {0.0, 0.0};
    dead.lambda = {690, 690};
    CHECK_THROWS_AS(density_matrix_spectrum(dead), numerical_error);
}

TEST_CASE("entropies: pure, maximally mixed, two-level") {
    DensityMatrixSpectrum pure{{1.0, 0.0, 0.0}};
    CHECK(entropy_vn(pure) == 0.0);

    const int n = 12;
    DensityMatrixSpectrum mixed{std::vector<double>(n, 1.0 / n)};
    CHECK(entropy_vn(mixed) == doctest::Approx(std::log(n)).epsilon(1e-12));
    for (double alpha : {0.5, 2.0, 3.5})
        CHECK(entropy_renyi(mixed, alpha) == doctest::Approx(std::log(n)).epsilon(1e-12));

    DensityMatrixSpectrum half{{0.5, 0.5}};
    CHECK(entropy_vn(half) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(entropy_renyi(half, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("entropies: invalid Renyi order rejected, alpha -> 1 limit") {
    DensityMatrixSpectrum rho{{0.6, 0.3, 0.1}};
    CHECK_THROWS_AS(entropy_renyi(rho, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(entropy_renyi(rho, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(entropy_renyi(rho, -2.0), std::invalid_argument);

    // Central difference across alpha = 1 reproduces the von Neumann value.
    Rng rng(SeedSpec{99, 0});
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> mu(8);
        double total = 0;
        for (double& m : mu) {
            m = -std::log(rng.uniform() + 1e-12);
            total += m;
        }
        for (double& m : mu) m /= total;
        DensityMatrixSpectrum r{mu};
        const double eps = 1e-4;
        const double central = 0.5 * (entropy_renyi(r, 1.0 - eps) + entropy_renyi(r, 1.0 + eps));
        CHECK(std::abs(central - entropy_vn(r)) < 1e-6);
    }
}

TEST_CASE("entropy invariants on chain output") {
    ContractionConfig config{.n = 40, .delta_n = 2, .chain_length = 10, .group = GroupKind::unitary,
                             .seed = {314, 0}, .realizations = 1};
    auto rho = density_matrix_spectrum(singular_spectrum(product_chain_complex(config)));
    const double vn = entropy_vn(rho);
    CHECK(vn >= 0.0);
    CHECK(vn <= std::log(40.0) + 1e-12);
    double prev = entropy_renyi(rho, 0.5);
    for (double alpha : {0.8, 1.5, 2.0, 4.0}) {
        const double cur = entropy_renyi(rho, alpha);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("tau convention: figure-caption lengths and effective tau") {
    CHECK(chain_length_for_tau(1.0, 300, 1, ChainType::product) == 299);
    CHECK(chain_length_for_tau(1.0, 300, 1, ChainType::projector) == 300);
    CHECK(chain_length_for_tau(0.5, 300, 2, ChainType::product) == 74);
    CHECK(effective_tau(299, 300, 1, ChainType::product) == doctest::Approx(1.0));
    CHECK(effective_tau(300, 300, 1, ChainType::projector) == doctest::Approx(1.0));
    CHECK_THROWS_AS(chain_length_for_tau(-1.0, 300, 1), std::invalid_argument);
}

TEST_CASE("config validation reports the offending field") {
    ContractionConfig bad{.n = 4, .delta_n = 4, .chain_length = 1, .group = GroupKind::unitary,
                          .seed = {}, .realizations = 1};
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("delta_n"), std::invalid_argument);
    bad.delta_n = 1;
    bad.realizations = 0;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("realizations"), std::invalid_argument);
}
