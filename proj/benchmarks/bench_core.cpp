#include <benchmark/benchmark.h>

#include "truncprod/analytic.hpp"
#include "truncprod/contraction.hpp"
#include "truncprod/density.hpp"
#include "truncprod/moment_recursion.hpp"
#include "truncprod/sampling.hpp"
#include "truncprod/spectrum.hpp"

using namespace truncprod;

static void BM_haar_sample_complex(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(SeedSpec{1, 0});
    for (auto _ : state) {
        auto u = sample_haar_complex(n, rng);
        benchmark::DoNotOptimize(u.data());
    }
}
BENCHMARK(BM_haar_sample_complex)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_chain_step_complex(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ContractionChain<std::complex<double>> chain(n, 1, SeedSpec{2, 0});
    for (auto _ : state) {
        chain.advance(1);
        benchmark::DoNotOptimize(chain.matrix().data());
    }
}
BENCHMARK(BM_chain_step_complex)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_chain_step_real(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ContractionChain<double> chain(n, 1, SeedSpec{3, 0});
    for (auto _ : state) {
        chain.advance(1);
        benchmark::DoNotOptimize(chain.matrix().data());
    }
}
BENCHMARK(BM_chain_step_real)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_projector_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ProjectorChain<double> chain(n, 2, SeedSpec{4, 0});
    for (auto _ : state) {
        chain.advance(1);
        benchmark::DoNotOptimize(chain.matrix().data());
    }
}
BENCHMARK(BM_projector_step)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_singular_spectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ContractionConfig config{.n = n, .delta_n = 1, .chain_length = n / 2,
                             .group = GroupKind::unitary, .seed = {5, 0}, .realizations = 1};
    auto m = product_chain_complex(config);
    for (auto _ : state) {
        auto spec = singular_spectrum(m);
        benchmark::DoNotOptimize(spec.sigma_sq.data());
    }
}
BENCHMARK(BM_singular_spectrum)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_recursion_table_build(benchmark::State& state) {
    const int p_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        RecursionTable table(p_max);
        benchmark::DoNotOptimize(&table);
    }
}
BENCHMARK(BM_recursion_table_build)->Arg(8)->Arg(16)->Arg(20);

static void BM_recursion_trajectory(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rows = solve_recursion(n, 1, n, 8);
        benchmark::DoNotOptimize(rows.data());
    }
}
BENCHMARK(BM_recursion_trajectory)->Arg(300)->Arg(3000);

static void BM_moment_limit_complex(benchmark::State& state) {
    const double tau = 2.0;
    Complex p(1.0, 35.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moment_limit(p, tau));
    }
}
BENCHMARK(BM_moment_limit_complex);

static void BM_bromwich_point(benchmark::State& state) {
    const double tau = 2.0;
    const double lambda = lambda_min(tau) + 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bromwich_invert(tau, lambda));
    }
}
BENCHMARK(BM_bromwich_point)->Unit(benchmark::kMillisecond);

static void BM_density_profile(benchmark::State& state) {
    for (auto _ : state) {
        auto profile = density_profile(2.0, 10.0, 120, {}, 1);
        benchmark::DoNotOptimize(profile.density.data());
    }
}
BENCHMARK(BM_density_profile)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
