#include "truncprod/experiment.hpp"

#include <algorithm>

#include "truncprod/parallel.hpp"

namespace truncprod {

namespace {

template <typename Scalar>
ChainSnapshots run_one(const ContractionConfig& config, std::span<const int> steps, ChainType type,
                       int realization) {
    SeedSpec seed{config.seed.master_seed, config.seed.stream_index + static_cast<std::uint64_t>(realization)};
    ChainSnapshots out;
    out.steps.assign(steps.begin(), steps.end());
    out.spectra.reserve(steps.size());

    auto snapshot_along = [&](auto& chain) {
        for (int target : steps) {
            chain.advance(target - chain.steps_taken());
            out.spectra.push_back(singular_spectrum(chain.matrix()));
        }
    };
    if (type == ChainType::product) {
        ContractionChain<Scalar> chain(config.n, config.delta_n, seed);
        snapshot_along(chain);
    } else {
        ProjectorChain<Scalar> chain(config.n, config.delta_n, seed);
        snapshot_along(chain);
    }
    return out;
}

}  // namespace

std::vector<ChainSnapshots> run_chain_snapshots(const ContractionConfig& config,
                                                std::span<const int> steps, ChainType type,
                                                int workers,
                                                const std::function<void(int)>& progress) {
    config.validate();
    if (steps.empty()) throw std::invalid_argument("run_chain_snapshots: no snapshot steps");
    if (!std::is_sorted(steps.begin(), steps.end()))
        throw std::invalid_argument("run_chain_snapshots: snapshot steps must be non-decreasing");
    if (steps.front() < 0) throw std::invalid_argument("run_chain_snapshots: negative step count");
    if (type == ChainType::projector && steps.front() < 1)
        throw std::invalid_argument("run_chain_snapshots: projector chains need at least one factor");

    return parallel_map(config.realizations, workers, [&](int r) {
        ChainSnapshots snap = config.group == GroupKind::unitary
                                  ? run_one<std::complex<double>>(config, steps, type, r)
                                  : run_one<double>(config, steps, type, r);
        if (progress) progress(r);
        return snap;
    });
}

std::vector<SingularSpectrum> run_kaczmarz_spectra(int n, const SeedSpec& seed, int realizations,
                                                   int workers) {
    if (realizations < 1) throw std::invalid_argument("run_kaczmarz_spectra: realizations must be >= 1");
    return parallel_map(realizations, workers, [&](int r) {
        SeedSpec sub{seed.master_seed, seed.stream_index + static_cast<std::uint64_t>(r)};
        return singular_spectrum(kaczmarz_chain(n, sub));
    });
}

std::vector<MomentEstimate> snapshot_moments(std::span<const ChainSnapshots> runs, int snapshot_index,
                                             std::span<const int> p_list) {
    std::vector<SingularSpectrum> spectra;
    spectra.reserve(runs.size());
    for (const auto& run : runs) spectra.push_back(run.spectra.at(snapshot_index));
    return empirical_moments(spectra, p_list);
}

}  // namespace truncprod
