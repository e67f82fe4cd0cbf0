#pragma once

#include <functional>
#include <span>
#include <vector>

#include "truncprod/contraction.hpp"
#include "truncprod/spectrum.hpp"

namespace truncprod {

/// Singular spectra of one chain recorded at several lengths.
/// snapshots[k] is the spectrum after `steps[k]` factors.
struct ChainSnapshots {
    std::vector<int> steps;
    std::vector<SingularSpectrum> spectra;
};

/// Runs `config.realizations` independent chains (realization r uses
/// substream config.seed.stream_index + r) and records the singular spectrum
/// at each requested step count. `steps` must be non-decreasing; each chain
/// is grown once and snapshotted along the way, so a multi-tau experiment
/// costs one pass. Realizations are distributed over `workers` threads and
/// results are merged by realization index.
std::vector<ChainSnapshots> run_chain_snapshots(const ContractionConfig& config,
                                                std::span<const int> steps, ChainType type,
                                                int workers,
                                                const std::function<void(int)>& progress = {});

/// Spectra of Kaczmarz products Q_N for `realizations` independent draws.
std::vector<SingularSpectrum> run_kaczmarz_spectra(int n, const SeedSpec& seed, int realizations,
                                                   int workers);

/// Moments over realizations at one snapshot index: gathers spectra[k] from
/// every realization and feeds empirical_moments.
std::vector<MomentEstimate> snapshot_moments(std::span<const ChainSnapshots> runs, int snapshot_index,
                                             std::span<const int> p_list);

}  // namespace truncprod
