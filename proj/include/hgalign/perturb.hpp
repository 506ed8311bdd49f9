#pragma once

#include "hgalign/hypergraph.hpp"
#include "hgalign/metrics.hpp"
#include "hgalign/rng.hpp"
#include "hgalign/solver.hpp"
#include "hgalign/types.hpp"

#include <cstdint>
#include <vector>

namespace hgalign {

struct NoiseSpec {
    Real noise_level = 0;  // fraction of hyperedges replaced, in [0, 1]
    Real lambda = 1;       // Poisson mean for replacement edge sizes
    std::uint64_t seed = 0;

    void validate() const;
};

// Random hyperedge: size ~ Poisson(lambda) clamped to [1, n], members sampled
// uniformly without replacement, returned ascending.
std::vector<Index> random_hyperedge(Index n, Real lambda, Rng& rng);

struct Perturbed {
    Hypergraph hypergraph;
    // original id -> perturbed id; edge_map is unmapped for replaced edges
    // and for edges whose image was peeled by the closing 2-core pass
    Alignment truth;
};

// Uniform vertex relabeling plus a shuffle of hyperedge order; truth records
// both permutations.
Perturbed permute(const Hypergraph& h, Rng& rng);

// Replaces ceil(noise_level * m) hyperedges with random ones, then permutes.
// The noisy hypergraph is re-2-cored (noise can strand vertices) with truth
// restricted to survivors. Same NoiseSpec -> bit-identical output.
Perturbed perturb(const Hypergraph& h, const NoiseSpec& spec);

struct SweepCell {
    Real level = 0;
    std::uint64_t seed = 0;
    Real accuracy = 0;
    Real edge_correctness = 0;
    double runtime_ms = 0;
};

struct SweepAggregate {
    Real level = 0;
    Real accuracy_mean = 0, accuracy_std = 0;
    Real ec_mean = 0, ec_std = 0;
};

struct SweepResult {
    std::vector<SweepCell> cells;           // sorted by (level, seed)
    std::vector<SweepAggregate> aggregates; // sorted by level
};

// Noise sweep: for each (level, seed) cell, perturb `h`, align the noisy
// 2-core (query side) against `h`, and score accuracy / hyperedge
// correctness against the inverted truth. lambda defaults to the mean edge
// size of `h` when <= 0. Cells own independent RNG streams derived from
// (seed, level index, repetition), so jobs > 1 changes wall time only.
SweepResult sweep(const Hypergraph& h, const std::vector<Real>& levels,
                  const std::vector<std::uint64_t>& seeds, const SolverConfig& cfg,
                  Real lambda = 0, int jobs = 1);

// standard noise levels {0, 0.05, 0.1, 0.15, 0.2}
std::vector<Real> default_noise_levels();

}  // namespace hgalign
