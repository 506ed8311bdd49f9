#include "hgalign/perturb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>
#include <tuple>

namespace hgalign {

void NoiseSpec::validate() const {
    if (noise_level < 0 || noise_level > 1)
        throw DomainError("noise: level must lie in [0, 1]");
    if (lambda < 0) throw DomainError("noise: lambda must be >= 0");
}

std::vector<Index> random_hyperedge(Index n, Real lambda, Rng& rng) {
    if (n < 1) throw DomainError("random_hyperedge: need at least one vertex");
    Index size = rng.poisson(lambda);
    size = std::clamp<Index>(size, 1, n);
    return rng.sample_without_replacement(n, size);
}

Perturbed permute(const Hypergraph& h, Rng& rng) {
    h.validate();
    const Index n = h.vertex_count, m = h.edge_count();
    const std::vector<Index> vperm = rng.permutation(n);  // old -> new id
    const std::vector<Index> eperm = rng.permutation(m);  // old -> new position

    Perturbed out;
    out.hypergraph.vertex_count = n;
    out.hypergraph.edges.resize(m);
    for (Index e = 0; e < m; ++e) {
        std::vector<Index> mem;
        mem.reserve(h.edges[e].size());
        for (Index v : h.edges[e]) mem.push_back(vperm[v]);
        std::sort(mem.begin(), mem.end());
        out.hypergraph.edges[eperm[e]] = std::move(mem);
    }
    if (!h.labels.empty()) {
        out.hypergraph.labels.resize(n);
        for (Index v = 0; v < n; ++v) out.hypergraph.labels[vperm[v]] = h.labels[v];
    }
    out.truth.vertex_map = vperm;
    out.truth.edge_map = eperm;
    return out;
}

Perturbed perturb(const Hypergraph& h, const NoiseSpec& spec) {
    spec.validate();
    h.validate();
    if (h.vertex_count == 0 || h.edge_count() == 0)
        throw DomainError("perturb: empty hypergraph");
    Rng rng(spec.seed);

    const Index m = h.edge_count();
    const Index replaced_count =
        static_cast<Index>(std::ceil(spec.noise_level * static_cast<Real>(m)));
    const std::vector<Index> replaced =
        rng.sample_without_replacement(m, std::min(replaced_count, m));

    Hypergraph noisy = h;
    std::vector<char> was_replaced(m, 0);
    for (Index e : replaced) {
        noisy.edges[e] = random_hyperedge(h.vertex_count, spec.lambda, rng);
        was_replaced[e] = 1;
    }

    Perturbed shuffled = permute(noisy, rng);
    for (Index e = 0; e < m; ++e)
        if (was_replaced[e]) shuffled.truth.edge_map[e] = kUnmapped;

    // noise can strand vertices; restore the 2-core invariant and restrict
    // the truth to survivors
    TwoCore core = two_core(shuffled.hypergraph);
    Perturbed out;
    out.hypergraph = std::move(core.core);
    out.truth.vertex_map.resize(h.vertex_count);
    for (Index v = 0; v < h.vertex_count; ++v)
        out.truth.vertex_map[v] = core.vertex_map[shuffled.truth.vertex_map[v]];
    out.truth.edge_map.assign(m, kUnmapped);
    for (Index e = 0; e < m; ++e)
        if (shuffled.truth.edge_map[e] != kUnmapped)
            out.truth.edge_map[e] = core.edge_map[shuffled.truth.edge_map[e]];
    return out;
}

namespace {

Alignment invert_truth(const Alignment& truth, Index query_vertices,
                       Index query_edges) {
    Alignment inv;
    inv.vertex_map.assign(query_vertices, kUnmapped);
    inv.edge_map.assign(query_edges, kUnmapped);
    for (Index v = 0; v < static_cast<Index>(truth.vertex_map.size()); ++v)
        if (truth.vertex_map[v] != kUnmapped) inv.vertex_map[truth.vertex_map[v]] = v;
    for (Index e = 0; e < static_cast<Index>(truth.edge_map.size()); ++e)
        if (truth.edge_map[e] != kUnmapped) inv.edge_map[truth.edge_map[e]] = e;
    return inv;
}

std::pair<Real, Real> mean_std(const std::vector<Real>& xs) {
    if (xs.empty()) return {0, 0};
    Real mean = 0;
    for (Real x : xs) mean += x;
    mean /= static_cast<Real>(xs.size());
    if (xs.size() < 2) return {mean, 0};
    Real ss = 0;
    for (Real x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<Real>(xs.size() - 1))};
}

}  // namespace

std::vector<Real> default_noise_levels() { return {0.0, 0.05, 0.1, 0.15, 0.2}; }

SweepResult sweep(const Hypergraph& h, const std::vector<Real>& levels,
                  const std::vector<std::uint64_t>& seeds, const SolverConfig& cfg,
                  Real lambda, int jobs) {
    if (levels.empty() || seeds.empty())
        throw DomainError("sweep: need at least one level and one seed");
    if (jobs < 1) throw DomainError("sweep: jobs must be >= 1");
    const Real lam = lambda > 0 ? lambda : stats(h).mean_edge_size;

    const size_t total = levels.size() * seeds.size();
    SweepResult out;
    out.cells.resize(total);

    auto run_cell = [&](size_t li, size_t si) {
        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        SweepCell cell;
        cell.level = levels[li];
        cell.seed = seeds[si];
        NoiseSpec spec{levels[li], lam,
                       mix_seed(seeds[si], static_cast<std::uint64_t>(li))};
        Perturbed p = perturb(h, spec);
        if (p.hypergraph.vertex_count == 0 || p.hypergraph.edge_count() == 0) {
            // noise destroyed the instance; score zero rather than abort the
            // whole grid
            cell.accuracy = 0;
            cell.edge_correctness = 0;
        } else {
            AlignResult res = align(p.hypergraph, h, cfg);
            Alignment truth_inv =
                invert_truth(p.truth, p.hypergraph.vertex_count, p.hypergraph.edge_count());
            std::vector<Index> all(p.hypergraph.vertex_count);
            for (Index v = 0; v < p.hypergraph.vertex_count; ++v) all[v] = v;
            cell.accuracy = accuracy(res.alignment, truth_inv, all);
            cell.edge_correctness = hyperedge_correctness(p.hypergraph, h, res.alignment);
        }
        cell.runtime_ms =
            std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        out.cells[li * seeds.size() + si] = cell;
    };

    if (jobs == 1 || total == 1) {
        for (size_t li = 0; li < levels.size(); ++li)
            for (size_t si = 0; si < seeds.size(); ++si) run_cell(li, si);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(jobs);
        const int workers = static_cast<int>(std::min<size_t>(jobs, total));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                try {
                    for (size_t idx = static_cast<size_t>(w); idx < total;
                         idx += static_cast<size_t>(workers))
                        run_cell(idx / seeds.size(), idx % seeds.size());
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    for (size_t li = 0; li < levels.size(); ++li) {
        std::vector<Real> accs, ecs;
        for (size_t si = 0; si < seeds.size(); ++si) {
            accs.push_back(out.cells[li * seeds.size() + si].accuracy);
            ecs.push_back(out.cells[li * seeds.size() + si].edge_correctness);
        }
        SweepAggregate agg;
        agg.level = levels[li];
        std::tie(agg.accuracy_mean, agg.accuracy_std) = mean_std(accs);
        std::tie(agg.ec_mean, agg.ec_std) = mean_std(ecs);
        out.aggregates.push_back(agg);
    }
    return out;
}

}  // namespace hgalign
