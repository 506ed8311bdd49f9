#pragma once

// Shared fixtures for the test suite: deterministic random hypergraphs, a
// rigidity certificate based on color refinement, and dense helpers for
// checking the sparse production code against Eigen's dense kernels.

#include "hgalign/hypergraph.hpp"
#include "hgalign/rng.hpp"
#include "hgalign/types.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace hgtest {

using hgalign::Hypergraph;
using hgalign::Index;
using hgalign::Mat;
using hgalign::Real;
using hgalign::Rng;
using hgalign::SpMat;
using hgalign::Vec;

inline Hypergraph make_hypergraph(Index n, std::vector<std::vector<Index>> edges) {
    Hypergraph h;
    h.vertex_count = n;
    h.edges = std::move(edges);
    for (auto& e : h.edges) std::sort(e.begin(), e.end());
    h.validate();
    return h;
}

// m hyperedges with sizes uniform in [smin, smax] (clamped to n), members
// sampled without replacement. Deterministic in the rng stream.
inline Hypergraph random_hypergraph(Rng& rng, Index n, Index m, Index smin,
                                    Index smax) {
    Hypergraph h;
    h.vertex_count = n;
    h.edges.reserve(static_cast<size_t>(m));
    const Index lo = std::min(smin, n), hi = std::min(smax, n);
    for (Index e = 0; e < m; ++e) {
        Index s = lo + static_cast<Index>(
                           rng.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
        h.edges.push_back(rng.sample_without_replacement(n, s));
    }
    return h;
}

inline SpMat sparse_from_dense(const Mat& d) {
    SpMat s = d.sparseView();
    s.makeCompressed();
    return s;
}

// Dense materialization of the coupled block operator
// [[wv/beta, bnq], [bnd^T, we^T/beta]] whose rows stack (query vertices,
// data hyperedges) and whose columns stack (data vertices, query hyperedges).
inline Mat dense_block(const SpMat& bnq, const SpMat& bnd, const SpMat& wv,
                       const SpMat& we, Real beta) {
    const Index nq = bnq.rows(), mq = bnq.cols();
    const Index nd = bnd.rows(), md = bnd.cols();
    Mat m = Mat::Zero(nq + md, nd + mq);
    if (wv.nonZeros() > 0) m.topLeftCorner(nq, nd) = Mat(wv) / beta;
    m.topRightCorner(nq, mq) = Mat(bnq);
    m.bottomLeftCorner(md, nd) = Mat(bnd).transpose();
    if (we.nonZeros() > 0) m.bottomRightCorner(md, mq) = Mat(we).transpose() / beta;
    return m;
}

// Color refinement on the bipartite incidence structure: vertices and
// hyperedges repeatedly split by the multiset of their neighbors' colors.
// When every vertex ends with a distinct color, any self-isomorphism must fix
// every vertex (colors are isomorphism-invariant), certifying rigidity.
inline bool color_refinement_discrete(const Hypergraph& h) {
    const Index n = h.vertex_count, m = h.edge_count();
    if (n == 0) return false;
    const auto v2e = h.vertex_to_edges();
    std::vector<int> vc(static_cast<size_t>(n), 0), ec(static_cast<size_t>(m), 0);
    size_t classes = 0;
    for (Index round = 0; round <= n + m; ++round) {
        std::map<std::pair<int, std::vector<int>>, int> ecanon;
        std::vector<int> ec2(static_cast<size_t>(m));
        for (Index e = 0; e < m; ++e) {
            std::vector<int> sig;
            for (Index v : h.edges[static_cast<size_t>(e)])
                sig.push_back(vc[static_cast<size_t>(v)]);
            std::sort(sig.begin(), sig.end());
            ec2[static_cast<size_t>(e)] =
                ecanon
                    .emplace(std::make_pair(ec[static_cast<size_t>(e)], std::move(sig)),
                             static_cast<int>(ecanon.size()))
                    .first->second;
        }
        std::map<std::pair<int, std::vector<int>>, int> vcanon;
        std::vector<int> vc2(static_cast<size_t>(n));
        for (Index v = 0; v < n; ++v) {
            std::vector<int> sig;
            for (Index e : v2e[static_cast<size_t>(v)])
                sig.push_back(ec2[static_cast<size_t>(e)]);
            std::sort(sig.begin(), sig.end());
            vc2[static_cast<size_t>(v)] =
                vcanon
                    .emplace(std::make_pair(vc[static_cast<size_t>(v)], std::move(sig)),
                             static_cast<int>(vcanon.size()))
                    .first->second;
        }
        vc.swap(vc2);
        ec.swap(ec2);
        const size_t now = vcanon.size() + ecanon.size();
        if (now == classes) break;
        classes = now;
    }
    std::set<int> distinct(vc.begin(), vc.end());
    return static_cast<Index>(distinct.size()) == n;
}

// Searches seeded random hypergraphs for a 2-core that is rigid (distinct
// stable colors), duplicate-edge free, and inside the requested vertex range.
inline Hypergraph rigid_instance(std::uint64_t seed, Index core_min, Index core_max,
                                 Index n_raw, Index m_raw, Index smin = 2,
                                 Index smax = 6) {
    for (std::uint64_t attempt = 0; attempt < 2000; ++attempt) {
        Rng rng(hgalign::mix_seed(seed, attempt, 0x716c6d1b67ull));
        Hypergraph h = random_hypergraph(rng, n_raw, m_raw, smin, smax);
        Hypergraph core = hgalign::two_core(h).core;
        if (core.vertex_count < core_min || core.vertex_count > core_max) continue;
        if (core.edge_count() < 2) continue;
        std::set<std::vector<Index>> uniq(core.edges.begin(), core.edges.end());
        if (static_cast<Index>(uniq.size()) != core.edge_count()) continue;
        if (!color_refinement_discrete(core)) continue;
        return core;
    }
    throw hgalign::DomainError("rigid_instance: no admissible instance found");
}

}  // namespace hgtest
