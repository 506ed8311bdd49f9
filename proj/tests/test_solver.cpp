#include "hgalign/solver.hpp"

#include "hgalign/hypergraph.hpp"
#include "hgalign/metrics.hpp"
#include "hgalign/perturb.hpp"
#include "hgalign/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

using namespace hgalign;
using hgtest::make_hypergraph;
using hgtest::sparse_from_dense;

namespace {

std::vector<Index> all_ids(Index n) {
    std::vector<Index> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), Index{0});
    return v;
}

}  // namespace

TEST_CASE("importance: empty partial solutions give empty importances") {
    const Hypergraph h = make_hypergraph(3, {{0, 1}, {1, 2}});
    const SpMat bn = normalized_incidence(h);
    const auto [wv, we] = importance_from_partial(bn, bn, SpMat(3, 3), SpMat(2, 2));
    CHECK(nonzero_count(wv) == 0);
    CHECK(nonzero_count(we) == 0);
    CHECK(wv.rows() == 3);
    CHECK(we.rows() == 2);
}

TEST_CASE("importance: matching both vertices of a shared pair edge scores 1") {
    const Hypergraph h = make_hypergraph(2, {{0, 1}});
    const SpMat bn = normalized_incidence(h);
    const SpMat xstar = alignment_matrix({0, 1}, 2, 2);
    const auto [wv, we] = importance_from_partial(bn, bn, xstar, SpMat(1, 1));
    REQUIRE(we.rows() == 1);
    REQUIRE(we.cols() == 1);
    CHECK(Mat(we)(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("importance: entries bounded by 1 when the partial map is a permutation") {
    Rng rng(1001);
    for (int rep = 0; rep < 5; ++rep) {
        const Hypergraph hq = hgtest::random_hypergraph(rng, 6, 5, 2, 4);
        const Hypergraph hd = hgtest::random_hypergraph(rng, 6, 6, 2, 4);
        const std::vector<Index> perm = rng.permutation(6);
        const SpMat xstar = alignment_matrix(perm, 6, 6);
        std::vector<Index> eperm = rng.permutation(6);
        eperm.resize(5);
        const SpMat ystar = alignment_matrix(eperm, 5, 6);
        const SpMat bnq = normalized_incidence(hq), bnd = normalized_incidence(hd);
        const auto [wv, we] = importance_from_partial(bnq, bnd, xstar, ystar);
        // unit columns bound the hyperedge importances by 1
        for (Index r = 0; r < we.rows(); ++r)
            for (SpMat::InnerIterator it(we, r); it; ++it)
                CHECK(it.value() <= 1.0 + 1e-12);
        // vertex importances are bounded by the row-norm products instead
        const Vec qrow = row_sums(SpMat(bnq.cwiseProduct(bnq)));
        const Vec drow = row_sums(SpMat(bnd.cwiseProduct(bnd)));
        for (Index r = 0; r < wv.rows(); ++r)
            for (SpMat::InnerIterator it(wv, r); it; ++it)
                CHECK(it.value() <=
                      std::sqrt(qrow(it.row()) * drow(it.col())) + 1e-12);
    }
}

TEST_CASE("has_unmatched: empty, full, and edge-deficient solutions") {
    CHECK(has_unmatched(SpMat(2, 2), SpMat(1, 1)));
    const SpMat x = alignment_matrix({0, 1}, 2, 2);
    const SpMat y = alignment_matrix({0}, 1, 1);
    CHECK(!has_unmatched(x, y));
    CHECK(has_unmatched(x, SpMat(1, 1)));
}

TEST_CASE("solver config validation") {
    SolverConfig ok;
    CHECK_NOTHROW(ok.validate());
    SolverConfig bad = ok;
    bad.beta = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = ok;
    bad.top_k = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = ok;
    bad.max_outer_rounds = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("align: rejects query sides larger than the data sides") {
    const Hypergraph big = make_hypergraph(4, {{0, 1}, {1, 2}, {2, 3}});
    const Hypergraph small = make_hypergraph(2, {{0, 1}, {0, 1}});
    CHECK_THROWS_AS(align(big, small, {}), DomainError);
}

TEST_CASE("align: doubled pair edge maps within the automorphism class") {
    const Hypergraph h = make_hypergraph(2, {{0, 1}, {0, 1}});
    const AlignResult res = align(h, h, {});
    res.alignment.validate(2, 2);
    CHECK(res.alignment.mapped_vertices() == 2);
    CHECK(res.alignment.mapped_edges() == 2);
    CHECK(hyperedge_correctness(h, h, res.alignment) == doctest::Approx(1.0));
}

TEST_CASE("align: exact recovery of a relabeled rigid instance, dense mode") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        const Hypergraph h = hgtest::rigid_instance(seed, 8, 16, 14, 12, 2, 4);
        Rng rng(seed * 31 + 7);
        const Perturbed p = permute(h, rng);
        const AlignResult res = align(h, p.hypergraph, {});
        res.alignment.validate(h.vertex_count, h.edge_count());
        const Real acc =
            accuracy(res.alignment, p.truth, all_ids(h.vertex_count));
        CHECK(acc == doctest::Approx(1.0));
        CHECK(hyperedge_correctness(h, p.hypergraph, res.alignment) ==
              doctest::Approx(1.0));
    }
}

TEST_CASE("align: self-alignment of a rigid instance returns the identity") {
    const Hypergraph h = hgtest::rigid_instance(21, 8, 16, 14, 12, 2, 4);
    const AlignResult res = align(h, h, {});
    for (Index v = 0; v < h.vertex_count; ++v)
        CHECK(res.alignment.vertex_map[static_cast<size_t>(v)] == v);
}

TEST_CASE("align: query strictly inside the data beats a random baseline") {
    Rng gen(1003);
    const Hypergraph hd = hgtest::rigid_instance(31, 12, 24, 18, 16, 2, 4);
    // drop ~20% of hyperedges, keep the 2-core as the query
    const Index keep = (hd.edge_count() * 8 + 9) / 10;
    Hypergraph sub = hd;
    sub.edges.resize(static_cast<size_t>(keep));
    const Hypergraph hq = two_core(sub).core;
    REQUIRE(hq.vertex_count > 0);
    REQUIRE(hq.vertex_count <= hd.vertex_count);

    const AlignResult res = align(hq, hd, {});
    const Real got = hyperedge_correctness(hq, hd, res.alignment);

    Real baseline = 0;
    const int trials = 10;
    for (int t = 0; t < trials; ++t) {
        std::vector<Index> vmap = gen.permutation(hd.vertex_count);
        vmap.resize(static_cast<size_t>(hq.vertex_count));
        Alignment rnd;
        rnd.vertex_map = vmap;
        rnd.edge_map.assign(static_cast<size_t>(hq.edge_count()), kUnmapped);
        baseline += hyperedge_correctness(hq, hd, rnd);
    }
    baseline /= trials;
    CHECK(got >= baseline);
}

TEST_CASE("align: sparse mode recovers a relabeled rigid instance") {
    const Hypergraph h = hgtest::rigid_instance(41, 10, 20, 16, 14, 2, 4);
    Rng rng(4100);
    const Perturbed p = permute(h, rng);
    SolverConfig cfg;
    cfg.mode = SolverConfig::Mode::sparse;
    const AlignResult res = align(h, p.hypergraph, cfg);
    res.alignment.validate(h.vertex_count, h.edge_count());
    const Index expect_k = static_cast<Index>(std::ceil(std::log2(
        static_cast<double>(std::max(h.vertex_count, h.edge_count())))));
    CHECK(res.resolved_k == expect_k);
    CHECK(hyperedge_correctness(h, p.hypergraph, res.alignment) >= 0.9);
}

TEST_CASE("align: sparse mode clamps oversized candidate counts") {
    const Hypergraph h = make_hypergraph(3, {{0, 1}, {1, 2}, {0, 2}});
    SolverConfig cfg;
    cfg.mode = SolverConfig::Mode::sparse;
    cfg.top_k = 50;
    const AlignResult res = align(h, h, cfg);
    CHECK(res.k_clamped);
    CHECK(res.resolved_k == 50);
}

TEST_CASE("align: forbidden vertex pairs never appear in the result") {
    const Hypergraph h = hgtest::rigid_instance(51, 8, 16, 14, 12, 2, 4);
    // identity is the unique perfect alignment; forbid one true pair
    SolverConfig cfg;
    cfg.forbid_vertex_pairs.push_back({0, 0});
    const AlignResult res = align(h, h, cfg);
    CHECK(res.alignment.vertex_map[0] != 0);
    for (Index v = 1; v < h.vertex_count; ++v)
        if (res.alignment.vertex_map[static_cast<size_t>(v)] == 0)
            CHECK(v != 0);
}

TEST_CASE("align: trace accounts for every matched pair exactly once") {
    const Hypergraph h = hgtest::rigid_instance(61, 8, 16, 14, 12, 2, 4);
    Rng rng(6100);
    const Perturbed p = permute(h, rng);
    const AlignResult res = align(h, p.hypergraph, {});
    REQUIRE(!res.trace.empty());
    Index vsum = 0, esum = 0;
    int prev_round = 0;
    for (const auto& t : res.trace) {
        CHECK(t.round == prev_round + 1);
        prev_round = t.round;
        CHECK(t.new_vertex_matches >= 0);
        CHECK(t.new_edge_matches >= 0);
        CHECK(t.wall_ms >= 0.0);
        vsum += t.new_vertex_matches;
        esum += t.new_edge_matches;
    }
    CHECK(vsum == res.alignment.mapped_vertices());
    CHECK(esum == res.alignment.mapped_edges());
}

TEST_CASE("align: deterministic output across repeated runs") {
    const Hypergraph h = hgtest::rigid_instance(71, 8, 16, 14, 12, 2, 4);
    Rng rng(7100);
    const Perturbed p = permute(h, rng);
    const AlignResult a = align(h, p.hypergraph, {});
    const AlignResult b = align(h, p.hypergraph, {});
    CHECK(a.alignment.vertex_map == b.alignment.vertex_map);
    CHECK(a.alignment.edge_map == b.alignment.edge_map);
}

TEST_CASE("align: result maps are injective with in-range targets") {
    Rng rng(1005);
    for (int rep = 0; rep < 5; ++rep) {
        const Hypergraph hq = two_core(hgtest::random_hypergraph(rng, 8, 7, 2, 3)).core;
        const Hypergraph hd = two_core(hgtest::random_hypergraph(rng, 12, 11, 2, 4)).core;
        if (hq.vertex_count == 0 || hd.vertex_count == 0) continue;
        if (hq.vertex_count > hd.vertex_count || hq.edge_count() > hd.edge_count())
            continue;
        const AlignResult res = align(hq, hd, {});
        res.alignment.validate(hd.vertex_count, hd.edge_count());
    }
}
