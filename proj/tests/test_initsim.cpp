#include "hgalign/initsim.hpp"

#include "hgalign/hypergraph.hpp"
#include "hgalign/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <vector>

using namespace hgalign;
using hgtest::dense_block;
using hgtest::make_hypergraph;
using hgtest::sparse_from_dense;

namespace {

// stacked singular vectors for residual checks
Vec stack_left(const CentralityScores& s) {
    Vec u(s.query_vertex.size() + s.data_edge.size());
    u << s.query_vertex, s.data_edge;
    return u;
}

Vec stack_right(const CentralityScores& s) {
    Vec v(s.data_vertex.size() + s.query_edge.size());
    v << s.data_vertex, s.query_edge;
    return v;
}

CentralityScores centrality_of(const Hypergraph& hq, const Hypergraph& hd,
                               const CentralityOptions& opt = {}) {
    const SpMat bnq = normalized_incidence(hq), bnd = normalized_incidence(hd);
    const SpMat wv(hq.vertex_count, hd.vertex_count);
    const SpMat we(hq.edge_count(), hd.edge_count());
    return block_centrality(bnq, bnd, wv, we, opt);
}

}  // namespace

TEST_CASE("block centrality: single shared pair edge gives uniform vertex scores") {
    const Hypergraph h = make_hypergraph(2, {{0, 1}});
    const CentralityScores s = centrality_of(h, h);
    CHECK(s.sigma_max == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s.query_vertex(0) == doctest::Approx(s.query_vertex(1)).epsilon(1e-10));
    CHECK(s.data_vertex(0) == doctest::Approx(s.data_vertex(1)).epsilon(1e-10));
    // cross-check the 3x3 block against a dense singular decomposition
    const Mat block = dense_block(normalized_incidence(h), normalized_incidence(h),
                                  SpMat(2, 2), SpMat(1, 1), 1.0);
    Eigen::JacobiSVD<Mat> svd(block);
    CHECK(s.sigma_max == doctest::Approx(svd.singularValues()(0)).epsilon(1e-8));
}

TEST_CASE("block centrality: singular triple identity holds") {
    Rng rng(701);
    for (int rep = 0; rep < 5; ++rep) {
        const Hypergraph hq = hgtest::random_hypergraph(rng, 6, 5, 2, 4);
        const Hypergraph hd = hgtest::random_hypergraph(rng, 8, 6, 2, 4);
        const CentralityScores s = centrality_of(hq, hd);
        const Mat block = dense_block(normalized_incidence(hq), normalized_incidence(hd),
                                      SpMat(6, 8), SpMat(5, 6), 1.0);
        const Vec u = stack_left(s), v = stack_right(s);
        CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK((block * v - s.sigma_max * u).norm() <= 1e-6 * s.sigma_max);
    }
}

TEST_CASE("block centrality: matches dense singular values with importances present") {
    Rng rng(702);
    for (int rep = 0; rep < 5; ++rep) {
        const Hypergraph hq = hgtest::random_hypergraph(rng, 5, 4, 2, 3);
        const Hypergraph hd = hgtest::random_hypergraph(rng, 7, 5, 2, 4);
        Mat wv = Mat::Zero(5, 7), we = Mat::Zero(4, 5);
        for (Index i = 0; i < 5; ++i)
            for (Index j = 0; j < 7; ++j)
                if (rng.next_real() < 0.3) wv(i, j) = rng.next_real();
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 5; ++j)
                if (rng.next_real() < 0.3) we(i, j) = rng.next_real();
        const Real beta = 0.5 + rng.next_real();

        CentralityOptions opt;
        opt.beta = beta;
        const SpMat bnq = normalized_incidence(hq), bnd = normalized_incidence(hd);
        const CentralityScores s = block_centrality(bnq, bnd, sparse_from_dense(wv),
                                                    sparse_from_dense(we), opt);
        const Mat block =
            dense_block(bnq, bnd, sparse_from_dense(wv), sparse_from_dense(we), beta);
        Eigen::JacobiSVD<Mat> svd(block);
        CHECK(s.sigma_max ==
              doctest::Approx(svd.singularValues()(0)).epsilon(1e-6));
        CHECK((block * stack_right(s) - s.sigma_max * stack_left(s)).norm() <=
              1e-6 * s.sigma_max);
    }
}

TEST_CASE("block centrality: iteration cap raises a convergence error with residual") {
    const Hypergraph h = make_hypergraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CentralityOptions opt;
    opt.tol = 0;  // unsatisfiable
    opt.max_iter = 3;
    try {
        centrality_of(h, h, opt);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.residual >= 0.0);
    }
}

TEST_CASE("block centrality: scores are entrywise nonnegative") {
    Rng rng(703);
    const Hypergraph hq = hgtest::random_hypergraph(rng, 6, 5, 2, 3);
    const Hypergraph hd = hgtest::random_hypergraph(rng, 6, 5, 2, 3);
    const CentralityScores s = centrality_of(hq, hd);
    CHECK(s.query_vertex.minCoeff() >= 0.0);
    CHECK(s.data_vertex.minCoeff() >= 0.0);
    CHECK(s.query_edge.minCoeff() >= 0.0);
    CHECK(s.data_edge.minCoeff() >= 0.0);
    CHECK(s.sigma_max > 0.0);
}

TEST_CASE("compare: ratio of min to max with the zero convention") {
    CHECK(compare(3.7, 3.7) == 1.0);
    CHECK(compare(2, 4) == doctest::Approx(0.5));
    CHECK(compare(3, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(compare(1, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(compare(0, 0) == 1.0);
    CHECK(compare(0, 2) == 0.0);
    CHECK_THROWS_AS(compare(-1, 2), DomainError);
}

TEST_CASE("compare: scale invariant") {
    Rng rng(704);
    for (int rep = 0; rep < 100; ++rep) {
        const Real a = rng.next_real(), b = rng.next_real(), c = 0.01 + rng.next_real();
        CHECK(compare(c * a, c * b) == doctest::Approx(compare(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("dense init: a hypergraph against itself scores 1 on true pairs") {
    Rng rng(705);
    for (int rep = 0; rep < 3; ++rep) {
        Hypergraph h = two_core(hgtest::random_hypergraph(rng, 9, 8, 2, 4)).core;
        if (h.vertex_count == 0) h = make_hypergraph(3, {{0, 1}, {1, 2}, {0, 2}});
        const CentralityScores s = centrality_of(h, h);
        const SimilarityInit init = init_similarity_dense(s);
        for (Index i = 0; i < h.vertex_count; ++i)
            CHECK(Mat(init.x)(i, i) == doctest::Approx(1.0).epsilon(1e-5));
        for (Index e = 0; e < h.edge_count(); ++e)
            CHECK(Mat(init.y)(e, e) == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("dense init: all-equal scores give an all-ones similarity") {
    CentralityScores s;
    s.query_vertex = Vec::Constant(3, 0.4);
    s.data_vertex = Vec::Constant(4, 0.4);
    s.query_edge = Vec::Constant(2, 0.3);
    s.data_edge = Vec::Constant(2, 0.3);
    s.sigma_max = 2.0;

    // raw attributes: equal values compare to 1 regardless of vector lengths
    InitOptions raw;
    raw.rescale_per_hypergraph = false;
    const SimilarityInit rinit = init_similarity_dense(s, raw);
    CHECK(nonzero_count(rinit.x) == 12);
    CHECK(Mat(rinit.x).minCoeff() == 1.0);
    CHECK(Mat(rinit.y).minCoeff() == 1.0);

    // under per-side rescaling the same holds once the sides have equal sizes
    s.data_vertex = Vec::Constant(3, 0.9);
    const SimilarityInit init = init_similarity_dense(s);
    CHECK(nonzero_count(init.x) == 9);
    CHECK(Mat(init.x).minCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Mat(init.y).minCoeff() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense init: entries stay within the unit interval") {
    Rng rng(706);
    const Hypergraph hq = hgtest::random_hypergraph(rng, 6, 5, 2, 3);
    const Hypergraph hd = hgtest::random_hypergraph(rng, 8, 7, 2, 4);
    const SimilarityInit init = init_similarity_dense(centrality_of(hq, hd));
    for (Index r = 0; r < init.x.rows(); ++r)
        for (SpMat::InnerIterator it(init.x, r); it; ++it) {
            CHECK(it.value() >= 0.0);
            CHECK(it.value() <= 1.0);
        }
}

TEST_CASE("sparse init: nearest scalar attributes win") {
    // raw attribute mode: query attributes (1, 5), data attributes (1, 2, 9)
    CentralityScores s;
    s.query_vertex = Vec(2);
    s.query_vertex << 1, 5;
    s.data_vertex = Vec(3);
    s.data_vertex << 1, 2, 9;
    s.query_edge = Vec::Constant(1, 1.0);
    s.data_edge = Vec::Constant(1, 1.0);
    s.sigma_max = 1.0;
    InitOptions raw;
    raw.rescale_per_hypergraph = false;

    const SimilarityInit init = init_similarity_sparse(s, 1, raw);
    const Mat x = Mat(init.x);
    CHECK(nonzero_count(init.x) == 2);
    CHECK(x(0, 0) == doctest::Approx(1.0));          // attribute 1 vs 1
    CHECK(x(1, 1) == doctest::Approx(2.0 / 5.0));    // attribute 5 vs 2
    CHECK(init.k_clamped == false);
}

TEST_CASE("sparse init: k covering all candidates matches the dense support") {
    Rng rng(707);
    const Hypergraph hq = hgtest::random_hypergraph(rng, 5, 4, 2, 3);
    const Hypergraph hd = hgtest::random_hypergraph(rng, 7, 6, 2, 4);
    const CentralityScores s = centrality_of(hq, hd);
    const SimilarityInit dense = init_similarity_dense(s);
    const SimilarityInit sparse = init_similarity_sparse(s, 7);
    CHECK(Mat(dense.x).isApprox(Mat(sparse.x), 1e-14));
    CHECK(Mat(dense.y).isApprox(Mat(sparse.y), 1e-14));
}

TEST_CASE("sparse init: support is contained in the dense support with equal values") {
    Rng rng(708);
    const Hypergraph hq = hgtest::random_hypergraph(rng, 6, 5, 2, 3);
    const Hypergraph hd = hgtest::random_hypergraph(rng, 9, 7, 2, 4);
    const CentralityScores s = centrality_of(hq, hd);
    const Mat dense = Mat(init_similarity_dense(s).x);
    const SimilarityInit sparse = init_similarity_sparse(s, 3);
    for (Index r = 0; r < sparse.x.rows(); ++r) {
        Index per_row = 0;
        for (SpMat::InnerIterator it(sparse.x, r); it; ++it) {
            CHECK(it.value() == doctest::Approx(dense(it.row(), it.col())).epsilon(1e-14));
            ++per_row;
        }
        CHECK(per_row == 3);
    }
}

TEST_CASE("sparse init: oversized k clamps and flags") {
    CentralityScores s;
    s.query_vertex = Vec::Constant(2, 0.7);
    s.data_vertex = Vec::Constant(2, 0.7);
    s.query_edge = Vec::Constant(1, 0.7);
    s.data_edge = Vec::Constant(1, 0.7);
    s.sigma_max = 1.0;
    const SimilarityInit init = init_similarity_sparse(s, 10);
    CHECK(init.k_clamped == true);
    CHECK(nonzero_count(init.x) == 4);
}

TEST_CASE("a dominant importance entry ranks its pair first") {
    Rng rng(709);
    const Hypergraph hq = hgtest::random_hypergraph(rng, 5, 4, 2, 3);
    const Hypergraph hd = hgtest::random_hypergraph(rng, 6, 5, 2, 4);
    Mat wv = Mat::Zero(5, 6);
    wv(2, 3) = 100.0;
    const SpMat bnq = normalized_incidence(hq), bnd = normalized_incidence(hd);
    const CentralityScores s =
        block_centrality(bnq, bnd, sparse_from_dense(wv), SpMat(4, 5), {});
    const Mat x = Mat(init_similarity_dense(s).x);
    Index bi = -1, bj = -1;
    x.maxCoeff(&bi, &bj);
    CHECK(bi == 2);
    CHECK(bj == 3);
}

TEST_CASE("degree attributes: row and column sums of the supplied matrix") {
    const Hypergraph h =
        make_hypergraph(6, {{0, 1, 2, 3}, {0, 1, 4, 5}, {1, 2}});
    const auto [v, e] = degree_attributes(normalized_incidence(h));
    CHECK(v(0) == doctest::Approx(1.0));  // two size-4 edges: 2 * 1/2
    CHECK(e(0) == doctest::Approx(2.0));  // size-4 column sums to sqrt(4)
    CHECK(e(2) == doctest::Approx(std::sqrt(2.0)));

    const Hypergraph iso = make_hypergraph(3, {{0, 1}});
    const auto [vi, ei] = degree_attributes(normalized_incidence(iso));
    CHECK(vi(2) == 0.0);  // vertex 2 sits in no hyperedge
    (void)ei;
}
