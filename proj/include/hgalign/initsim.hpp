#pragma once

#include "hgalign/types.hpp"

#include <utility>

namespace hgalign {

// Leading singular triple of the coupled block operator
//   [[Wv/beta, BnQ], [BnD^T, We^T/beta]]
// whose row space stacks (query vertices, data hyperedges) and column space
// stacks (data vertices, query hyperedges). query_vertex/data_edge form the
// left singular vector, data_vertex/query_edge the right one; both are unit
// and entrywise nonnegative, so sigma_max * scores are importance attributes.
struct CentralityScores {
    Vec query_vertex;  // l_Q
    Vec query_edge;    // r_Q
    Vec data_vertex;   // l_D
    Vec data_edge;     // r_D
    Real sigma_max = 0;
};

struct CentralityOptions {
    Real beta = 1.0;
    Real tol = 1e-8;    // Euclidean distance between successive right vectors
    int max_iter = 1000;
};

// Matrix-free power iteration, alternating the block operator with its
// transpose from a uniform positive start. Deterministic; sign-normalized so
// the largest-magnitude entry is positive. Throws ConvergenceError (carrying
// the last delta) when max_iter is exhausted.
//
// wv must be n_Q x n_D and we m_Q x m_D; pass empty-pattern matrices of those
// shapes when no importance information exists yet.
CentralityScores block_centrality(const SpMat& bnq, const SpMat& bnd,
                                  const SpMat& wv, const SpMat& we,
                                  const CentralityOptions& opt = {});

// min(a,b)/max(a,b) for nonnegative attributes; compare(0,0) == 1 by
// convention (identical attributes). Scale-invariant.
Real compare(Real a, Real b);

struct SimilarityInit {
    SpMat x;  // n_Q x n_D vertex similarities
    SpMat y;  // m_Q x m_D hyperedge similarities
    bool k_clamped = false;
};

struct InitOptions {
    // Rescale each score vector to unit norm before comparison. The power
    // iteration splits mass between the query and data halves by start-vector
    // overlap, which is meaningless for cross-hypergraph comparison; with the
    // rescale, identical hypergraphs get similarity 1 on true pairs. Raw
    // as-printed attributes remain available for diagnostics.
    bool rescale_per_hypergraph = true;
};

// All pairs, values compare(attribute_Q, attribute_D); exact zeros skipped.
SimilarityInit init_similarity_dense(const CentralityScores& scores,
                                     const InitOptions& opt = {});

// Per query vertex (hyperedge), keeps the k data candidates with nearest
// attribute value (|a - b|, ties by smaller data id), via one sort plus
// binary search and outward scan per query. k > data count clamps and sets
// k_clamped. Pairs where both attributes are zero are excluded.
SimilarityInit init_similarity_sparse(const CentralityScores& scores, Index k,
                                      const InitOptions& opt = {});

// Row sums and column sums of the given incidence-like matrix: weighted
// vertex degrees and hyperedge column sums for a normalized incidence, plain
// degrees and sizes for a 0/1 incidence.
std::pair<Vec, Vec> degree_attributes(const SpMat& b);

}  // namespace hgalign
