#pragma once

#include "hgalign/types.hpp"

#include <vector>

namespace hgalign {

struct MatchEdge {
    Index row = 0;
    Index col = 0;
    Real weight = 0;
};

struct Matching {
    std::vector<MatchEdge> pairs;  // sorted by row
    Real total_weight = 0;
};

// Locally dominant matching: repeatedly commits entries that are maximal in
// both their row and their column among unmatched entries. Ties resolve by
// smaller row, then smaller column. Zero-weight entries are never matched.
// The result is maximal on the support and totals at least half the
// maximum-weight assignment.
//
// Entries must have in-range indices; entries with weight <= 0 are ignored.
Matching dominant_match(const std::vector<MatchEdge>& entries, Index rows, Index cols);

Matching dominant_match(const SpMat& w);

// Total weight of dominant_match on `sim` restricted to the given row and
// column index sets (ascending, duplicate-free). Used by the propagation
// update rules with neighborhood index sets on either the vertex or hyperedge side.
Real local_match_score(const SpMat& sim, const std::vector<Index>& rows,
                       const std::vector<Index>& cols);

// Convenience overload: neighborhoods derived from incidence matrices.
// For a vertex pair (i, j), the submatrix of `sim` (hyperedge similarities)
// is indexed by the hyperedges incident to i in bq and to j in bd. For a
// hyperedge pair, `sim` holds vertex similarities and the index sets are the
// members of hyperedge i of bq and j of bd.
enum class PairKind { vertex, hyperedge };
Real local_match_score(const SpMat& sim, const SpMat& bq, const SpMat& bd,
                       Index i, Index j, PairKind kind);

}  // namespace hgalign
