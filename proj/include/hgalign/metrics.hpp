#pragma once

#include "hgalign/hypergraph.hpp"
#include "hgalign/types.hpp"

#include <vector>

namespace hgalign {

constexpr Index kUnmapped = -1;

// Partial injective maps from query vertices/hyperedges to data ids.
// vertex_map.size() == n_Q, edge_map.size() == m_Q; -1 marks unmapped.
struct Alignment {
    std::vector<Index> vertex_map;
    std::vector<Index> edge_map;

    // throws unless both maps are injective with targets in range
    void validate(Index data_vertices, Index data_edges) const;

    Index mapped_vertices() const;
    Index mapped_edges() const;
};

// 0/1 matrix with row and column sums <= 1 (matrix form of a partial
// injection).
SpMat alignment_matrix(const std::vector<Index>& map, Index rows, Index cols);
bool is_alignment_matrix(const SpMat& m);

// Fraction of `subset` (query vertex ids) where sigma agrees with truth.
// Unmapped sigma entries count as incorrect. subset must be nonempty and
// inside truth's mapped domain.
Real accuracy(const Alignment& sigma, const Alignment& truth,
              const std::vector<Index>& subset);

// Fraction of query hyperedges whose vertex image set equals some data
// hyperedge (set equality; duplicate data edges count once). Edges with any
// unmapped member count as incorrect. Errors when m_Q == 0.
Real hyperedge_correctness(const Hypergraph& query, const Hypergraph& data,
                           const Alignment& sigma);

// Raw count: sum over query edges e with sigma.edge_map[e] defined of
// |{sigma_V(v) : v in e, mapped} ∩ data edge sigma_E(e)|. Unnormalized.
Real overlap_objective(const Hypergraph& query, const Hypergraph& data,
                       const Alignment& sigma);

// (1/m_Q) * sum over query edges e of overlap(e, sigma_E(e)) normalized by
// sqrt(|e| * |sigma_E(e)|); edges with unmapped sigma_E contribute 0.
Real incidence_objective(const Hypergraph& query, const Hypergraph& data,
                         const Alignment& sigma);

// (1/m_Q) * sum over query edges e of max over data edges f of
// overlap(e, f)/sqrt(|e||f|), with the image of e taken through vertex_map.
// Requires m_Q > 0 and m_D > 0.
Real nonexclusive_overlap(const Hypergraph& query, const Hypergraph& data,
                          const std::vector<Index>& vertex_map);

// <Wv, X>_F + <We, Y>_F + beta * <BnQ * Y, X * BnD>_F
// X: n_Q x n_D, Y: m_Q x m_D, BnQ: n_Q x m_Q, BnD: n_D x m_D.
Real qp_objective(const SpMat& x, const SpMat& y, const SpMat& wv,
                  const SpMat& we, const SpMat& bnq, const SpMat& bnd,
                  Real beta);

}  // namespace hgalign
