#pragma once

#include "hgalign/hypergraph.hpp"
#include "hgalign/types.hpp"

#include <vector>

namespace hgalign {
namespace oracle {

// Exhaustive-search reference implementations for tests and the --oracle CLI
// flag. Objective evaluation here is written directly from the definitions
// and does not share code with the metrics module. Hard size caps keep the
// factorial searches bounded; exceeding them throws DomainError.

enum class VertexObjective { edge_correctness, nonexclusive_overlap };

struct VertexAlignResult {
    Real value = 0;
    std::vector<Index> vertex_map;
};

// Best total injection of query vertices into data vertices under the chosen
// objective. Requires n_Q <= n_D <= 8.
VertexAlignResult brute_force_vertex_align(const Hypergraph& query,
                                           const Hypergraph& data,
                                           VertexObjective objective);

struct EdgeAlignResult {
    Real value = 0;  // best incidence objective given the vertex map
    std::vector<Index> edge_map;
};

// Best (possibly partial) injective hyperedge map maximizing the incidence
// objective for a fixed vertex map. Requires m_Q <= 6 and m_D <= 6.
EdgeAlignResult brute_force_edge_align(const Hypergraph& query, const Hypergraph& data,
                                       const std::vector<Index>& vertex_map);

struct AssignmentResult {
    Real value = 0;
    std::vector<Index> col_of_row;  // -1 for unassigned rows
};

// Exact maximum-weight assignment by enumeration over injections of the
// shorter side. Requires min(rows, cols) <= 7 and max(rows, cols) <= 12.
AssignmentResult brute_force_assignment(const Mat& w);

// direct-definition scorers used by the searches; exposed for
// metric-agreement tests
Real eval_edge_correctness(const Hypergraph& query, const Hypergraph& data,
                           const std::vector<Index>& vertex_map);
Real eval_nonexclusive_overlap(const Hypergraph& query, const Hypergraph& data,
                               const std::vector<Index>& vertex_map);
Real eval_incidence_objective(const Hypergraph& query, const Hypergraph& data,
                              const std::vector<Index>& vertex_map,
                              const std::vector<Index>& edge_map);

}  // namespace oracle
}  // namespace hgalign
