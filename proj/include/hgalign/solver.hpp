#pragma once

#include "hgalign/hypergraph.hpp"
#include "hgalign/initsim.hpp"
#include "hgalign/metrics.hpp"
#include "hgalign/propagate.hpp"
#include "hgalign/types.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hgalign {

struct SolverConfig {
    enum class Mode { dense, sparse };

    Mode mode = Mode::dense;
    Real beta = 1.0;
    // sparse candidate count per row; defaults to ceil(log2(largest side))
    std::optional<Index> top_k;
    CoolingConfig cooling;
    // tol / max_iter; beta is taken from above. The solver budgets far more
    // iterations than the standalone default: the leading spectral gap
    // shrinks with instance size, and the power iteration is still cheap
    // next to propagation.
    CentralityOptions centrality{1.0, 1e-8, 20000};
    InitOptions init;
    int max_outer_rounds = 10;
    std::uint64_t seed = 0;  // echoed into reports; the solver itself is
                             // deterministic and draws nothing
    // pairs (query id, data id) never admitted to candidate support
    std::vector<std::pair<Index, Index>> forbid_vertex_pairs;
    std::vector<std::pair<Index, Index>> forbid_edge_pairs;

    void validate() const;
};

struct RoundTrace {
    int round = 0;
    Index new_vertex_matches = 0;
    Index new_edge_matches = 0;
    Real qp_objective = 0;
    double wall_ms = 0;
    bool objective_decreased = false;  // logged, never enforced
};

struct AlignResult {
    Alignment alignment;
    std::vector<RoundTrace> trace;
    Index resolved_k = 0;   // 0 in dense mode
    bool k_clamped = false;
};

// Wv = BnQ * Ystar * BnD^T (vertex importance from matched hyperedges),
// We = BnQ^T * Xstar * BnD (hyperedge importance from matched vertices).
std::pair<SpMat, SpMat> importance_from_partial(const SpMat& bnq, const SpMat& bnd,
                                                const SpMat& xstar,
                                                const SpMat& ystar);

// true iff some query vertex (row of x) or query hyperedge (row of y) has no
// stored entry in the 0/1 solution matrices
bool has_unmatched(const SpMat& x, const SpMat& y);

// Outer alignment loop: rounds of freeze-matched -> importance -> restrict to
// the unmatched subproblem -> centrality init -> propagate -> round via
// locally dominant matching -> merge. A zero-progress round finalizes
// greedily from the pre-rounding similarities and stops. Requires
// n_Q <= n_D and m_Q <= m_D (swap the inputs otherwise).
AlignResult align(const Hypergraph& query, const Hypergraph& data,
                  const SolverConfig& cfg = {});

}  // namespace hgalign
