#pragma once

#include "hgalign/types.hpp"

namespace hgalign {

struct CoolingConfig {
    Real temperature = 2.0;   // decay threshold divisor; must stay > 1
    int n_iter = 20;
    Real epsilon_zero = 1e-6; // entries below this after decay are deleted
    Real early_exit = 1e-4;   // stop when no entry moved by this much

    void validate() const;
};

// Vertex (x) and hyperedge (y) similarity matrices plus cached per-row and
// per-column maxima (the b values of the update rules). Sparsity
// patterns only ever shrink.
struct SimilarityState {
    SpMat x;  // n_Q x n_D
    SpMat y;  // m_Q x m_D
    Vec x_row_best, x_col_best, y_row_best, y_col_best;

    static SimilarityState make(SpMat x, SpMat y);

    void refresh_x_maxima();
    void refresh_y_maxima();

    // true when every cached maximum equals the recomputed one
    bool maxima_consistent(Real tol = 0) const;
};

// Update rule 1 for one pair: the locally dominant match total over the
// opposite-type similarities restricted to the pair's neighborhoods, divided
// by max of the summed best-similarities over each neighborhood; 0 when the
// denominator is 0. `kind` selects vertex pairs (neighborhoods are incident
// hyperedges) or hyperedge pairs (neighborhoods are member vertices).
enum class UpdateKind { vertex_pair, hyperedge_pair };
Real rule1_update(const SimilarityState& state, const SpMat& bnq, const SpMat& bnd,
                  Index i, Index j, UpdateKind kind);

// Decay rule 2: keep s when max(t1,t2) <= s; shrink by
// sqrt(min(t1,t2)/max(t1,t2)) when min(t1,t2) <= s; else cut to 0.
// Branches are evaluated in that order.
Real rule2_decay(Real s, Real t1, Real t2);

struct PropagateStats {
    int iterations = 0;
    Real last_max_change = 0;
};

// One pass per iteration: rule-1 update of every stored y entry reading the
// iteration-start x, then of every stored x entry reading the fresh y, then
// rule-2 decay of both with thresholds best/temperature recomputed after the
// sweeps; entries below epsilon_zero are dropped. Exits early when the
// largest absolute change falls under cfg.early_exit. Sequential and
// deterministic: same inputs give bitwise-identical states.
SimilarityState propagate(SimilarityState state, const SpMat& bnq, const SpMat& bnd,
                          const CoolingConfig& cfg, PropagateStats* stats = nullptr);

}  // namespace hgalign
