#include "hgalign/propagate.hpp"

#include "hgalign/matching.hpp"

#include <algorithm>
#include <cmath>

namespace hgalign {

void CoolingConfig::validate() const {
    if (!(temperature > 1))
        throw DomainError("cooling: temperature must be > 1");
    if (n_iter < 1) throw DomainError("cooling: n_iter must be >= 1");
    if (epsilon_zero < 0) throw DomainError("cooling: epsilon_zero must be >= 0");
    if (early_exit < 0) throw DomainError("cooling: early_exit must be >= 0");
}

SimilarityState SimilarityState::make(SpMat x, SpMat y) {
    SimilarityState s;
    prune_below(x, Real(0));  // no stored zeros
    prune_below(y, Real(0));
    x.makeCompressed();
    y.makeCompressed();
    s.x = std::move(x);
    s.y = std::move(y);
    s.refresh_x_maxima();
    s.refresh_y_maxima();
    return s;
}

void SimilarityState::refresh_x_maxima() {
    x_row_best = row_max(x);
    x_col_best = col_max(x);
}

void SimilarityState::refresh_y_maxima() {
    y_row_best = row_max(y);
    y_col_best = col_max(y);
}

bool SimilarityState::maxima_consistent(Real tol) const {
    auto close = [tol](const Vec& a, const Vec& b) {
        if (a.size() != b.size()) return false;
        if (a.size() == 0) return true;
        return (a - b).cwiseAbs().maxCoeff() <= tol;
    };
    return close(x_row_best, row_max(x)) && close(x_col_best, col_max(x)) &&
           close(y_row_best, row_max(y)) && close(y_col_best, col_max(y));
}

Real rule2_decay(Real s, Real t1, Real t2) {
    const Real hi = std::max(t1, t2), lo = std::min(t1, t2);
    if (hi <= s) return s;
    if (lo <= s) return s * std::sqrt(lo / hi);
    return 0;
}

namespace {

struct Neighborhoods {
    std::vector<std::vector<Index>> q_rows;  // per query entity
    std::vector<std::vector<Index>> d_rows;  // per data entity
};

// vertex side: incident hyperedges per vertex (rows of B)
Neighborhoods vertex_neighborhoods(const SpMat& bnq, const SpMat& bnd) {
    Neighborhoods n;
    n.q_rows.resize(bnq.rows());
    n.d_rows.resize(bnd.rows());
    for (Index r = 0; r < bnq.outerSize(); ++r)
        for (SpMat::InnerIterator it(bnq, r); it; ++it) n.q_rows[r].push_back(it.col());
    for (Index r = 0; r < bnd.outerSize(); ++r)
        for (SpMat::InnerIterator it(bnd, r); it; ++it) n.d_rows[r].push_back(it.col());
    return n;
}

// hyperedge side: member vertices per hyperedge (columns of B)
Neighborhoods edge_neighborhoods(const SpMat& bnq, const SpMat& bnd) {
    Neighborhoods n;
    n.q_rows.resize(bnq.cols());
    n.d_rows.resize(bnd.cols());
    for (Index r = 0; r < bnq.outerSize(); ++r)
        for (SpMat::InnerIterator it(bnq, r); it; ++it) n.q_rows[it.col()].push_back(r);
    for (Index r = 0; r < bnd.outerSize(); ++r)
        for (SpMat::InnerIterator it(bnd, r); it; ++it) n.d_rows[it.col()].push_back(r);
    return n;
}

Real pair_update(const SpMat& opposite, const Vec& row_best, const Vec& col_best,
                 const std::vector<Index>& rows, const std::vector<Index>& cols,
                 std::vector<MatchEdge>& scratch) {
    Real denom_q = 0, denom_d = 0;
    for (Index r : rows) denom_q += row_best[r];
    for (Index c : cols) denom_d += col_best[c];
    const Real denom = std::max(denom_q, denom_d);
    if (denom <= 0) return 0;
    scratch.clear();
    for (Index li = 0; li < static_cast<Index>(rows.size()); ++li)
        for (Index lj = 0; lj < static_cast<Index>(cols.size()); ++lj) {
            Real v = opposite.coeff(rows[li], cols[lj]);
            if (v > 0) scratch.push_back({li, lj, v});
        }
    const Real num = dominant_match(scratch, static_cast<Index>(rows.size()),
                                    static_cast<Index>(cols.size()))
                         .total_weight;
    return num / denom;
}

}  // namespace

Real rule1_update(const SimilarityState& state, const SpMat& bnq, const SpMat& bnd,
                  Index i, Index j, UpdateKind kind) {
    std::vector<MatchEdge> scratch;
    if (kind == UpdateKind::vertex_pair) {
        Neighborhoods n = vertex_neighborhoods(bnq, bnd);
        if (i < 0 || i >= static_cast<Index>(n.q_rows.size()) || j < 0 ||
            j >= static_cast<Index>(n.d_rows.size()))
            throw DimensionError("rule1_update: vertex id out of range");
        return pair_update(state.y, state.y_row_best, state.y_col_best, n.q_rows[i],
                           n.d_rows[j], scratch);
    }
    Neighborhoods n = edge_neighborhoods(bnq, bnd);
    if (i < 0 || i >= static_cast<Index>(n.q_rows.size()) || j < 0 ||
        j >= static_cast<Index>(n.d_rows.size()))
        throw DimensionError("rule1_update: hyperedge id out of range");
    return pair_update(state.x, state.x_row_best, state.x_col_best, n.q_rows[i],
                       n.d_rows[j], scratch);
}

SimilarityState propagate(SimilarityState state, const SpMat& bnq, const SpMat& bnd,
                          const CoolingConfig& cfg, PropagateStats* stats) {
    cfg.validate();
    if (state.x.rows() != bnq.rows() || state.x.cols() != bnd.rows() ||
        state.y.rows() != bnq.cols() || state.y.cols() != bnd.cols())
        throw DimensionError("propagate: state/incidence shape mismatch");

    const Neighborhoods vn = vertex_neighborhoods(bnq, bnd);
    const Neighborhoods en = edge_neighborhoods(bnq, bnd);
    std::vector<MatchEdge> scratch;
    std::vector<Real> x0, y0;

    int it_count = 0;
    Real max_change = 0;
    for (int iter = 0; iter < cfg.n_iter; ++iter) {
        ++it_count;
        x0.assign(state.x.valuePtr(), state.x.valuePtr() + state.x.nonZeros());
        y0.assign(state.y.valuePtr(), state.y.valuePtr() + state.y.nonZeros());

        // hyperedge sweep reads the iteration-start x and its maxima; y is
        // write-only here, so in-place updates are order-free
        for (Index r = 0; r < state.y.outerSize(); ++r)
            for (SpMat::InnerIterator it(state.y, r); it; ++it)
                it.valueRef() = pair_update(state.x, state.x_row_best,
                                            state.x_col_best, en.q_rows[it.row()],
                                            en.d_rows[it.col()], scratch);
        state.refresh_y_maxima();

        // vertex sweep reads the freshly updated y
        for (Index r = 0; r < state.x.outerSize(); ++r)
            for (SpMat::InnerIterator it(state.x, r); it; ++it)
                it.valueRef() = pair_update(state.y, state.y_row_best,
                                            state.y_col_best, vn.q_rows[it.row()],
                                            vn.d_rows[it.col()], scratch);
        state.refresh_x_maxima();

        // rule-2 decay with thresholds best/temperature from the post-sweep
        // maxima; per-entry changes are measured against the final value
        // (pruned entries count as going to zero)
        max_change = 0;
        auto decay_matrix = [&](SpMat& m, const Vec& rb, const Vec& cb,
                                const std::vector<Real>& before) {
            Index k = 0;
            for (Index r = 0; r < m.outerSize(); ++r)
                for (SpMat::InnerIterator it(m, r); it; ++it, ++k) {
                    Real v = rule2_decay(it.valueRef(), rb[it.row()] / cfg.temperature,
                                         cb[it.col()] / cfg.temperature);
                    it.valueRef() = v;
                    const Real final_v = (v == 0 || v < cfg.epsilon_zero) ? 0 : v;
                    max_change = std::max(max_change, std::abs(final_v - before[k]));
                }
        };
        decay_matrix(state.x, state.x_row_best, state.x_col_best, x0);
        decay_matrix(state.y, state.y_row_best, state.y_col_best, y0);
        prune_below(state.x, cfg.epsilon_zero);
        prune_below(state.y, cfg.epsilon_zero);
        state.refresh_x_maxima();
        state.refresh_y_maxima();

        if (max_change < cfg.early_exit) break;
    }
    if (stats) {
        stats->iterations = it_count;
        stats->last_max_change = max_change;
    }
    return state;
}

}  // namespace hgalign
