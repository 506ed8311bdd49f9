#include "hgalign/solver.hpp"

#include "hgalign/matching.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace hgalign {

void SolverConfig::validate() const {
    if (beta <= 0) throw DomainError("solver: beta must be positive");
    if (top_k && *top_k < 1) throw DomainError("solver: k must be >= 1");
    if (max_outer_rounds < 1) throw DomainError("solver: max_outer_rounds must be >= 1");
    cooling.validate();
    if (centrality.tol <= 0 || centrality.max_iter < 1)
        throw DomainError("solver: centrality tolerance/iterations invalid");
}

std::pair<SpMat, SpMat> importance_from_partial(const SpMat& bnq, const SpMat& bnd,
                                                const SpMat& xstar,
                                                const SpMat& ystar) {
    if (xstar.rows() != bnq.rows() || xstar.cols() != bnd.rows() ||
        ystar.rows() != bnq.cols() || ystar.cols() != bnd.cols())
        throw DimensionError("importance_from_partial: non-conformal inputs");
    SpMat wv = bnq * SpMat(ystar * bnd.transpose());
    SpMat we = SpMat(bnq.transpose()) * SpMat(xstar * bnd);
    return {std::move(wv), std::move(we)};
}

bool has_unmatched(const SpMat& x, const SpMat& y) {
    auto some_empty_row = [](const SpMat& m) {
        Vec s = row_sums(m);
        for (Index i = 0; i < s.size(); ++i)
            if (s[i] == 0) return true;
        return false;
    };
    return some_empty_row(x) || some_empty_row(y);
}

namespace {

struct PairHash {
    size_t operator()(const std::pair<Index, Index>& p) const {
        return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^
                                      static_cast<long long>(p.second));
    }
};
using PairSet = std::unordered_set<std::pair<Index, Index>, PairHash>;

void mask_forbidden(SpMat& m, const PairSet& forbidden) {
    if (forbidden.empty()) return;
    m.prune([&](Index r, Index c, Real) { return !forbidden.count({r, c}); });
}

std::vector<Index> complement_targets(const std::vector<Index>& map, Index range) {
    std::vector<char> used(range, 0);
    for (Index t : map)
        if (t != kUnmapped) used[t] = 1;
    std::vector<Index> out;
    for (Index t = 0; t < range; ++t)
        if (!used[t]) out.push_back(t);
    return out;
}

std::vector<Index> unmapped_sources(const std::vector<Index>& map) {
    std::vector<Index> out;
    for (Index i = 0; i < static_cast<Index>(map.size()); ++i)
        if (map[i] == kUnmapped) out.push_back(i);
    return out;
}

// forbidden pairs in global ids -> pairs in subproblem coordinates
PairSet restrict_pairs(const std::vector<std::pair<Index, Index>>& pairs,
                       const std::vector<Index>& rows, const std::vector<Index>& cols,
                       Index full_rows, Index full_cols) {
    PairSet out;
    if (pairs.empty()) return out;
    std::vector<Index> row_of(full_rows, kUnmapped), col_of(full_cols, kUnmapped);
    for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) row_of[rows[i]] = i;
    for (Index j = 0; j < static_cast<Index>(cols.size()); ++j) col_of[cols[j]] = j;
    for (auto [r, c] : pairs) {
        if (r < 0 || r >= full_rows || c < 0 || c >= full_cols)
            throw DimensionError("solver: forbidden pair out of range");
        if (row_of[r] != kUnmapped && col_of[c] != kUnmapped)
            out.insert({row_of[r], col_of[c]});
    }
    return out;
}

// per-column (entity, weight) adjacency of an incidence matrix
std::vector<std::vector<std::pair<Index, Real>>> column_adjacency(const SpMat& b) {
    std::vector<std::vector<std::pair<Index, Real>>> cols(b.cols());
    for (Index r = 0; r < b.outerSize(); ++r)
        for (SpMat::InnerIterator it(b, r); it; ++it)
            cols[it.col()].emplace_back(it.row(), it.value());
    return cols;
}

// we + bnq^T * x * bnd evaluated only on the support of `pattern`
SpMat masked_edge_product(const SpMat& pattern, const SpMat& we, const SpMat& bnq,
                          const SpMat& bnd, const SpMat& x) {
    auto qcols = column_adjacency(bnq);
    auto dcols = column_adjacency(bnd);
    std::vector<Triplet> trips;
    trips.reserve(pattern.nonZeros());
    for (Index r = 0; r < pattern.outerSize(); ++r)
        for (SpMat::InnerIterator it(pattern, r); it; ++it) {
            Real acc = we.coeff(it.row(), it.col());
            for (const auto& [v, wq] : qcols[it.row()])
                for (const auto& [w, wd] : dcols[it.col()]) {
                    Real xv = x.coeff(v, w);
                    if (xv != 0) acc += wq * xv * wd;
                }
            if (acc > 0) trips.emplace_back(it.row(), it.col(), acc);
        }
    SpMat out(pattern.rows(), pattern.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

// wv + bnq * yr * bnd^T on the support of `pattern`, with yr a 0/1 matching
// given as col_of_row
SpMat masked_vertex_product(const SpMat& pattern, const SpMat& wv, const SpMat& bnq,
                            const SpMat& bnd, const std::vector<Index>& y_match) {
    std::vector<Triplet> trips;
    trips.reserve(pattern.nonZeros());
    for (Index r = 0; r < pattern.outerSize(); ++r)
        for (SpMat::InnerIterator it(pattern, r); it; ++it) {
            Real acc = wv.coeff(it.row(), it.col());
            for (SpMat::InnerIterator qe(bnq, it.row()); qe; ++qe) {
                Index f = y_match[qe.col()];
                if (f == kUnmapped) continue;
                Real bd = bnd.coeff(it.col(), f);
                if (bd != 0) acc += qe.value() * bd;
            }
            if (acc > 0) trips.emplace_back(it.row(), it.col(), acc);
        }
    SpMat out(pattern.rows(), pattern.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace

AlignResult align(const Hypergraph& query, const Hypergraph& data,
                  const SolverConfig& cfg) {
    using clock = std::chrono::steady_clock;
    cfg.validate();
    query.validate();
    data.validate();
    const Index nq = query.vertex_count, mq = query.edge_count();
    const Index nd = data.vertex_count, md = data.edge_count();
    if (nq > nd || mq > md)
        throw DomainError(
            "align: query must be the smaller side (n_Q <= n_D, m_Q <= m_D); "
            "swap the inputs and invert the result");
    if (nq == 0 || mq == 0) throw DomainError("align: empty query hypergraph");

    const SpMat bnq = normalized_incidence(query);
    const SpMat bnd = normalized_incidence(data);

    AlignResult res;
    res.alignment.vertex_map.assign(nq, kUnmapped);
    res.alignment.edge_map.assign(mq, kUnmapped);

    const bool sparse = cfg.mode == SolverConfig::Mode::sparse;
    if (sparse) {
        res.resolved_k =
            cfg.top_k ? *cfg.top_k
                      : std::max<Index>(1, static_cast<Index>(std::ceil(std::log2(
                                               static_cast<Real>(std::max(
                                                   {nq, nd, mq, md, Index(2)}))))));
    }

    const SpMat wv_zero(nq, nd), we_zero(mq, md);
    Real prev_obj = -std::numeric_limits<Real>::infinity();
    auto& vmap = res.alignment.vertex_map;
    auto& emap = res.alignment.edge_map;

    CentralityOptions copt = cfg.centrality;
    copt.beta = cfg.beta;

    for (int round = 1; round <= cfg.max_outer_rounds; ++round) {
        const auto t0 = clock::now();
        const SpMat xstar = alignment_matrix(vmap, nq, nd);
        const SpMat ystar = alignment_matrix(emap, mq, md);
        if (!has_unmatched(xstar, ystar)) break;

        auto [wv, we] = importance_from_partial(bnq, bnd, xstar, ystar);

        const std::vector<Index> uqv = unmapped_sources(vmap);
        const std::vector<Index> udv = complement_targets(vmap, nd);
        const std::vector<Index> uqe = unmapped_sources(emap);
        const std::vector<Index> ude = complement_targets(emap, md);

        const SpMat wv_s = submatrix(wv, uqv, udv);
        const SpMat we_s = submatrix(we, uqe, ude);
        const SpMat bnq_s = submatrix(bnq, uqv, uqe);
        const SpMat bnd_s = submatrix(bnd, udv, ude);

        const PairSet forbid_v =
            restrict_pairs(cfg.forbid_vertex_pairs, uqv, udv, nq, nd);
        const PairSet forbid_e =
            restrict_pairs(cfg.forbid_edge_pairs, uqe, ude, mq, md);

        CentralityScores scores = block_centrality(bnq_s, bnd_s, wv_s, we_s, copt);
        SimilarityInit init = sparse
                                  ? init_similarity_sparse(scores, res.resolved_k,
                                                           cfg.init)
                                  : init_similarity_dense(scores, cfg.init);
        res.k_clamped = res.k_clamped || init.k_clamped;
        mask_forbidden(init.x, forbid_v);
        mask_forbidden(init.y, forbid_e);

        SpMat y_init;
        if (sparse) {
            y_init = masked_edge_product(init.y, we_s, bnq_s, bnd_s, init.x);
        } else {
            y_init = we_s + SpMat(bnq_s.transpose() * (init.x * bnd_s));
            prune_below(y_init, Real(0));
        }
        mask_forbidden(y_init, forbid_e);

        SimilarityState state = SimilarityState::make(init.x, std::move(y_init));
        state = propagate(std::move(state), bnq_s, bnd_s, cfg.cooling);

        const Matching y_round = dominant_match(state.y);
        std::vector<Index> y_match(uqe.size(), kUnmapped);
        for (const auto& p : y_round.pairs) y_match[p.row] = p.col;

        SpMat x_score;
        if (sparse) {
            x_score = masked_vertex_product(init.x, wv_s, bnq_s, bnd_s, y_match);
        } else {
            const SpMat yr01 = alignment_matrix(y_match, static_cast<Index>(uqe.size()),
                                                static_cast<Index>(ude.size()));
            x_score = wv_s + SpMat(bnq_s * (yr01 * bnd_s.transpose()));
            prune_below(x_score, Real(0));
        }
        mask_forbidden(x_score, forbid_v);
        const Matching x_round = dominant_match(x_score);

        Index new_v = 0, new_e = 0;
        for (const auto& p : x_round.pairs) {
            vmap[uqv[p.row]] = udv[p.col];
            ++new_v;
        }
        for (const auto& p : y_round.pairs) {
            emap[uqe[p.row]] = ude[p.col];
            ++new_e;
        }

        bool final_round = false;
        if (new_v == 0 && new_e == 0) {
            // stalled: commit what the continuous similarities still support
            for (const auto& p : dominant_match(state.x).pairs) {
                vmap[uqv[p.row]] = udv[p.col];
                ++new_v;
            }
            // state.y's dominant match was already empty, nothing to add there
            final_round = true;
        }

        RoundTrace tr;
        tr.round = round;
        tr.new_vertex_matches = new_v;
        tr.new_edge_matches = new_e;
        tr.qp_objective =
            qp_objective(alignment_matrix(vmap, nq, nd), alignment_matrix(emap, mq, md),
                         wv_zero, we_zero, bnq, bnd, cfg.beta);
        tr.objective_decreased = tr.qp_objective < prev_obj;
        prev_obj = tr.qp_objective;
        tr.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        res.trace.push_back(tr);

        if (final_round || (new_v == 0 && new_e == 0)) break;
    }
    res.alignment.validate(nd, md);
    return res;
}

}  // namespace hgalign
