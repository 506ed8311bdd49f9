#include "hgalign/initsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hgalign {

namespace {

struct BlockOp {
    const SpMat &bnq, &bnd, &wv, &we;
    Real inv_beta;
    Index nq, mq, nd, md;

    // rows: (query vertices | data hyperedges), cols: (data vertices | query
    // hyperedges)
    Vec apply(const Vec& v) const {
        Vec ld = v.head(nd), rq = v.tail(mq);
        Vec top = bnq * rq;
        if (wv.nonZeros() > 0) top += inv_beta * (wv * ld);
        Vec bot = bnd.transpose() * ld;
        if (we.nonZeros() > 0) bot += inv_beta * (we.transpose() * rq);
        Vec out(nq + md);
        out << top, bot;
        return out;
    }
    Vec apply_transpose(const Vec& u) const {
        Vec lq = u.head(nq), rd = u.tail(md);
        Vec top = bnd * rd;
        if (wv.nonZeros() > 0) top += inv_beta * (wv.transpose() * lq);
        Vec bot = bnq.transpose() * lq;
        if (we.nonZeros() > 0) bot += inv_beta * (we * rd);
        Vec out(nd + mq);
        out << top, bot;
        return out;
    }
};

}  // namespace

CentralityScores block_centrality(const SpMat& bnq, const SpMat& bnd,
                                  const SpMat& wv, const SpMat& we,
                                  const CentralityOptions& opt) {
    const Index nq = bnq.rows(), mq = bnq.cols();
    const Index nd = bnd.rows(), md = bnd.cols();
    if (wv.rows() != nq || wv.cols() != nd)
        throw DimensionError("block_centrality: Wv must be n_Q x n_D");
    if (we.rows() != mq || we.cols() != md)
        throw DimensionError("block_centrality: We must be m_Q x m_D");
    if (opt.beta <= 0) throw DomainError("block_centrality: beta must be positive");
    if (nq + md == 0 || nd + mq == 0)
        throw DomainError("block_centrality: empty operator");

    BlockOp op{bnq, bnd, wv, we, Real(1) / opt.beta, nq, mq, nd, md};

    Vec v = Vec::Constant(nd + mq, Real(1) / std::sqrt(static_cast<Real>(nd + mq)));
    Vec u;
    Real sigma = 0, delta = 0;
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        Vec mu = op.apply(v);
        Real nu = mu.norm();
        if (nu == 0) {
            // operator annihilates the current vector; all-zero blocks
            u = Vec::Zero(nq + md);
            sigma = 0;
            converged = true;
            break;
        }
        u = mu / nu;
        Vec mv = op.apply_transpose(u);
        Real nv = mv.norm();
        if (nv == 0) {
            sigma = 0;
            converged = true;
            break;
        }
        Vec v_next = mv / nv;
        delta = (v_next - v).norm();
        v = v_next;
        sigma = nv;
        if (delta < opt.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("block_centrality: power iteration hit max_iter " +
                                   std::to_string(opt.max_iter) + " (last delta " +
                                   std::to_string(delta) + ")",
                               delta);

    // one consistent half-step so that  M * right == sigma * left  exactly up
    // to normalization
    Vec mu = op.apply(v);
    sigma = mu.norm();
    if (sigma > 0) u = mu / sigma;

    // a nonnegative operator iterated from a positive start stays nonnegative;
    // the sign flip only ever fires on all-zero or degenerate inputs
    Index iu, iv;
    Real mu_max = u.size() ? u.cwiseAbs().maxCoeff(&iu) : 0;
    if (mu_max > 0 && u[iu] < 0) u = -u;
    Real mv_max = v.size() ? v.cwiseAbs().maxCoeff(&iv) : 0;
    if (mv_max > 0 && v[iv] < 0) v = -v;

    CentralityScores s;
    s.query_vertex = u.head(nq);
    s.data_edge = u.tail(md);
    s.data_vertex = v.head(nd);
    s.query_edge = v.tail(mq);
    s.sigma_max = sigma;
    return s;
}

Real compare(Real a, Real b) {
    if (a < 0 || b < 0) throw DomainError("compare: attributes must be nonnegative");
    if (a == 0 && b == 0) return 1;  // identical attributes by convention
    return std::min(a, b) / std::max(a, b);
}

namespace {

struct Attributes {
    Vec qv, dv, qe, de;
};

Attributes attributes_of(const CentralityScores& s, const InitOptions& opt) {
    Attributes a{s.query_vertex, s.data_vertex, s.query_edge, s.data_edge};
    if (opt.rescale_per_hypergraph) {
        for (Vec* v : {&a.qv, &a.dv, &a.qe, &a.de}) {
            Real n = v->norm();
            if (n > 0) *v /= n;
        }
    }
    a.qv *= s.sigma_max;
    a.dv *= s.sigma_max;
    a.qe *= s.sigma_max;
    a.de *= s.sigma_max;
    return a;
}

SpMat dense_block(const Vec& qa, const Vec& da) {
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(qa.size()) * static_cast<size_t>(da.size()));
    for (Index i = 0; i < qa.size(); ++i)
        for (Index j = 0; j < da.size(); ++j) {
            Real v = compare(qa[i], da[j]);
            if (v > 0) trips.emplace_back(i, j, v);
        }
    SpMat m(qa.size(), da.size());
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

// top-k by |a - b| with ties by smaller data id, per query row
SpMat sparse_block(const Vec& qa, const Vec& da, Index k) {
    std::vector<std::pair<Real, Index>> sorted;  // (value, id), positives only
    sorted.reserve(da.size());
    for (Index j = 0; j < da.size(); ++j)
        if (da[j] > 0) sorted.emplace_back(da[j], j);
    std::sort(sorted.begin(), sorted.end());

    std::vector<Triplet> trips;
    std::vector<std::pair<Real, Index>> cand;  // (distance, id)
    for (Index i = 0; i < qa.size(); ++i) {
        if (qa[i] <= 0) continue;  // zero-attribute rows have no candidates
        if (sorted.empty()) continue;
        const Real a = qa[i];
        auto lo = std::lower_bound(sorted.begin(), sorted.end(),
                                   std::make_pair(a, std::numeric_limits<Index>::min()));
        Index r = static_cast<Index>(lo - sorted.begin());  // first value >= a
        Index l = r - 1;
        cand.clear();
        // outward scan: k nearest by distance, then widen through the tied
        // boundary so id tie-breaks are exact
        while (static_cast<Index>(cand.size()) < k &&
               (l >= 0 || r < static_cast<Index>(sorted.size()))) {
            Real dl = l >= 0 ? a - sorted[l].first : std::numeric_limits<Real>::infinity();
            Real dr = r < static_cast<Index>(sorted.size())
                          ? sorted[r].first - a
                          : std::numeric_limits<Real>::infinity();
            if (dl <= dr) { cand.emplace_back(dl, sorted[l].second); --l; }
            else { cand.emplace_back(dr, sorted[r].second); ++r; }
        }
        if (!cand.empty()) {
            const Real cut = std::max_element(cand.begin(), cand.end())->first;
            while (l >= 0 && a - sorted[l].first == cut) {
                cand.emplace_back(cut, sorted[l].second);
                --l;
            }
            while (r < static_cast<Index>(sorted.size()) && sorted[r].first - a == cut) {
                cand.emplace_back(cut, sorted[r].second);
                ++r;
            }
        }
        std::sort(cand.begin(), cand.end());
        if (static_cast<Index>(cand.size()) > k) cand.resize(k);
        for (const auto& [dist, j] : cand) {
            Real v = compare(a, da[j]);
            if (v > 0) trips.emplace_back(i, j, v);
        }
    }
    SpMat m(qa.size(), da.size());
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

}  // namespace

SimilarityInit init_similarity_dense(const CentralityScores& scores,
                                     const InitOptions& opt) {
    Attributes a = attributes_of(scores, opt);
    SimilarityInit out;
    out.x = dense_block(a.qv, a.dv);
    out.y = dense_block(a.qe, a.de);
    return out;
}

SimilarityInit init_similarity_sparse(const CentralityScores& scores, Index k,
                                      const InitOptions& opt) {
    if (k < 1) throw DomainError("init_similarity_sparse: k must be >= 1");
    Attributes a = attributes_of(scores, opt);
    SimilarityInit out;
    out.k_clamped = k > a.dv.size() || k > a.de.size();
    out.x = sparse_block(a.qv, a.dv, std::min<Index>(k, a.dv.size()));
    out.y = sparse_block(a.qe, a.de, std::min<Index>(k, a.de.size()));
    return out;
}

std::pair<Vec, Vec> degree_attributes(const SpMat& b) {
    return {row_sums(b), col_sums(b)};
}

}  // namespace hgalign
