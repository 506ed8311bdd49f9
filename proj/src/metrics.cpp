#include "hgalign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hgalign {

namespace {

void validate_map(const std::vector<Index>& map, Index range, const char* what) {
    std::vector<char> used(range, 0);
    for (Index t : map) {
        if (t == kUnmapped) continue;
        if (t < 0 || t >= range)
            throw DimensionError(std::string(what) + ": target out of range");
        if (used[t]) throw DomainError(std::string(what) + ": not injective");
        used[t] = 1;
    }
}

// sorted image of a query edge under a partial vertex map; nullopt-like flag
// when any member is unmapped
bool image_of_edge(const std::vector<Index>& edge, const std::vector<Index>& vmap,
                   std::vector<Index>& out) {
    out.clear();
    for (Index v : edge) {
        if (v >= static_cast<Index>(vmap.size()) || vmap[v] == kUnmapped) return false;
        out.push_back(vmap[v]);
    }
    std::sort(out.begin(), out.end());
    return true;
}

Index sorted_overlap(const std::vector<Index>& a, const std::vector<Index>& b) {
    Index k = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++k; ++i; ++j; }
    }
    return k;
}

}  // namespace

void Alignment::validate(Index data_vertices, Index data_edges) const {
    validate_map(vertex_map, data_vertices, "alignment vertex_map");
    validate_map(edge_map, data_edges, "alignment edge_map");
}

Index Alignment::mapped_vertices() const {
    return std::count_if(vertex_map.begin(), vertex_map.end(),
                         [](Index t) { return t != kUnmapped; });
}

Index Alignment::mapped_edges() const {
    return std::count_if(edge_map.begin(), edge_map.end(),
                         [](Index t) { return t != kUnmapped; });
}

SpMat alignment_matrix(const std::vector<Index>& map, Index rows, Index cols) {
    if (static_cast<Index>(map.size()) != rows)
        throw DimensionError("alignment_matrix: map size != rows");
    validate_map(map, cols, "alignment_matrix");
    std::vector<Triplet> trips;
    for (Index i = 0; i < rows; ++i)
        if (map[i] != kUnmapped) trips.emplace_back(i, map[i], Real(1));
    SpMat m(rows, cols);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

bool is_alignment_matrix(const SpMat& m) {
    std::vector<Index> row_cnt(m.rows(), 0), col_cnt(m.cols(), 0);
    for (Index r = 0; r < m.outerSize(); ++r)
        for (SpMat::InnerIterator it(m, r); it; ++it) {
            if (it.value() != Real(1)) return false;
            if (++row_cnt[it.row()] > 1) return false;
            if (++col_cnt[it.col()] > 1) return false;
        }
    return true;
}

Real accuracy(const Alignment& sigma, const Alignment& truth,
              const std::vector<Index>& subset) {
    if (subset.empty()) throw DomainError("accuracy: empty evaluation subset");
    Index hits = 0;
    for (Index v : subset) {
        if (v < 0 || v >= static_cast<Index>(truth.vertex_map.size()) ||
            truth.vertex_map[v] == kUnmapped)
            throw DomainError("accuracy: subset vertex outside truth domain");
        if (v < static_cast<Index>(sigma.vertex_map.size()) &&
            sigma.vertex_map[v] == truth.vertex_map[v])
            ++hits;
    }
    return static_cast<Real>(hits) / static_cast<Real>(subset.size());
}

Real hyperedge_correctness(const Hypergraph& query, const Hypergraph& data,
                           const Alignment& sigma) {
    if (query.edge_count() == 0)
        throw DomainError("hyperedge_correctness: query has no hyperedges");
    std::set<std::vector<Index>> data_edges(data.edges.begin(), data.edges.end());
    Index hits = 0;
    std::vector<Index> img;
    for (const auto& e : query.edges)
        if (image_of_edge(e, sigma.vertex_map, img) && data_edges.count(img)) ++hits;
    return static_cast<Real>(hits) / static_cast<Real>(query.edge_count());
}

Real overlap_objective(const Hypergraph& query, const Hypergraph& data,
                       const Alignment& sigma) {
    Real total = 0;
    std::vector<Index> img;
    for (Index e = 0; e < query.edge_count(); ++e) {
        Index f = e < static_cast<Index>(sigma.edge_map.size()) ? sigma.edge_map[e]
                                                                : kUnmapped;
        if (f == kUnmapped) continue;
        if (f < 0 || f >= data.edge_count())
            throw DimensionError("overlap_objective: edge image out of range");
        img.clear();
        for (Index v : query.edges[e])
            if (sigma.vertex_map[v] != kUnmapped) img.push_back(sigma.vertex_map[v]);
        std::sort(img.begin(), img.end());
        total += static_cast<Real>(sorted_overlap(img, data.edges[f]));
    }
    return total;
}

Real incidence_objective(const Hypergraph& query, const Hypergraph& data,
                         const Alignment& sigma) {
    if (query.edge_count() == 0)
        throw DomainError("incidence_objective: query has no hyperedges");
    Real total = 0;
    std::vector<Index> img;
    for (Index e = 0; e < query.edge_count(); ++e) {
        Index f = e < static_cast<Index>(sigma.edge_map.size()) ? sigma.edge_map[e]
                                                                : kUnmapped;
        if (f == kUnmapped) continue;
        if (f < 0 || f >= data.edge_count())
            throw DimensionError("incidence_objective: edge image out of range");
        img.clear();
        for (Index v : query.edges[e])
            if (sigma.vertex_map[v] != kUnmapped) img.push_back(sigma.vertex_map[v]);
        std::sort(img.begin(), img.end());
        const Real overlap = static_cast<Real>(sorted_overlap(img, data.edges[f]));
        total += overlap / std::sqrt(static_cast<Real>(query.edges[e].size()) *
                                     static_cast<Real>(data.edges[f].size()));
    }
    return total / static_cast<Real>(query.edge_count());
}

Real nonexclusive_overlap(const Hypergraph& query, const Hypergraph& data,
                          const std::vector<Index>& vertex_map) {
    if (query.edge_count() == 0 || data.edge_count() == 0)
        throw DomainError("nonexclusive_overlap: empty hyperedge set");
    Real total = 0;
    std::vector<Index> img;
    for (const auto& e : query.edges) {
        img.clear();
        for (Index v : e)
            if (v < static_cast<Index>(vertex_map.size()) && vertex_map[v] != kUnmapped)
                img.push_back(vertex_map[v]);
        std::sort(img.begin(), img.end());
        Real best = 0;
        for (const auto& f : data.edges) {
            const Real val = static_cast<Real>(sorted_overlap(img, f)) /
                             std::sqrt(static_cast<Real>(e.size()) *
                                       static_cast<Real>(f.size()));
            if (val > best) best = val;
        }
        total += best;
    }
    return total / static_cast<Real>(query.edge_count());
}

Real qp_objective(const SpMat& x, const SpMat& y, const SpMat& wv,
                  const SpMat& we, const SpMat& bnq, const SpMat& bnd,
                  Real beta) {
    if (wv.rows() != x.rows() || wv.cols() != x.cols() ||
        we.rows() != y.rows() || we.cols() != y.cols() ||
        bnq.rows() != x.rows() || bnq.cols() != y.rows() ||
        bnd.rows() != x.cols() || bnd.cols() != y.cols())
        throw DimensionError("qp_objective: non-conformal inputs");
    const SpMat left = bnq * y;
    const SpMat right = x * bnd;
    return frobenius_inner(wv, x) + frobenius_inner(we, y) +
           beta * frobenius_inner(left, right);
}

}  // namespace hgalign
