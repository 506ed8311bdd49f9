#include "hgalign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace hgalign {
namespace oracle {

namespace {

// set image of one edge under a total map; sorted
std::vector<Index> mapped_edge(const std::vector<Index>& edge,
                               const std::vector<Index>& vertex_map) {
    std::vector<Index> img;
    img.reserve(edge.size());
    for (Index v : edge) {
        if (v >= static_cast<Index>(vertex_map.size()) || vertex_map[v] < 0)
            continue;
        img.push_back(vertex_map[v]);
    }
    std::sort(img.begin(), img.end());
    return img;
}

Real set_overlap(const std::vector<Index>& a, const std::vector<Index>& b) {
    Real k = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { k += 1; ++i; ++j; }
    }
    return k;
}

}  // namespace

Real eval_edge_correctness(const Hypergraph& query, const Hypergraph& data,
                           const std::vector<Index>& vertex_map) {
    if (query.edge_count() == 0) throw DomainError("oracle: query has no hyperedges");
    std::set<std::vector<Index>> targets(data.edges.begin(), data.edges.end());
    Index hits = 0;
    for (const auto& e : query.edges) {
        bool total = true;
        for (Index v : e)
            if (v >= static_cast<Index>(vertex_map.size()) || vertex_map[v] < 0)
                total = false;
        if (total && targets.count(mapped_edge(e, vertex_map))) ++hits;
    }
    return static_cast<Real>(hits) / static_cast<Real>(query.edge_count());
}

Real eval_nonexclusive_overlap(const Hypergraph& query, const Hypergraph& data,
                               const std::vector<Index>& vertex_map) {
    if (query.edge_count() == 0 || data.edge_count() == 0)
        throw DomainError("oracle: empty hyperedge set");
    Real total = 0;
    for (const auto& e : query.edges) {
        const auto img = mapped_edge(e, vertex_map);
        Real best = 0;
        for (const auto& f : data.edges)
            best = std::max(best, set_overlap(img, f) /
                                      std::sqrt(static_cast<Real>(e.size() * f.size())));
        total += best;
    }
    return total / static_cast<Real>(query.edge_count());
}

Real eval_incidence_objective(const Hypergraph& query, const Hypergraph& data,
                              const std::vector<Index>& vertex_map,
                              const std::vector<Index>& edge_map) {
    if (query.edge_count() == 0) throw DomainError("oracle: query has no hyperedges");
    Real total = 0;
    for (Index e = 0; e < query.edge_count(); ++e) {
        Index f = e < static_cast<Index>(edge_map.size()) ? edge_map[e] : -1;
        if (f < 0) continue;
        const auto img = mapped_edge(query.edges[e], vertex_map);
        total += set_overlap(img, data.edges[f]) /
                 std::sqrt(static_cast<Real>(query.edges[e].size() *
                                             data.edges[f].size()));
    }
    return total / static_cast<Real>(query.edge_count());
}

VertexAlignResult brute_force_vertex_align(const Hypergraph& query,
                                           const Hypergraph& data,
                                           VertexObjective objective) {
    query.validate();
    data.validate();
    if (data.vertex_count > 8)
        throw DomainError("brute_force_vertex_align: data side capped at 8 vertices");
    if (query.vertex_count > data.vertex_count)
        throw DomainError("brute_force_vertex_align: query must not exceed data");

    std::vector<Index> map(query.vertex_count, -1);
    std::vector<char> used(data.vertex_count, 0);
    VertexAlignResult best;
    best.value = -1;

    auto score = [&]() {
        return objective == VertexObjective::edge_correctness
                   ? eval_edge_correctness(query, data, map)
                   : eval_nonexclusive_overlap(query, data, map);
    };
    auto recurse = [&](auto&& self, Index v) -> void {
        if (v == query.vertex_count) {
            Real s = score();
            if (s > best.value) {
                best.value = s;
                best.vertex_map = map;
            }
            return;
        }
        for (Index t = 0; t < data.vertex_count; ++t) {
            if (used[t]) continue;
            used[t] = 1;
            map[v] = t;
            self(self, v + 1);
            used[t] = 0;
            map[v] = -1;
        }
    };
    recurse(recurse, 0);
    return best;
}

EdgeAlignResult brute_force_edge_align(const Hypergraph& query, const Hypergraph& data,
                                       const std::vector<Index>& vertex_map) {
    query.validate();
    data.validate();
    if (query.edge_count() > 6 || data.edge_count() > 6)
        throw DomainError("brute_force_edge_align: capped at 6 hyperedges per side");
    if (static_cast<Index>(vertex_map.size()) != query.vertex_count)
        throw DimensionError("brute_force_edge_align: vertex_map size mismatch");

    std::vector<Index> emap(query.edge_count(), -1);
    std::vector<char> used(data.edge_count(), 0);
    EdgeAlignResult best;
    best.value = -1;

    auto recurse = [&](auto&& self, Index e) -> void {
        if (e == query.edge_count()) {
            Real s = eval_incidence_objective(query, data, vertex_map, emap);
            if (s > best.value) {
                best.value = s;
                best.edge_map = emap;
            }
            return;
        }
        // leaving e unmapped is a legal branch (partial injections allowed)
        emap[e] = -1;
        self(self, e + 1);
        for (Index f = 0; f < data.edge_count(); ++f) {
            if (used[f]) continue;
            used[f] = 1;
            emap[e] = f;
            self(self, e + 1);
            used[f] = 0;
        }
        emap[e] = -1;
    };
    recurse(recurse, 0);
    return best;
}

AssignmentResult brute_force_assignment(const Mat& w) {
    const Index nr = w.rows(), nc = w.cols();
    if (std::min(nr, nc) > 7 || std::max(nr, nc) > 12)
        throw DomainError("brute_force_assignment: capped at min<=7, max<=12");

    // enumerate over the shorter side; transpose transparently
    const bool flip = nr > nc;
    const Index rows = flip ? nc : nr, cols = flip ? nr : nc;
    auto at = [&](Index r, Index c) { return flip ? w(c, r) : w(r, c); };

    std::vector<Index> cur(rows, -1), bestmap(rows, -1);
    std::vector<char> used(cols, 0);
    Real best = -std::numeric_limits<Real>::infinity();

    auto recurse = [&](auto&& self, Index r, Real acc) -> void {
        if (r == rows) {
            if (acc > best) {
                best = acc;
                bestmap = cur;
            }
            return;
        }
        for (Index c = 0; c < cols; ++c) {
            if (used[c]) continue;
            used[c] = 1;
            cur[r] = c;
            self(self, r + 1, acc + at(r, c));
            used[c] = 0;
            cur[r] = -1;
        }
    };
    recurse(recurse, 0, 0);

    AssignmentResult out;
    out.value = best;
    out.col_of_row.assign(nr, -1);
    if (flip) {
        for (Index r = 0; r < rows; ++r)
            if (bestmap[r] >= 0) out.col_of_row[bestmap[r]] = r;
    } else {
        out.col_of_row = bestmap;
    }
    return out;
}

}  // namespace oracle
}  // namespace hgalign
