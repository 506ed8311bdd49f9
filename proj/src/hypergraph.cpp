#include "hgalign/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace hgalign {

std::vector<std::vector<Index>> Hypergraph::vertex_to_edges() const {
    std::vector<std::vector<Index>> inc(vertex_count);
    for (Index e = 0; e < edge_count(); ++e)
        for (Index v : edges[e]) inc[v].push_back(e);
    return inc;
}

std::vector<Index> Hypergraph::vertex_degrees() const {
    std::vector<Index> deg(vertex_count, 0);
    for (const auto& e : edges)
        for (Index v : e) ++deg[v];
    return deg;
}

void Hypergraph::validate() const {
    if (vertex_count < 0) throw DomainError("hypergraph: negative vertex count");
    for (Index e = 0; e < edge_count(); ++e) {
        const auto& mem = edges[e];
        if (mem.empty())
            throw DomainError("hypergraph: empty hyperedge " + std::to_string(e));
        for (size_t i = 0; i < mem.size(); ++i) {
            if (mem[i] < 0 || mem[i] >= vertex_count)
                throw DimensionError("hypergraph: vertex id out of range in edge " +
                                     std::to_string(e));
            if (i > 0 && mem[i] <= mem[i - 1])
                throw DomainError("hypergraph: edge " + std::to_string(e) +
                                  " not sorted/unique");
        }
    }
    if (!labels.empty() && static_cast<Index>(labels.size()) != vertex_count)
        throw DomainError("hypergraph: label table size mismatch");
}

Hypergraph parse_hypergraph(std::string_view text) {
    Hypergraph h;
    std::unordered_map<std::string, Index> id_of;
    size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        bool last = eol == std::string_view::npos;
        std::string_view line = text.substr(pos, last ? text.size() - pos : eol - pos);
        pos = last ? text.size() + 1 : eol + 1;
        ++line_no;
        if (last && line.empty() && (line_no > 1 || text.empty()))
            break;  // trailing newline (or empty input), not a line

        size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] == '#') continue;
        if (first == std::string_view::npos)
            throw FormatError("parse: blank line " + std::to_string(line_no) +
                              " among hyperedge lines");

        std::vector<Index> members;
        std::istringstream toks{std::string(line)};
        std::string tok;
        while (toks >> tok) {
            auto [it, inserted] = id_of.try_emplace(tok, static_cast<Index>(id_of.size()));
            if (inserted) h.labels.push_back(tok);
            members.push_back(it->second);
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        h.edges.push_back(std::move(members));
    }
    if (h.edges.empty()) throw FormatError("parse: no hyperedges in input");
    h.vertex_count = static_cast<Index>(id_of.size());
    return h;
}

std::string serialize_hypergraph(const Hypergraph& h) {
    std::ostringstream out;
    for (const auto& e : h.edges) {
        for (size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            if (h.labels.empty()) out << e[i];
            else out << h.labels[e[i]];
        }
        out << '\n';
    }
    return out.str();
}

TwoCore two_core(const Hypergraph& h) {
    h.validate();
    const Index n = h.vertex_count, m = h.edge_count();
    auto v2e = h.vertex_to_edges();
    std::vector<Index> deg(n), size(m);
    for (Index v = 0; v < n; ++v) deg[v] = static_cast<Index>(v2e[v].size());
    for (Index e = 0; e < m; ++e) size[e] = static_cast<Index>(h.edges[e].size());

    std::vector<char> v_dead(n, 0), e_dead(m, 0);
    std::deque<Index> vq, eq;
    for (Index v = 0; v < n; ++v)
        if (deg[v] < 2) { v_dead[v] = 1; vq.push_back(v); }
    for (Index e = 0; e < m; ++e)
        if (size[e] < 2) { e_dead[e] = 1; eq.push_back(e); }

    while (!vq.empty() || !eq.empty()) {
        if (!vq.empty()) {
            Index v = vq.front(); vq.pop_front();
            for (Index e : v2e[v]) {
                if (e_dead[e]) continue;
                if (--size[e] < 2) { e_dead[e] = 1; eq.push_back(e); }
            }
        } else {
            Index e = eq.front(); eq.pop_front();
            for (Index v : h.edges[e]) {
                if (v_dead[v]) continue;
                if (--deg[v] < 2) { v_dead[v] = 1; vq.push_back(v); }
            }
        }
    }

    TwoCore out;
    out.vertex_map.assign(n, -1);
    out.edge_map.assign(m, -1);
    Index nv = 0;
    for (Index v = 0; v < n; ++v)
        if (!v_dead[v]) out.vertex_map[v] = nv++;
    out.core.vertex_count = nv;
    if (!h.labels.empty()) {
        out.core.labels.resize(nv);
        for (Index v = 0; v < n; ++v)
            if (out.vertex_map[v] >= 0) out.core.labels[out.vertex_map[v]] = h.labels[v];
    }
    Index ne = 0;
    for (Index e = 0; e < m; ++e) {
        if (e_dead[e]) continue;
        std::vector<Index> mem;
        mem.reserve(h.edges[e].size());
        for (Index v : h.edges[e])
            if (!v_dead[v]) mem.push_back(out.vertex_map[v]);
        out.edge_map[e] = ne++;
        out.core.edges.push_back(std::move(mem));
    }
    return out;
}

SpMat incidence(const Hypergraph& h) {
    std::vector<Triplet> trips;
    for (Index e = 0; e < h.edge_count(); ++e)
        for (Index v : h.edges[e]) trips.emplace_back(v, e, Real(1));
    SpMat b(h.vertex_count, h.edge_count());
    b.setFromTriplets(trips.begin(), trips.end());
    return b;
}

SpMat normalized_incidence(const Hypergraph& h) {
    std::vector<Triplet> trips;
    for (Index e = 0; e < h.edge_count(); ++e) {
        const Real w = Real(1) / std::sqrt(static_cast<Real>(h.edges[e].size()));
        for (Index v : h.edges[e]) trips.emplace_back(v, e, w);
    }
    SpMat b(h.vertex_count, h.edge_count());
    b.setFromTriplets(trips.begin(), trips.end());
    return b;
}

SpMat clique_expansion(const Hypergraph& h) {
    std::vector<Triplet> trips;
    for (const auto& e : h.edges)
        for (size_t i = 0; i < e.size(); ++i)
            for (size_t j = i + 1; j < e.size(); ++j) {
                trips.emplace_back(e[i], e[j], Real(1));
                trips.emplace_back(e[j], e[i], Real(1));
            }
    SpMat a(h.vertex_count, h.vertex_count);
    // duplicates collapse; clamp back to 0/1
    a.setFromTriplets(trips.begin(), trips.end(),
                      [](const Real&, const Real&) { return Real(1); });
    return a;
}

InstanceStats stats(const Hypergraph& h) {
    if (h.edge_count() == 0)
        throw DomainError("stats: hypergraph has no hyperedges (mean size undefined)");
    InstanceStats s;
    s.vertex_count = h.vertex_count;
    s.edge_count = h.edge_count();
    size_t total = 0;
    for (const auto& e : h.edges) total += e.size();
    s.mean_edge_size = static_cast<Real>(total) / static_cast<Real>(h.edge_count());
    s.bipartite_size = s.vertex_count + s.edge_count;
    return s;
}

}  // namespace hgalign
