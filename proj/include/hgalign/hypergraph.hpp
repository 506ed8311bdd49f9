#pragma once

#include "hgalign/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hgalign {

// Vertex-list hypergraph. Hyperedges are sorted vectors of vertex ids;
// duplicate hyperedges are allowed and kept as distinct columns of the
// incidence matrix. Labels, when present, map ids back to input tokens.
struct Hypergraph {
    Index vertex_count = 0;
    std::vector<std::vector<Index>> edges;
    std::vector<std::string> labels;  // empty, or one label per vertex

    Index edge_count() const { return static_cast<Index>(edges.size()); }

    // incident edge ids per vertex, ascending
    std::vector<std::vector<Index>> vertex_to_edges() const;

    std::vector<Index> vertex_degrees() const;

    // throws on out-of-range ids, unsorted/duplicated members, empty edges,
    // or a label table of the wrong size
    void validate() const;
};

// Text format: one hyperedge per line, whitespace-separated vertex tokens.
// '#' lines are comments. Tokens are mapped to dense ids in first-appearance
// order. Duplicate tokens within a line collapse to one id. Blank
// (whitespace-only) non-comment lines and files with zero hyperedges are
// format errors.
Hypergraph parse_hypergraph(std::string_view text);

// One line per edge, members by label (ids when no label table), ascending
// id order. parse(serialize(h)) reproduces h's id assignment.
std::string serialize_hypergraph(const Hypergraph& h);

struct TwoCore {
    Hypergraph core;
    // old id -> new id, or -1 when peeled
    std::vector<Index> vertex_map;
    std::vector<Index> edge_map;
};

// Iteratively removes vertices of degree < 2 and hyperedges of size < 2
// (the 2-core of the bipartite incidence representation). May be empty.
TwoCore two_core(const Hypergraph& h);

// n x m 0/1 vertex-by-hyperedge incidence.
SpMat incidence(const Hypergraph& h);

// Incidence with each column scaled by 1/sqrt(edge size): unit column norms.
SpMat normalized_incidence(const Hypergraph& h);

// n x n 0/1 co-membership adjacency, zero diagonal.
SpMat clique_expansion(const Hypergraph& h);

struct InstanceStats {
    Index vertex_count = 0;
    Index edge_count = 0;
    Real mean_edge_size = 0;
    Index bipartite_size = 0;  // vertex_count + edge_count
};

// errors when the hypergraph has no hyperedges (mean undefined)
InstanceStats stats(const Hypergraph& h);

}  // namespace hgalign
