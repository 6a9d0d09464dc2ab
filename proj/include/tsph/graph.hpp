#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsph/errors.hpp"

namespace tsph {

struct GraphEdge {
    int u = 0;  // u < v, both in [0, vertex_count)
    int v = 0;
    double weight = 1.0;
};

/// Undirected graph produced by a network construction. Edges are stored once
/// with u < v, sorted by (u, v); weights are positive when `weighted` is set
/// and 1 otherwise. No self-loops. vertex_labels carries the symbolic state
/// behind each vertex for transition networks (encoded ordinal pattern for the
/// OPN, state index for the CGSSN) and is empty for the other constructions.
struct Graph {
    int vertex_count = 0;
    bool weighted = false;
    std::vector<GraphEdge> edges;
    std::vector<long long> vertex_labels;

    int edge_count() const { return static_cast<int>(edges.size()); }
    std::vector<int> degrees() const;
    bool has_edge(int u, int v) const;
    /// Weight of edge (u, v); 0 when absent.
    double edge_weight(int u, int v) const;
};

void validate(const Graph& g);

/// One "u v w" triple per line, 0-based vertex ids, edges in (u, v) order.
std::string to_edge_list_text(const Graph& g);

} // namespace tsph
