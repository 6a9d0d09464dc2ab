#pragma once

#include "tsph/dissimilarity.hpp"
#include "tsph/graph.hpp"

namespace tsph {

struct DiffusionConfig {
    int t = 1;  // lazy walk length, >= 1
};

/// BFS hop counts; +inf for disconnected pairs. Ignores weights.
DissimilarityMatrix dist_shortest_unweighted(const Graph& g);

/// Minimum hop count among the paths minimizing total reciprocal weight
/// (lexicographic Dijkstra on (sum 1/w, hops), costs compared with relative
/// tolerance 1e-9). A graph-derived dissimilarity, not a guaranteed metric.
DissimilarityMatrix dist_hop_on_optimal(const Graph& g);

/// Weighted shortest path with edge lengths 1/w (Dijkstra).
DissimilarityMatrix dist_reciprocal_shortest(const Graph& g);

/// Lazy random-walk diffusion distance after t steps, stationary weights
/// pi(c) = s(c)/sum s. Zero-degree vertices walk in place (P(i,i) = 1) and sit
/// at +inf from the rest of the graph.
DissimilarityMatrix dist_diffusion(const Graph& g, const DiffusionConfig& cfg);

/// Size-adaptive walk length min(ceil(log2 |V|), 10), floored at 1.
int default_walk_length(const Graph& g);

/// Alternative policy from the diameter heuristic diam < t < 3 diam: returns
/// 2 * diameter (at least 1). Requires a connected graph.
int diameter_walk_length(const Graph& g);

/// Max BFS distance; throws Disconnected when some pair is unreachable.
int graph_diameter(const Graph& g);

/// Every finite entry divided by the max finite entry; +inf preserved.
/// A matrix with no positive finite entry is returned unchanged.
DissimilarityMatrix normalize(const DissimilarityMatrix& d);

} // namespace tsph
