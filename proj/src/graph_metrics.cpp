#include "tsph/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace tsph {

namespace {

struct Neighbor {
    int vertex;
    double weight;
};

std::vector<std::vector<Neighbor>> adjacency(const Graph& g) {
    std::vector<std::vector<Neighbor>> adj(g.vertex_count);
    for (const GraphEdge& e : g.edges) {
        adj[e.u].push_back({e.v, e.weight});
        adj[e.v].push_back({e.u, e.weight});
    }
    return adj;
}

std::vector<int> bfs_hops(const std::vector<std::vector<Neighbor>>& adj, int source) {
    std::vector<int> hops(adj.size(), -1);
    std::queue<int> frontier;
    hops[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (const Neighbor& nb : adj[v]) {
            if (hops[nb.vertex] < 0) {
                hops[nb.vertex] = hops[v] + 1;
                frontier.push(nb.vertex);
            }
        }
    }
    return hops;
}

void require_weighted(const Graph& g, const char* op) {
    if (!g.weighted) {
        throw UnweightedGraph(std::string(op) + ": graph carries no weights");
    }
}

} // namespace

DissimilarityMatrix dist_shortest_unweighted(const Graph& g) {
    const auto adj = adjacency(g);
    DissimilarityMatrix d(g.vertex_count);
    for (int s = 0; s < g.vertex_count; ++s) {
        const std::vector<int> hops = bfs_hops(adj, s);
        for (int v = s + 1; v < g.vertex_count; ++v) {
            const double value = hops[v] < 0 ? kInfDist : static_cast<double>(hops[v]);
            d.at(s, v) = value;
            d.at(v, s) = value;
        }
    }
    return d;
}

DissimilarityMatrix dist_hop_on_optimal(const Graph& g) {
    require_weighted(g, "dist_hop_on_optimal");
    const auto adj = adjacency(g);
    const int n = g.vertex_count;
    DissimilarityMatrix d(n);

    std::vector<double> cost(n);
    std::vector<int> hops(n);
    using Entry = std::tuple<double, int, int>;  // (reciprocal cost, hops, vertex)
    for (int s = 0; s < n; ++s) {
        std::fill(cost.begin(), cost.end(), kInfDist);
        std::fill(hops.begin(), hops.end(), std::numeric_limits<int>::max());
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        cost[s] = 0.0;
        hops[s] = 0;
        heap.emplace(0.0, 0, s);
        while (!heap.empty()) {
            const auto [c, h, v] = heap.top();
            heap.pop();
            const double tol_v = 1e-9 * std::max({1.0, c, cost[v]});
            if (c > cost[v] + tol_v || (std::abs(c - cost[v]) <= tol_v && h > hops[v])) continue;
            for (const Neighbor& nb : adj[v]) {
                const double nc = c + 1.0 / nb.weight;
                const int nh = h + 1;
                const double tol = 1e-9 * std::max({1.0, nc, cost[nb.vertex]});
                const bool cheaper = nc < cost[nb.vertex] - tol;
                const bool tied_fewer_hops =
                    std::abs(nc - cost[nb.vertex]) <= tol && nh < hops[nb.vertex];
                if (cheaper || tied_fewer_hops) {
                    cost[nb.vertex] = nc;
                    hops[nb.vertex] = nh;
                    heap.emplace(nc, nh, nb.vertex);
                }
            }
        }
        for (int v = s + 1; v < n; ++v) {
            const double value = std::isinf(cost[v]) ? kInfDist : static_cast<double>(hops[v]);
            d.at(s, v) = value;
            d.at(v, s) = value;
        }
    }
    return d;
}

DissimilarityMatrix dist_reciprocal_shortest(const Graph& g) {
    require_weighted(g, "dist_reciprocal_shortest");
    const auto adj = adjacency(g);
    const int n = g.vertex_count;
    DissimilarityMatrix d(n);

    std::vector<double> cost(n);
    using Entry = std::pair<double, int>;
    for (int s = 0; s < n; ++s) {
        std::fill(cost.begin(), cost.end(), kInfDist);
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        cost[s] = 0.0;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            const auto [c, v] = heap.top();
            heap.pop();
            if (c > cost[v]) continue;
            for (const Neighbor& nb : adj[v]) {
                const double nc = c + 1.0 / nb.weight;
                if (nc < cost[nb.vertex]) {
                    cost[nb.vertex] = nc;
                    heap.emplace(nc, nb.vertex);
                }
            }
        }
        for (int v = s + 1; v < n; ++v) {
            d.at(s, v) = cost[v];
            d.at(v, s) = cost[v];
        }
    }
    return d;
}

DissimilarityMatrix dist_diffusion(const Graph& g, const DiffusionConfig& cfg) {
    if (cfg.t < 1) throw std::invalid_argument("dist_diffusion: walk length must be >= 1");
    const int n = g.vertex_count;
    DissimilarityMatrix d(n);
    if (n <= 1) return d;

    // Row sums of the (weighted or binary) adjacency; zero-degree rows get an
    // absorbing self-loop so the walk stays stochastic.
    std::vector<double> strength(n, 0.0);
    std::vector<double> lazy(static_cast<size_t>(n) * n, 0.0);
    for (const GraphEdge& e : g.edges) {
        strength[e.u] += e.weight;
        strength[e.v] += e.weight;
    }
    for (int i = 0; i < n; ++i) {
        lazy[static_cast<size_t>(i) * n + i] = strength[i] > 0.0 ? 0.5 : 1.0;
    }
    for (const GraphEdge& e : g.edges) {
        lazy[static_cast<size_t>(e.u) * n + e.v] = 0.5 * e.weight / strength[e.u];
        lazy[static_cast<size_t>(e.v) * n + e.u] = 0.5 * e.weight / strength[e.v];
    }

    // walk = lazy^t by binary exponentiation.
    std::vector<double> walk(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) walk[static_cast<size_t>(i) * n + i] = 1.0;
    std::vector<double> product(static_cast<size_t>(n) * n);
    const auto multiply = [n, &product](std::vector<double>& a, const std::vector<double>& b) {
        std::fill(product.begin(), product.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double* row = &a[static_cast<size_t>(i) * n];
            double* out = &product[static_cast<size_t>(i) * n];
            for (int k = 0; k < n; ++k) {
                const double aik = row[k];
                if (aik == 0.0) continue;
                const double* brow = &b[static_cast<size_t>(k) * n];
                for (int j = 0; j < n; ++j) out[j] += aik * brow[j];
            }
        }
        a.swap(product);
    };
    std::vector<double> base = lazy;
    int steps = cfg.t;
    while (steps > 0) {
        if (steps & 1) multiply(walk, base);
        steps >>= 1;
        if (steps > 0) {
            std::vector<double> squared = base;
            multiply(squared, base);
            base.swap(squared);
        }
    }

    double total_strength = 0.0;
    for (double s : strength) total_strength += s;
    std::vector<double> inv_pi(n, kInfDist);
    if (total_strength > 0.0) {
        for (int i = 0; i < n; ++i) {
            if (strength[i] > 0.0) inv_pi[i] = total_strength / strength[i];
        }
    }

    for (int a = 0; a < n; ++a) {
        const double* row_a = &walk[static_cast<size_t>(a) * n];
        for (int b = a + 1; b < n; ++b) {
            const double* row_b = &walk[static_cast<size_t>(b) * n];
            double sum = 0.0;
            for (int c = 0; c < n; ++c) {
                const double diff = row_a[c] - row_b[c];
                if (diff == 0.0) continue;
                if (std::isinf(inv_pi[c])) {
                    sum = kInfDist;
                    break;
                }
                sum += diff * diff * inv_pi[c];
            }
            const double value = std::isinf(sum) ? kInfDist : std::sqrt(sum);
            d.at(a, b) = value;
            d.at(b, a) = value;
        }
    }
    return d;
}

int default_walk_length(const Graph& g) {
    if (g.vertex_count < 1) throw std::invalid_argument("default_walk_length: empty graph");
    int t = 0;
    long long reach = 1;
    while (reach < g.vertex_count && t < 10) {
        reach <<= 1;
        ++t;
    }
    return std::max(1, t);
}

int diameter_walk_length(const Graph& g) { return std::max(1, 2 * graph_diameter(g)); }

int graph_diameter(const Graph& g) {
    if (g.vertex_count < 1) throw std::invalid_argument("graph_diameter: empty graph");
    const auto adj = adjacency(g);
    int diameter = 0;
    for (int s = 0; s < g.vertex_count; ++s) {
        const std::vector<int> hops = bfs_hops(adj, s);
        for (int v = 0; v < g.vertex_count; ++v) {
            if (hops[v] < 0) throw Disconnected("graph_diameter: graph is disconnected");
            diameter = std::max(diameter, hops[v]);
        }
    }
    return diameter;
}

DissimilarityMatrix normalize(const DissimilarityMatrix& d) {
    validate(d);
    const double top = max_finite_entry(d);
    if (top <= 0.0) return d;  // nothing to scale
    DissimilarityMatrix out(d.size);
    for (size_t i = 0; i < d.entries.size(); ++i) {
        const double v = d.entries[i];
        out.entries[i] = std::isinf(v) ? kInfDist : v / top;
    }
    return out;
}

// -- DissimilarityMatrix utilities -------------------------------------------

void validate(const DissimilarityMatrix& d) {
    if (d.size < 0 || d.entries.size() != static_cast<size_t>(d.size) * d.size) {
        throw Error("dissimilarity matrix: bad dimensions");
    }
    for (int i = 0; i < d.size; ++i) {
        if (d.at(i, i) != 0.0) throw Error("dissimilarity matrix: nonzero diagonal");
        for (int j = i + 1; j < d.size; ++j) {
            const double v = d.at(i, j);
            if (std::isnan(v) || v < 0.0) throw Error("dissimilarity matrix: invalid entry");
            if (v != d.at(j, i)) throw Error("dissimilarity matrix: not symmetric");
        }
    }
}

double max_finite_entry(const DissimilarityMatrix& d) {
    double top = 0.0;
    for (double v : d.entries) {
        if (std::isfinite(v)) top = std::max(top, v);
    }
    return top;
}

std::string to_csv(const DissimilarityMatrix& d) {
    std::string out;
    char buf[32];
    for (int i = 0; i < d.size; ++i) {
        for (int j = 0; j < d.size; ++j) {
            if (j > 0) out += ',';
            const double v = d.at(i, j);
            if (std::isinf(v)) {
                out += "inf";
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

} // namespace tsph
