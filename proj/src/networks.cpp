#include "tsph/networks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tsph/embedding.hpp"

namespace tsph {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

Graph finalize_edges(int vertex_count, bool weighted, std::map<std::pair<int, int>, double> weights) {
    Graph g;
    g.vertex_count = vertex_count;
    g.weighted = weighted;
    g.edges.reserve(weights.size());
    for (const auto& [key, w] : weights) {
        g.edges.push_back(GraphEdge{key.first, key.second, weighted ? w : 1.0});
    }
    return g;
}

/// Shared by OPN and CGSSN: count directed transitions between consecutive
/// symbols, drop self-transitions, symmetrize, and map symbols (sorted
/// ascending) to vertex ids.
Graph transition_graph(const std::vector<long long>& symbols) {
    std::vector<long long> distinct(symbols);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::map<long long, int> vertex_of;
    for (int i = 0; i < static_cast<int>(distinct.size()); ++i) vertex_of[distinct[i]] = i;

    std::map<std::pair<int, int>, double> weights;
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
        const int a = vertex_of[symbols[i]];
        const int b = vertex_of[symbols[i + 1]];
        if (a == b) continue;  // self-loop, dropped
        weights[{std::min(a, b), std::max(a, b)}] += 1.0;
    }
    Graph g = finalize_edges(static_cast<int>(distinct.size()), true, std::move(weights));
    g.vertex_labels = std::move(distinct);
    return g;
}

} // namespace

std::vector<int> ordinal_pattern(std::span<const double> window) {
    std::vector<int> order(window.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return window[a] < window[b]; });
    return order;
}

long long encode_pattern(const std::vector<int>& pattern, int n) {
    require(static_cast<int>(pattern.size()) == n, "encode_pattern: size mismatch");
    long long code = 0;
    for (int v : pattern) code = code * n + v;
    return code;
}

int coarse_bin(double value, double lo, double hi, int b) {
    require(b >= 2, "coarse_bin: need at least 2 bins");
    if (hi <= lo) return 0;
    const double width = (hi - lo) / b;
    const int idx = static_cast<int>((value - lo) / width);
    return std::clamp(idx, 0, b - 1);  // top edge closed
}

long long coarse_state(std::span<const double> window, double lo, double hi, int b) {
    long long state = 1;
    long long scale = 1;
    for (double v : window) {
        state += static_cast<long long>(coarse_bin(v, lo, hi, b)) * scale;
        scale *= b;
    }
    return state;
}

Graph build_nvg(const TimeSeries& x) {
    validate(x);
    const int len = x.length();
    if (len < 2) throw SeriesTooShort("build_nvg: need at least 2 samples");
    const std::vector<double>& y = x.values;

    std::map<std::pair<int, int>, double> edges;
    for (int i = 0; i + 1 < len; ++i) {
        edges[{i, i + 1}] = 1.0;  // consecutive samples always see each other
        for (int j = i + 2; j < len; ++j) {
            bool visible = true;
            // y_k < y_j + (y_i - y_j)(j - k)/(j - i), cleared of the division.
            const double span = static_cast<double>(j - i);
            for (int k = i + 1; k < j; ++k) {
                const double lhs = y[k] * span;
                const double rhs = y[j] * span + (y[i] - y[j]) * static_cast<double>(j - k);
                if (lhs >= rhs) {
                    visible = false;
                    break;
                }
            }
            if (visible) edges[{i, j}] = 1.0;
        }
    }
    return finalize_edges(len, false, std::move(edges));
}

Graph build_hvg(const TimeSeries& x) {
    validate(x);
    const int len = x.length();
    if (len < 2) throw SeriesTooShort("build_hvg: need at least 2 samples");
    const std::vector<double>& y = x.values;

    std::map<std::pair<int, int>, double> edges;
    for (int i = 0; i + 1 < len; ++i) {
        edges[{i, i + 1}] = 1.0;
        const double yi = y[i];
        double highest = y[i + 1];
        for (int j = i + 2; j < len; ++j) {
            // Every intermediate must lie strictly below min(y_i, y_j).
            if (highest < std::min(yi, y[j])) edges[{i, j}] = 1.0;
            highest = std::max(highest, y[j]);
            if (highest >= yi) break;  // nothing beyond can see i
        }
    }
    return finalize_edges(len, false, std::move(edges));
}

Graph build_opn(const TimeSeries& x, int tau, int n) {
    require(n <= 12, "build_opn: dimension above 12 is not supported");
    const PointCloud cloud = delay_embed(x, tau, n);
    std::vector<long long> symbols;
    symbols.reserve(cloud.size());
    for (const auto& point : cloud.points) {
        symbols.push_back(encode_pattern(ordinal_pattern(point), n));
    }
    return transition_graph(symbols);
}

Graph build_cgssn(const TimeSeries& x, int tau, int n, int b) {
    require(b >= 2, "build_cgssn: need at least 2 bins");
    double limit = 1;
    for (int j = 0; j < n; ++j) {
        limit *= b;
        require(limit <= 9.0e15, "build_cgssn: b^n exceeds the representable state range");
    }
    const PointCloud cloud = delay_embed(x, tau, n);
    const auto [lo_it, hi_it] = std::minmax_element(x.values.begin(), x.values.end());
    std::vector<long long> symbols;
    symbols.reserve(cloud.size());
    for (const auto& point : cloud.points) {
        symbols.push_back(coarse_state(point, *lo_it, *hi_it, b));
    }
    return transition_graph(symbols);
}

Graph build_knn(const TimeSeries& x, int tau, int n, int k) {
    require(k >= 1, "build_knn: k must be >= 1");
    const PointCloud cloud = delay_embed(x, tau, n);
    const int count = cloud.size();
    if (k >= count) {
        throw KTooLarge("build_knn: k = " + std::to_string(k) + " needs at least " +
                        std::to_string(k + 1) + " embedded points, got " + std::to_string(count));
    }

    std::map<std::pair<int, int>, double> edges;
    std::vector<std::pair<double, int>> dist(count);
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < count; ++j) {
            double sq = 0.0;
            for (int c = 0; c < n; ++c) {
                const double diff = cloud.points[i][c] - cloud.points[j][c];
                sq += diff * diff;
            }
            dist[j] = {sq, j};
        }
        dist[i] = {std::numeric_limits<double>::infinity(), i};  // exclude self
        // Ties resolve toward the smaller index via the pair's second member.
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        for (int m = 0; m < k; ++m) {
            const int j = dist[m].second;
            edges[{std::min(i, j), std::max(i, j)}] = 1.0;
        }
    }
    return finalize_edges(count, false, std::move(edges));
}

// -- Graph member/utility definitions ----------------------------------------

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (const GraphEdge& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

bool Graph::has_edge(int u, int v) const { return edge_weight(u, v) > 0.0; }

double Graph::edge_weight(int u, int v) const {
    if (u > v) std::swap(u, v);
    const auto it = std::lower_bound(
        edges.begin(), edges.end(), std::make_pair(u, v), [](const GraphEdge& e, const std::pair<int, int>& key) {
            return std::make_pair(e.u, e.v) < key;
        });
    if (it == edges.end() || it->u != u || it->v != v) return 0.0;
    return it->weight;
}

void validate(const Graph& g) {
    if (g.vertex_count < 0) throw Error("graph: negative vertex count");
    std::pair<int, int> prev{-1, -1};
    for (const GraphEdge& e : g.edges) {
        if (e.u < 0 || e.v >= g.vertex_count || e.u >= e.v) {
            throw Error("graph: malformed edge");
        }
        if (std::make_pair(e.u, e.v) <= prev) throw Error("graph: edges out of order");
        if (g.weighted && !(e.weight > 0.0)) throw Error("graph: nonpositive weight");
        prev = {e.u, e.v};
    }
    if (!g.vertex_labels.empty() &&
        static_cast<int>(g.vertex_labels.size()) != g.vertex_count) {
        throw Error("graph: vertex label count mismatch");
    }
}

std::string to_edge_list_text(const Graph& g) {
    std::string out;
    for (const GraphEdge& e : g.edges) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += ' ';
        if (e.weight == std::floor(e.weight) && std::abs(e.weight) < 1e15) {
            out += std::to_string(static_cast<long long>(e.weight));
        } else {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

} // namespace tsph
