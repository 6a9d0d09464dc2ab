#include "tsph/persistence.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace tsph {

namespace {

struct FiltrationEdge {
    double value;
    int u;  // u < v
    int v;
};

bool edge_order(const FiltrationEdge& a, const FiltrationEdge& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

/// Union-find keeping the smallest root as representative, so the class whose
/// root has the larger index is the one that dies at a merge.
struct MinRootUnionFind {
    std::vector<int> parent;

    explicit MinRootUnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        int root = v;
        while (parent[root] != root) root = parent[root];
        while (parent[v] != root) {
            const int next = parent[v];
            parent[v] = root;
            v = next;
        }
        return root;
    }
    // Returns false when already connected.
    bool merge(int a, int b) {
        const int ra = find(a);
        const int rb = find(b);
        if (ra == rb) return false;
        parent[std::max(ra, rb)] = std::min(ra, rb);
        return true;
    }
};

void sort_pairs(PersistenceDiagram& dgm) {
    std::sort(dgm.pairs.begin(), dgm.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
}

// Symmetric difference of two ascending index lists.
void xor_into(std::vector<int>& column, const std::vector<int>& other, std::vector<int>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                  std::back_inserter(scratch));
    column.swap(scratch);
}

} // namespace

std::pair<PersistenceDiagram, PersistenceDiagram> persist(const DissimilarityMatrix& d) {
    validate(d);
    const int n = d.size;
    if (n < 1) throw std::invalid_argument("persist: matrix must have size >= 1");

    std::vector<FiltrationEdge> edges;
    edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double value = d.at(u, v);
            if (std::isfinite(value)) edges.push_back({value, u, v});
        }
    }
    std::sort(edges.begin(), edges.end(), edge_order);
    const int edge_count = static_cast<int>(edges.size());

    // Filtration index of each edge, -1 when absent (infinite entry).
    std::vector<int> edge_index(static_cast<size_t>(n) * n, -1);
    for (int q = 0; q < edge_count; ++q) {
        edge_index[static_cast<size_t>(edges[q].u) * n + edges[q].v] = q;
        edge_index[static_cast<size_t>(edges[q].v) * n + edges[q].u] = q;
    }

    PersistenceDiagram dgm0{0, {}};
    PersistenceDiagram dgm1{1, {}};

    // Dimension 0: elder rule over the sorted edges.
    MinRootUnionFind components(n);
    std::vector<bool> positive(edge_count, false);
    int positive_count = 0;
    for (int q = 0; q < edge_count; ++q) {
        if (components.merge(edges[q].u, edges[q].v)) {
            if (edges[q].value > 0.0) dgm0.pairs.push_back({0.0, edges[q].value});
        } else {
            positive[q] = true;  // closes a cycle: dimension-1 birth candidate
            ++positive_count;
        }
    }
    int component_count = 0;
    for (int v = 0; v < n; ++v) {
        if (components.find(v) == v) ++component_count;
    }
    for (int c = 0; c < component_count; ++c) dgm0.pairs.push_back({0.0, kInfDist});

    // Dimension 1: reduce the triangle boundary matrix. Triangles stream in
    // filtration order grouped by their latest edge, so no global triangle
    // sort is needed; within a group the third vertex ascends.
    std::vector<int> pivot_owner(edge_count, -1);
    std::vector<std::vector<int>> stored_columns;
    std::vector<int> column;
    std::vector<int> scratch;
    int paired = 0;
    for (int q = 0; q < edge_count && paired < positive_count; ++q) {
        const int u = edges[q].u;
        const int v = edges[q].v;
        const double death = edges[q].value;
        const int* row_u = &edge_index[static_cast<size_t>(u) * n];
        const int* row_v = &edge_index[static_cast<size_t>(v) * n];
        for (int w = 0; w < n && paired < positive_count; ++w) {
            const int uw = row_u[w];
            const int vw = row_v[w];
            if (uw < 0 || vw < 0 || uw >= q || vw >= q) continue;

            column.clear();
            column.push_back(std::min(uw, vw));
            column.push_back(std::max(uw, vw));
            column.push_back(q);
            while (!column.empty()) {
                const int low = column.back();
                const int owner = pivot_owner[low];
                if (owner < 0) {
                    pivot_owner[low] = static_cast<int>(stored_columns.size());
                    stored_columns.push_back(column);
                    ++paired;
                    assert(positive[low]);
                    const double birth = edges[low].value;
                    if (birth < death) dgm1.pairs.push_back({birth, death});
                    break;
                }
                xor_into(column, stored_columns[owner], scratch);
            }
        }
    }
    // Positive edges never killed by a triangle are essential cycles.
    for (int q = 0; q < edge_count; ++q) {
        if (positive[q] && pivot_owner[q] < 0) dgm1.pairs.push_back({edges[q].value, kInfDist});
    }

    sort_pairs(dgm0);
    sort_pairs(dgm1);
    return {std::move(dgm0), std::move(dgm1)};
}

std::pair<int, int> betti_oracle(const DissimilarityMatrix& d, double eps) {
    validate(d);
    const int n = d.size;
    if (n > 12) throw TooLarge("betti_oracle: only intended for matrices up to 12x12");

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (d.at(u, v) <= eps) edges.push_back({u, v});
        }
    }
    const int edge_count = static_cast<int>(edges.size());

    // rank of d1 over Z/2: columns are vertex-pair indicators.
    std::vector<std::uint64_t> vertex_pivots;
    int rank_d1 = 0;
    for (const auto& [u, v] : edges) {
        std::uint64_t col = (1ULL << u) | (1ULL << v);
        for (const std::uint64_t p : vertex_pivots) {
            const std::uint64_t high = 1ULL << (63 - std::countl_zero(p));
            if (col & high) col ^= p;
        }
        if (col) {
            vertex_pivots.push_back(col);
            ++rank_d1;
        }
    }

    // rank of d2: columns are edge triples of the eps-cliques of size 3.
    std::vector<int> edge_id(static_cast<size_t>(n) * n, -1);
    for (int q = 0; q < edge_count; ++q) {
        edge_id[static_cast<size_t>(edges[q].first) * n + edges[q].second] = q;
        edge_id[static_cast<size_t>(edges[q].second) * n + edges[q].first] = q;
    }
    std::vector<std::pair<int, std::bitset<128>>> edge_pivots;  // (leading bit, column)
    const auto leading_bit = [](const std::bitset<128>& bits) {
        for (int bit = 127; bit >= 0; --bit) {
            if (bits[bit]) return bit;
        }
        return -1;
    };
    int rank_d2 = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (d.at(a, b) > eps) continue;
            for (int c = b + 1; c < n; ++c) {
                if (d.at(a, c) > eps || d.at(b, c) > eps) continue;
                std::bitset<128> col;
                col.set(edge_id[static_cast<size_t>(a) * n + b]);
                col.set(edge_id[static_cast<size_t>(a) * n + c]);
                col.set(edge_id[static_cast<size_t>(b) * n + c]);
                for (const auto& [low, p] : edge_pivots) {
                    if (col[low]) col ^= p;
                }
                if (col.any()) {
                    edge_pivots.emplace_back(leading_bit(col), col);
                    ++rank_d2;
                }
            }
        }
    }

    const int beta0 = n - rank_d1;
    const int beta1 = (edge_count - rank_d1) - rank_d2;
    return {beta0, beta1};
}

namespace {

double tent(const PersistencePair& p, double t) {
    if (t <= p.birth || t >= p.death) return 0.0;
    return std::min(t - p.birth, p.death - t);
}

double kth_landscape(const std::vector<PersistencePair>& pairs, int k, double t) {
    std::vector<double> values;
    values.reserve(pairs.size());
    for (const PersistencePair& p : pairs) values.push_back(tent(p, t));
    if (static_cast<int>(values.size()) < k) return 0.0;
    std::nth_element(values.begin(), values.begin() + (k - 1), values.end(), std::greater<>());
    return values[k - 1];
}

// Every kink of every landscape layer lies among the tent corners and the
// pairwise ascent/descent crossings.
void collect_breakpoints(const PersistenceDiagram& dgm, std::vector<double>& out) {
    const auto& pairs = dgm.pairs;
    for (const PersistencePair& p : pairs) {
        out.push_back(p.birth);
        out.push_back(p.death);
        out.push_back(0.5 * (p.birth + p.death));
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
        for (size_t j = 0; j < pairs.size(); ++j) {
            if (i == j) continue;
            out.push_back(0.5 * (pairs[i].birth + pairs[j].death));
        }
    }
}

} // namespace

double landscape_stability_check(const DissimilarityMatrix& d,
                                 const DissimilarityMatrix& d_prime) {
    if (d.size != d_prime.size) {
        throw SizeMismatch("landscape_stability_check: matrices differ in size");
    }
    for (double v : d.entries) {
        if (!std::isfinite(v)) throw std::invalid_argument("landscape_stability_check: non-finite entry");
    }
    for (double v : d_prime.entries) {
        if (!std::isfinite(v)) throw std::invalid_argument("landscape_stability_check: non-finite entry");
    }

    const PersistenceDiagram dgm = persist(d).second;
    const PersistenceDiagram dgm_prime = persist(d_prime).second;

    std::vector<double> points;
    collect_breakpoints(dgm, points);
    collect_breakpoints(dgm_prime, points);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    double sup = 0.0;
    for (int k = 1; k <= 3; ++k) {
        for (const double t : points) {
            const double gap =
                std::abs(kth_landscape(dgm.pairs, k, t) - kth_landscape(dgm_prime.pairs, k, t));
            sup = std::max(sup, gap);
        }
    }
    return sup;
}

std::string to_json(const PersistenceDiagram& dgm) {
    nlohmann::json j;
    j["dim"] = dgm.dimension;
    nlohmann::json pairs = nlohmann::json::array();
    for (const PersistencePair& p : dgm.pairs) {
        nlohmann::json pair = nlohmann::json::array();
        pair.push_back(p.birth);
        if (std::isinf(p.death)) {
            pair.push_back("inf");
        } else {
            pair.push_back(p.death);
        }
        pairs.push_back(pair);
    }
    j["pairs"] = pairs;
    return j.dump();
}

} // namespace tsph
