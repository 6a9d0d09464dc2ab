#include "tsph/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace tsph {

namespace {

double tent(const PersistencePair& p, double t) {
    if (t <= p.birth || t >= p.death) return 0.0;
    return std::min(t - p.birth, p.death - t);
}

// Pairs that actually carry mass; zero-length pairs only affect cardinality.
std::vector<PersistencePair> live_pairs(const PersistenceDiagram& dgm) {
    std::vector<PersistencePair> out;
    out.reserve(dgm.pairs.size());
    for (const PersistencePair& p : dgm.pairs) {
        if (!std::isfinite(p.death)) {
            throw std::invalid_argument("landscape: diagram has an infinite death; finitize first");
        }
        if (p.death > p.birth) out.push_back(p);
    }
    return out;
}

double kth_largest_tent(const std::vector<PersistencePair>& pairs, int k, double t) {
    if (static_cast<int>(pairs.size()) < k) return 0.0;
    std::vector<double> values;
    values.reserve(pairs.size());
    for (const PersistencePair& p : pairs) values.push_back(tent(p, t));
    std::nth_element(values.begin(), values.begin() + (k - 1), values.end(), std::greater<>());
    return values[k - 1];
}

// Exact L1 norm of lambda_1: integrate the piecewise-linear upper envelope of
// the tents between consecutive breakpoints (corners and ascent/descent
// crossings).
double first_landscape_norm(const std::vector<PersistencePair>& pairs) {
    if (pairs.empty()) return 0.0;
    std::vector<double> knots;
    for (const PersistencePair& p : pairs) {
        knots.push_back(p.birth);
        knots.push_back(p.death);
        knots.push_back(0.5 * (p.birth + p.death));
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
        for (size_t j = 0; j < pairs.size(); ++j) {
            if (i != j) knots.push_back(0.5 * (pairs[i].birth + pairs[j].death));
        }
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    double area = 0.0;
    double prev_t = knots.front();
    double prev_val = kth_largest_tent(pairs, 1, prev_t);
    for (size_t i = 1; i < knots.size(); ++i) {
        const double t = knots[i];
        const double val = kth_largest_tent(pairs, 1, t);
        area += 0.5 * (prev_val + val) * (t - prev_t);
        prev_t = t;
        prev_val = val;
    }
    return area;
}

} // namespace

double landscape_value(const PersistenceDiagram& dgm, int k, double t) {
    if (k < 1) throw std::invalid_argument("landscape_value: k must be >= 1");
    return kth_largest_tent(live_pairs(dgm), k, t);
}

LandscapeGrid mean_landscape(const PersistenceDiagram& dgm, int layers, int grid_size) {
    if (layers < 1) throw std::invalid_argument("mean_landscape: layers must be >= 1");
    if (grid_size < 2) throw std::invalid_argument("mean_landscape: grid needs >= 2 points");

    const std::vector<PersistencePair> pairs = live_pairs(dgm);
    double lo = 0.0;
    double hi = 1.0;
    if (!pairs.empty()) {
        lo = pairs.front().birth;
        hi = pairs.front().death;
        for (const PersistencePair& p : pairs) {
            lo = std::min(lo, p.birth);
            hi = std::max(hi, p.death);
        }
    }

    LandscapeGrid grid;
    grid.grid.resize(grid_size);
    grid.values.resize(grid_size, 0.0);
    const double step = (hi - lo) / (grid_size - 1);
    for (int j = 0; j < grid_size; ++j) grid.grid[j] = lo + step * j;
    if (pairs.empty()) return grid;

    for (int j = 0; j < grid_size; ++j) {
        double acc = 0.0;
        for (int k = 1; k <= layers; ++k) acc += kth_largest_tent(pairs, k, grid.grid[j]);
        grid.values[j] = acc / layers;
    }
    return grid;
}

double persistent_entropy(const PersistenceDiagram& dgm) {
    const std::vector<PersistencePair> pairs = live_pairs(dgm);
    double total = 0.0;
    for (const PersistencePair& p : pairs) total += p.lifetime();
    if (total <= 0.0) return 0.0;
    double entropy = 0.0;
    for (const PersistencePair& p : pairs) {
        const double ratio = p.lifetime() / total;
        entropy -= ratio * std::log(ratio);
    }
    return entropy;
}

ScalarSummaries scalar_summaries(const PersistenceDiagram& dgm) {
    const std::vector<PersistencePair> pairs = live_pairs(dgm);
    ScalarSummaries s;
    s.cardinality = dgm.size();
    if (pairs.empty()) return s;

    double death_max = pairs.front().death;
    for (const PersistencePair& p : pairs) death_max = std::max(death_max, p.death);
    for (const PersistencePair& p : pairs) {
        const double life = p.lifetime();
        const double life2 = life * life;
        const double from_top = death_max - p.death;
        s.amplitude = std::max(s.amplitude, life);
        s.total_persistence += life;
        s.f1 += p.birth * life;
        s.f2 += from_top * life;
        s.f3 += p.birth * p.birth * life2 * life2;
        s.f4 += from_top * from_top * life2 * life2;
    }
    s.entropy = persistent_entropy(dgm);
    s.landscape_norm = first_landscape_norm(pairs);
    return s;
}

PersistenceDiagram finitize(const PersistenceDiagram& dgm, double cap) {
    if (!std::isfinite(cap)) throw CapNotFinite("finitize: cap must be finite");
    PersistenceDiagram out{dgm.dimension, {}};
    out.pairs.reserve(dgm.pairs.size());
    for (const PersistencePair& p : dgm.pairs) {
        out.pairs.push_back({p.birth, std::isfinite(p.death) ? p.death : cap});
    }
    return out;
}

FeatureVector assemble_features(const PersistenceDiagram& dgm0,
                                const PersistenceDiagram& dgm1, double cap) {
    const PersistenceDiagram fin0 = finitize(dgm0, cap);
    const PersistenceDiagram fin1 = finitize(dgm1, cap);

    FeatureVector features;
    features.reserve(kFeatureLength);
    const LandscapeGrid land0 = mean_landscape(fin0);
    const LandscapeGrid land1 = mean_landscape(fin1);
    features.insert(features.end(), land0.values.begin(), land0.values.end());
    features.insert(features.end(), land1.values.begin(), land1.values.end());
    for (const PersistenceDiagram* dgm : {&fin0, &fin1}) {
        const ScalarSummaries s = scalar_summaries(*dgm);
        features.push_back(s.entropy);
        features.push_back(s.amplitude);
        features.push_back(s.total_persistence);
        features.push_back(static_cast<double>(s.cardinality));
        features.push_back(s.f1);
        features.push_back(s.f2);
        features.push_back(s.f3);
        features.push_back(s.f4);
        features.push_back(s.landscape_norm);
    }
    return features;
}

std::vector<std::string> feature_header() {
    std::vector<std::string> names;
    names.reserve(kFeatureLength);
    char buf[32];
    for (int dim = 0; dim <= 1; ++dim) {
        for (int j = 0; j < kLandscapeGridSize; ++j) {
            std::snprintf(buf, sizeof(buf), "h%d_land_%03d", dim, j);
            names.push_back(buf);
        }
    }
    for (int dim = 0; dim <= 1; ++dim) {
        const std::string prefix = "h" + std::to_string(dim) + "_";
        for (const char* stat : {"entropy", "amplitude", "total", "cardinality",
                                 "f1", "f2", "f3", "f4", "norm"}) {
            names.push_back(prefix + stat);
        }
    }
    return names;
}

std::string features_to_csv(const std::vector<FeatureVector>& rows) {
    std::string out;
    const std::vector<std::string> header = feature_header();
    for (size_t i = 0; i < header.size(); ++i) {
        if (i > 0) out += ',';
        out += header[i];
    }
    out += '\n';
    char buf[40];
    for (const FeatureVector& row : rows) {
        if (static_cast<int>(row.size()) != kFeatureLength) {
            throw SizeMismatch("features_to_csv: row is not a 418-entry feature vector");
        }
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

} // namespace tsph
