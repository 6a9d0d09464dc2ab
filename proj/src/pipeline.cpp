#include "tsph/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tsph/graph_metrics.hpp"
#include "tsph/networks.hpp"
#include "tsph/persistence.hpp"

namespace tsph {

bool graph_is_weighted(GraphType g) {
    return g == GraphType::OPN || g == GraphType::CGSSN;
}

std::string to_string(GraphType g) {
    switch (g) {
        case GraphType::NVG: return "nvg";
        case GraphType::HVG: return "hvg";
        case GraphType::OPN: return "opn";
        case GraphType::CGSSN: return "cgssn";
        case GraphType::KNN: return "knn";
    }
    return "?";
}

std::string to_string(DistanceType d) {
    switch (d) {
        case DistanceType::ShortestPath: return "sp";
        case DistanceType::HopOnOptimal: return "sp-hop";
        case DistanceType::ReciprocalPath: return "sp-recip";
        case DistanceType::Diffusion: return "diffusion";
    }
    return "?";
}

void validate(const PipelineConfig& cfg) {
    const bool weighted = graph_is_weighted(cfg.graph_type);
    const bool weight_based = cfg.distance_type == DistanceType::HopOnOptimal ||
                              cfg.distance_type == DistanceType::ReciprocalPath;
    if (!weighted && weight_based) {
        throw ConfigError("config: distance '" + to_string(cfg.distance_type) +
                          "' needs edge weights, but graph '" + to_string(cfg.graph_type) +
                          "' is unweighted");
    }
    if (cfg.tau && *cfg.tau < 1) throw ConfigError("config: tau must be >= 1");
    if (cfg.n && *cfg.n < 2) throw ConfigError("config: n must be >= 2");
    if (cfg.bins < 2) throw ConfigError("config: bins must be >= 2");
    if (cfg.k < 1) throw ConfigError("config: k must be >= 1");
    if (cfg.diffusion_t && *cfg.diffusion_t < 1) throw ConfigError("config: t must be >= 1");
}

Dataset load_ucr_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ParseError(path + ": cannot open file");

    Dataset ds;
    {
        // dataset name = file stem
        size_t slash = path.find_last_of("/\\");
        std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
        const size_t dot = stem.find_last_of('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        ds.name = stem;
    }

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        TimeSeries series;
        std::stringstream fields(line);
        std::string token;
        bool first = true;
        while (std::getline(fields, token, '\t')) {
            if (first) {
                series.label = token;
                first = false;
                continue;
            }
            if (token.empty()) continue;
            char* end = nullptr;
            const double value = std::strtod(token.c_str(), &end);
            if (end == token.c_str() || *end != '\0') {
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": malformed value '" + token + "'");
            }
            if (!std::isfinite(value)) {
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": non-finite value '" + token + "'");
            }
            series.values.push_back(value);
        }
        if (series.values.empty()) {
            throw ParseError(path + ": line " + std::to_string(line_no) + ": no sample values");
        }
        series.id = std::to_string(static_cast<int>(ds.series.size()));
        ds.series.push_back(std::move(series));
    }
    if (ds.series.empty()) throw EmptyFile(path + ": no series found");
    return ds;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t ordinal) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (ordinal + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TimeSeries inject_noise(const TimeSeries& x, double snr_db, std::uint64_t seed) {
    validate(x);
    if (std::isinf(snr_db) && snr_db > 0.0) return x;
    if (!std::isfinite(snr_db)) throw std::invalid_argument("inject_noise: bad SNR");

    const int len = x.length();
    double mean = 0.0;
    for (double v : x.values) mean += v;
    mean /= len;
    double signal_power = 0.0;
    for (double v : x.values) signal_power += (v - mean) * (v - mean);
    signal_power /= len;
    if (signal_power <= 0.0) {
        throw ZeroPowerSignal("inject_noise: constant series has no signal power");
    }

    const double noise_sd = std::sqrt(signal_power * std::pow(10.0, -snr_db / 10.0));
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0.0, noise_sd);
    TimeSeries out = x;
    for (double& v : out.values) v += noise(gen);
    return out;
}

namespace {

struct ResolvedParams {
    int tau = 1;
    int n = 2;
};

// Fills cfg.tau/cfg.n from shared selection when absent; applies the CGSSN
// state-space cap to (n, bins).
ResolvedParams resolve_embedding_params(const Dataset& ds, PipelineConfig& cfg) {
    ResolvedParams params;
    if (cfg.tau && cfg.n) {
        params.tau = *cfg.tau;
        params.n = *cfg.n;
    } else {
        const ParamFamily family =
            cfg.graph_type == GraphType::OPN ? ParamFamily::Opn : ParamFamily::CgssnKnn;
        const EmbeddingParams selected = select_shared_params(ds.series, family);
        params.tau = cfg.tau.value_or(selected.tau);
        params.n = cfg.n.value_or(selected.n);
    }
    if (cfg.graph_type == GraphType::CGSSN) {
        // State-space cap: shrink n first, then b.
        const auto states = [](int b, int n) {
            long long s = 1;
            for (int j = 0; j < n; ++j) {
                s *= b;
                if (s > kStateSpaceCap) return s;
            }
            return s;
        };
        while (states(cfg.bins, params.n) > kStateSpaceCap && params.n > 2) --params.n;
        while (states(cfg.bins, params.n) > kStateSpaceCap && cfg.bins > 2) --cfg.bins;
    }
    return params;
}

Graph build_graph(const TimeSeries& x, const PipelineConfig& cfg, const ResolvedParams& p) {
    switch (cfg.graph_type) {
        case GraphType::NVG: return build_nvg(x);
        case GraphType::HVG: return build_hvg(x);
        case GraphType::OPN: return build_opn(x, p.tau, p.n);
        case GraphType::CGSSN: return build_cgssn(x, p.tau, p.n, cfg.bins);
        case GraphType::KNN: return build_knn(x, p.tau, p.n, cfg.k);
    }
    throw ConfigError("config: unknown graph type");
}

DissimilarityMatrix build_matrix(const Graph& g, const PipelineConfig& cfg) {
    DissimilarityMatrix d;
    switch (cfg.distance_type) {
        case DistanceType::ShortestPath: d = dist_shortest_unweighted(g); break;
        case DistanceType::HopOnOptimal: d = dist_hop_on_optimal(g); break;
        case DistanceType::ReciprocalPath: d = dist_reciprocal_shortest(g); break;
        case DistanceType::Diffusion: {
            DiffusionConfig walk;
            walk.t = cfg.diffusion_t.value_or(default_walk_length(g));
            d = dist_diffusion(g, walk);
            break;
        }
    }
    if (cfg.normalize) d = normalize(d);
    return d;
}

} // namespace

PipelineResult run_pipeline(const Dataset& ds, const PipelineConfig& cfg) {
    validate(cfg);
    if (ds.series.empty()) throw EmptyDataset("run_pipeline: dataset is empty");

    PipelineConfig effective = cfg;
    ResolvedParams params;
    const bool needs_embedding = cfg.graph_type == GraphType::OPN ||
                                 cfg.graph_type == GraphType::CGSSN ||
                                 cfg.graph_type == GraphType::KNN;
    if (needs_embedding) params = resolve_embedding_params(ds, effective);

    PipelineResult result;
    result.meta.tau = needs_embedding ? params.tau : 0;
    result.meta.n = needs_embedding ? params.n : 0;
    result.meta.bins = cfg.graph_type == GraphType::CGSSN ? effective.bins : 0;
    result.meta.k = cfg.graph_type == GraphType::KNN ? effective.k : 0;
    result.meta.diffusion_t_auto = effective.distance_type == DistanceType::Diffusion &&
                                   !effective.diffusion_t.has_value();
    result.meta.diffusion_t = effective.diffusion_t.value_or(0);

    result.features.reserve(ds.series.size());
    result.labels.reserve(ds.series.size());
    for (size_t i = 0; i < ds.series.size(); ++i) {
        const TimeSeries& x = ds.series[i];
        try {
            const Graph g = build_graph(x, effective, params);
            const DissimilarityMatrix d = build_matrix(g, effective);
            const auto [dgm0, dgm1] = persist(d);
            result.features.push_back(assemble_features(dgm0, dgm1, max_finite_entry(d)));
        } catch (const std::exception& e) {
            const std::string name = x.id.empty() ? std::to_string(i) : x.id;
            throw PipelineError("series " + name + ": " + e.what());
        }
        result.labels.push_back(x.label);
    }
    return result;
}

namespace {

double macro_f1(const std::vector<std::string>& truth, const std::vector<std::string>& predicted,
                const std::vector<std::string>& classes) {
    double f1_sum = 0.0;
    for (const std::string& cls : classes) {
        int tp = 0, fp = 0, fn = 0;
        for (size_t i = 0; i < truth.size(); ++i) {
            const bool is_true = truth[i] == cls;
            const bool is_pred = predicted[i] == cls;
            if (is_true && is_pred) ++tp;
            if (!is_true && is_pred) ++fp;
            if (is_true && !is_pred) ++fn;
        }
        const int denom = 2 * tp + fp + fn;
        f1_sum += denom == 0 ? 0.0 : 2.0 * tp / denom;
    }
    return f1_sum / classes.size();
}

} // namespace

EvalReport evaluate_baseline(const std::vector<FeatureVector>& features,
                             const std::vector<std::string>& labels, int folds,
                             std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("evaluate_baseline: need at least 2 folds");
    if (features.size() != labels.size()) {
        throw SizeMismatch("evaluate_baseline: features/labels length mismatch");
    }
    const int count = static_cast<int>(features.size());
    if (count == 0) throw EmptyDataset("evaluate_baseline: nothing to evaluate");
    const int width = static_cast<int>(features.front().size());

    // Stratified fold assignment: shuffle each class, deal round-robin.
    std::map<std::string, std::vector<int>> by_class;
    for (int i = 0; i < count; ++i) by_class[labels[i]].push_back(i);
    std::vector<std::string> classes;
    for (const auto& [cls, members] : by_class) {
        if (static_cast<int>(members.size()) < folds) {
            throw ClassTooSmall("evaluate_baseline: class '" + cls + "' has " +
                                std::to_string(members.size()) + " members, needs >= " +
                                std::to_string(folds));
        }
        classes.push_back(cls);
    }
    std::mt19937_64 gen(seed);
    std::vector<int> fold_of(count, -1);
    for (const std::string& cls : classes) {
        std::vector<int>& members = by_class[cls];
        std::shuffle(members.begin(), members.end(), gen);
        for (size_t pos = 0; pos < members.size(); ++pos) {
            fold_of[members[pos]] = static_cast<int>(pos % folds);
        }
    }

    EvalReport report;
    report.fold_assignment = fold_of;
    report.fold_f1.resize(folds);
    std::vector<double> mean(width), sd(width);
    for (int fold = 0; fold < folds; ++fold) {
        std::vector<int> train, test;
        for (int i = 0; i < count; ++i) (fold_of[i] == fold ? test : train).push_back(i);

        // z-scoring from training statistics; zero-variance features stay 0.
        std::fill(mean.begin(), mean.end(), 0.0);
        std::fill(sd.begin(), sd.end(), 0.0);
        for (int i : train) {
            for (int f = 0; f < width; ++f) mean[f] += features[i][f];
        }
        for (int f = 0; f < width; ++f) mean[f] /= train.size();
        for (int i : train) {
            for (int f = 0; f < width; ++f) {
                const double centered = features[i][f] - mean[f];
                sd[f] += centered * centered;
            }
        }
        for (int f = 0; f < width; ++f) sd[f] = std::sqrt(sd[f] / train.size());

        const auto zscore = [&](int sample, int f) {
            return sd[f] > 0.0 ? (features[sample][f] - mean[f]) / sd[f] : 0.0;
        };

        std::vector<std::vector<double>> train_z(train.size(), std::vector<double>(width));
        for (size_t r = 0; r < train.size(); ++r) {
            for (int f = 0; f < width; ++f) train_z[r][f] = zscore(train[r], f);
        }

        std::vector<std::string> truth, predicted;
        truth.reserve(test.size());
        predicted.reserve(test.size());
        std::vector<double> probe(width);
        for (int i : test) {
            for (int f = 0; f < width; ++f) probe[f] = zscore(i, f);
            double best = kInfDist;
            int best_row = -1;
            for (size_t r = 0; r < train.size(); ++r) {
                double dist = 0.0;
                for (int f = 0; f < width; ++f) {
                    const double diff = probe[f] - train_z[r][f];
                    dist += diff * diff;
                    if (dist >= best) break;
                }
                if (dist < best) {  // strict: ties keep the earlier train row
                    best = dist;
                    best_row = static_cast<int>(r);
                }
            }
            truth.push_back(labels[i]);
            predicted.push_back(labels[train[best_row]]);
        }
        report.fold_f1[fold] = macro_f1(truth, predicted, classes);
    }

    for (double f1 : report.fold_f1) report.mean_f1 += f1;
    report.mean_f1 /= folds;
    double var = 0.0;
    for (double f1 : report.fold_f1) var += (f1 - report.mean_f1) * (f1 - report.mean_f1);
    report.std_f1 = std::sqrt(var / folds);
    return report;
}

std::vector<AblationCell> ablation_matrix(const Dataset& ds, const PipelineConfig& base_cfg,
                                          int folds) {
    static constexpr GraphType kGraphs[] = {GraphType::NVG, GraphType::HVG, GraphType::OPN,
                                            GraphType::CGSSN, GraphType::KNN};
    static constexpr DistanceType kDistances[] = {DistanceType::ShortestPath,
                                                  DistanceType::HopOnOptimal,
                                                  DistanceType::ReciprocalPath,
                                                  DistanceType::Diffusion};
    std::vector<AblationCell> cells;
    for (GraphType g : kGraphs) {
        for (DistanceType dist : kDistances) {
            if (!graph_is_weighted(g) && (dist == DistanceType::HopOnOptimal ||
                                          dist == DistanceType::ReciprocalPath)) {
                continue;
            }
            PipelineConfig cfg = base_cfg;
            cfg.graph_type = g;
            cfg.distance_type = dist;
            const PipelineResult run = run_pipeline(ds, cfg);
            const EvalReport report = evaluate_baseline(run.features, run.labels, folds, cfg.seed);
            cells.push_back({g, dist, report.mean_f1, report.std_f1});
        }
    }
    return cells;
}

std::vector<NoisePoint> noise_sweep(const Dataset& ds, const PipelineConfig& cfg,
                                    const std::vector<double>& snrs_db, int folds) {
    validate(cfg);
    if (snrs_db.empty()) throw std::invalid_argument("noise_sweep: no SNR levels given");
    if (ds.series.empty()) throw EmptyDataset("noise_sweep: dataset is empty");

    // Pin embedding parameters on the clean signal.
    PipelineConfig fixed = cfg;
    const bool needs_embedding = cfg.graph_type == GraphType::OPN ||
                                 cfg.graph_type == GraphType::CGSSN ||
                                 cfg.graph_type == GraphType::KNN;
    if (needs_embedding) {
        const ResolvedParams params = resolve_embedding_params(ds, fixed);
        fixed.tau = params.tau;
        fixed.n = params.n;
    }

    std::vector<NoisePoint> points;
    points.reserve(snrs_db.size());
    for (const double snr : snrs_db) {
        Dataset noisy;
        noisy.name = ds.name;
        noisy.series.reserve(ds.series.size());
        for (size_t i = 0; i < ds.series.size(); ++i) {
            if (std::isinf(snr) && snr > 0.0) {
                noisy.series.push_back(ds.series[i]);
            } else {
                noisy.series.push_back(inject_noise(ds.series[i], snr, mix_seed(fixed.seed, i)));
            }
        }
        const PipelineResult run = run_pipeline(noisy, fixed);
        const EvalReport report = evaluate_baseline(run.features, run.labels, folds, fixed.seed);
        points.push_back({snr, report.mean_f1, report.std_f1});
    }
    return points;
}

} // namespace tsph
