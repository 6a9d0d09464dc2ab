#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsph/embedding.hpp"
#include "tsph/features.hpp"
#include "tsph/time_series.hpp"

namespace tsph {

enum class GraphType { NVG, HVG, OPN, CGSSN, KNN };
enum class DistanceType { ShortestPath, HopOnOptimal, ReciprocalPath, Diffusion };

bool graph_is_weighted(GraphType g);
std::string to_string(GraphType g);
std::string to_string(DistanceType d);

/// CGSSN state-space cap: n is reduced before b until bins^n fits.
inline constexpr long long kStateSpaceCap = 4096;

struct PipelineConfig {
    GraphType graph_type = GraphType::CGSSN;
    DistanceType distance_type = DistanceType::Diffusion;
    std::optional<int> tau;          // embedding overrides; selected per dataset when absent
    std::optional<int> n;
    int bins = 8;                    // CGSSN
    int k = 5;                       // k-NN
    bool normalize = false;
    std::optional<int> diffusion_t;  // size-adaptive default when absent
    std::uint64_t seed = 42;
};

/// Rejects the weight-based distances on unweighted graphs (NVG/HVG/KNN admit
/// shortest-path and diffusion only) plus out-of-range parameters.
void validate(const PipelineConfig& cfg);

struct Dataset {
    std::vector<TimeSeries> series;
    std::string name;

    int size() const { return static_cast<int>(series.size()); }
};

/// One TimeSeries per nonempty line: label, then tab-separated sample values.
Dataset load_ucr_tsv(const std::string& path);

/// Additive zero-mean Gaussian noise at the requested SNR (dB); +inf returns
/// the input untouched. Deterministic for a fixed seed.
TimeSeries inject_noise(const TimeSeries& x, double snr_db, std::uint64_t seed);

/// Splittable per-series seed derivation.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t ordinal);

struct RunMetadata {
    int tau = 0;
    int n = 0;
    int bins = 0;
    int k = 0;
    int diffusion_t = 0;       // 0 when size-adaptive per series
    bool diffusion_t_auto = false;
};

struct PipelineResult {
    std::vector<FeatureVector> features;  // one row per series, input order
    std::vector<std::string> labels;
    RunMetadata meta;
};

/// Shared parameter selection (when the graph family needs it) followed by
/// graph -> matrix -> persistence -> features for every series. A failing
/// series aborts the run with its id in the error message.
PipelineResult run_pipeline(const Dataset& ds, const PipelineConfig& cfg);

struct EvalReport {
    std::vector<double> fold_f1;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
    std::vector<int> fold_assignment;  // per series
};

/// Stratified K-fold (seeded shuffle), per-fold z-scoring from training
/// statistics (zero-variance features pinned to 0), 1-nearest-neighbor
/// classification, macro-F1 per fold.
EvalReport evaluate_baseline(const std::vector<FeatureVector>& features,
                             const std::vector<std::string>& labels, int folds,
                             std::uint64_t seed);

struct AblationCell {
    GraphType graph;
    DistanceType distance;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
};

/// All 14 valid (graph, distance) combinations on one dataset.
std::vector<AblationCell> ablation_matrix(const Dataset& ds, const PipelineConfig& base_cfg,
                                          int folds = 5);

struct NoisePoint {
    double snr_db = 0.0;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
};

/// Embedding parameters are fixed on the clean data, then the full pipeline
/// and evaluation run once per SNR, in the order given.
std::vector<NoisePoint> noise_sweep(const Dataset& ds, const PipelineConfig& cfg,
                                    const std::vector<double>& snrs_db, int folds = 5);

} // namespace tsph
