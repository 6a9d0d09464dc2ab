#pragma once

#include <string>
#include <vector>

#include "tsph/persistence.hpp"

namespace tsph {

inline constexpr int kLandscapeLayers = 3;
inline constexpr int kLandscapeGridSize = 200;
inline constexpr int kScalarSummaryCount = 9;
inline constexpr int kFeatureLength = 2 * kLandscapeGridSize + 2 * kScalarSummaryCount;  // 418

struct LandscapeGrid {
    std::vector<double> grid;    // strictly increasing sample points
    std::vector<double> values;  // >= 0, same length as grid
};

/// The nine scalar diagram summaries, in feature-vector order.
struct ScalarSummaries {
    double entropy = 0.0;
    double amplitude = 0.0;
    double total_persistence = 0.0;
    int cardinality = 0;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double f4 = 0.0;
    double landscape_norm = 0.0;
};

/// [H0 mean landscape (200) | H1 mean landscape (200) | H0 summaries (9) | H1 summaries (9)]
using FeatureVector = std::vector<double>;

/// k-th largest tent value at t; 0 when fewer than k tents are positive there.
/// Requires a finitized diagram and k >= 1.
double landscape_value(const PersistenceDiagram& dgm, int k, double t);

/// Pointwise mean of the first J landscape layers on a uniform M-point grid
/// spanning [min birth, max death] of the diagram. An empty diagram (or one
/// with only zero-length pairs) yields an all-zero grid over [0, 1].
LandscapeGrid mean_landscape(const PersistenceDiagram& dgm, int layers = kLandscapeLayers,
                             int grid_size = kLandscapeGridSize);

/// Shannon entropy of the normalized lifetime distribution (natural log);
/// 0 for empty diagrams and for zero total lifetime.
double persistent_entropy(const PersistenceDiagram& dgm);

/// All nine summaries. The L1 norm of lambda_1 is integrated exactly from its
/// piecewise-linear breakpoints (the closed form assumes disjoint tents).
/// Zero-length pairs count toward cardinality only.
ScalarSummaries scalar_summaries(const PersistenceDiagram& dgm);

/// Replace every +inf death by cap. Pairs that collapse to birth == death stay
/// in the multiset (cardinality counts them) but are ignored by the landscape
/// and summary computations.
PersistenceDiagram finitize(const PersistenceDiagram& dgm, double cap);

/// Fixed 418-entry feature vector; cap is the max finite entry of the source
/// dissimilarity matrix. Summary order per dimension:
/// entropy, amplitude, total, cardinality, f1, f2, f3, f4, norm.
FeatureVector assemble_features(const PersistenceDiagram& dgm0,
                                const PersistenceDiagram& dgm1, double cap);

/// Column names h0_land_000 ... h1_norm.
std::vector<std::string> feature_header();

/// CSV with the 418-column header, one row per feature vector,
/// round-trippable precision.
std::string features_to_csv(const std::vector<FeatureVector>& rows);

} // namespace tsph
