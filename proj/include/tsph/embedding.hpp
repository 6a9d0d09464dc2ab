#pragma once

#include <vector>

#include "tsph/time_series.hpp"

namespace tsph {

/// Delay-coordinate reconstruction of a scalar series: N rows of
/// (x_i, x_{i+tau}, ..., x_{i+(n-1)tau}) with N = L - (n-1)*tau.
struct PointCloud {
    std::vector<std::vector<double>> points;
    int dim = 0;
    int delay = 0;

    int size() const { return static_cast<int>(points.size()); }
};

enum class ParamMethod { MiFnn, MsPE };

struct EmbeddingParams {
    int tau = 1;
    int n = 2;
    ParamMethod method = ParamMethod::MiFnn;
};

/// Which selection heuristics select_shared_params runs per series.
/// Opn uses MsPE for both tau and n; CgssnKnn uses MI for tau, FNN for n.
enum class ParamFamily { Opn, CgssnKnn };

PointCloud delay_embed(const TimeSeries& x, int tau, int n);

// -- delay selection ---------------------------------------------------------

/// Histogram mutual information between x_i and x_{i+tau}, for tau = 1..tau_max.
/// ceil(sqrt(L)) equal-width bins over the series min-max range; empty joint
/// bins contribute nothing.
std::vector<double> mutual_information_curve(const TimeSeries& x, int tau_max);

/// First strict interior local minimum of the curve (values indexed tau = 1..);
/// falls back to the argmin (smallest tau on ties) when no local minimum exists.
int select_delay_mi_from_curve(const std::vector<double>& curve);

int select_delay_mi(const TimeSeries& x, int tau_max);

/// Normalized permutation entropy h = H / log2(n!) of the ordinal patterns of
/// the (tau, n) delay embedding.
double normalized_permutation_entropy(const TimeSeries& x, int tau, int n);

/// h(tau) for tau = 1..tau_max at probe dimension n_probe.
std::vector<double> mspe_delay_curve(const TimeSeries& x, int n_probe, int tau_max);

/// Smallest tau whose entropy reaches factor * max(curve).
int select_delay_mspe_from_curve(const std::vector<double>& curve, double factor = 0.95);

int select_delay_mspe(const TimeSeries& x, int n_probe, int tau_max);

// -- dimension selection -----------------------------------------------------

/// False-nearest-neighbor fraction when embedding at dimension n with delay tau.
/// Neighbors exclude self; exact duplicates (zero neighbor distance) are skipped.
double fnn_fraction(const TimeSeries& x, int tau, int n, double r_tol = 15.0);

/// Fractions for n = 2..n_max.
std::vector<double> fnn_fraction_curve(const TimeSeries& x, int tau, int n_max,
                                       double r_tol = 15.0);

/// Smallest n in [2, n_max] with fraction < frac_threshold; n_max if never attained.
int select_dim_fnn(const TimeSeries& x, int tau, int n_max = 7, double r_tol = 15.0,
                   double frac_threshold = 0.01);

/// Argmax of h(n) over [n_min, n_max] at fixed tau, ties toward smaller n.
int select_dim_mspe(const TimeSeries& x, int tau, int n_min = 3, int n_max = 7);

// -- dataset-level selection -------------------------------------------------

/// Lower median: element at index (count-1)/2 of the sorted values.
int lower_median(std::vector<int> values);

/// Per-series parameters on the first min(subset_size, |dataset|) series,
/// combined by component-wise lower median.
EmbeddingParams select_shared_params(const std::vector<TimeSeries>& dataset,
                                     ParamFamily family, int subset_size = 30);

} // namespace tsph
