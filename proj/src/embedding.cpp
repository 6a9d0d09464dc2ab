#include "tsph/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tsph {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// log2(n!) for the MsPE normalization.
double log2_factorial(int n) {
    double acc = 0.0;
    for (int i = 2; i <= n; ++i) acc += std::log2(static_cast<double>(i));
    return acc;
}

int bin_index(double value, double lo, double width, int bins) {
    if (width <= 0.0) return 0;
    int idx = static_cast<int>((value - lo) / width);
    return std::clamp(idx, 0, bins - 1);
}

std::vector<int> ordinal_pattern_of(const std::vector<double>& window) {
    std::vector<int> order(window.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return window[a] < window[b]; });
    return order;
}

} // namespace

PointCloud delay_embed(const TimeSeries& x, int tau, int n) {
    validate(x);
    require(tau >= 1, "delay_embed: tau must be >= 1");
    require(n >= 2, "delay_embed: dimension must be >= 2");
    const int len = x.length();
    const int span = (n - 1) * tau;
    if (len < span + 1) {
        throw SeriesTooShort("delay_embed: need length >= " + std::to_string(span + 1) +
                             ", got " + std::to_string(len));
    }
    PointCloud cloud;
    cloud.dim = n;
    cloud.delay = tau;
    const int count = len - span;
    cloud.points.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j) row[j] = x.values[i + j * tau];
        cloud.points.push_back(std::move(row));
    }
    return cloud;
}

std::vector<double> mutual_information_curve(const TimeSeries& x, int tau_max) {
    validate(x);
    require(tau_max >= 1, "mutual_information_curve: tau_max must be >= 1");
    const int len = x.length();
    if (len <= tau_max) {
        throw SeriesTooShort("mutual_information_curve: need length > tau_max");
    }

    const auto [lo_it, hi_it] = std::minmax_element(x.values.begin(), x.values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const int bins = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(len))));
    const double width = (hi - lo) / bins;

    std::vector<double> curve(tau_max);
    std::vector<int> joint(static_cast<size_t>(bins) * bins);
    std::vector<int> first_marginal(bins), second_marginal(bins);
    for (int tau = 1; tau <= tau_max; ++tau) {
        std::fill(joint.begin(), joint.end(), 0);
        std::fill(first_marginal.begin(), first_marginal.end(), 0);
        std::fill(second_marginal.begin(), second_marginal.end(), 0);
        const int pairs = len - tau;
        for (int i = 0; i < pairs; ++i) {
            const int a = bin_index(x.values[i], lo, width, bins);
            const int b = bin_index(x.values[i + tau], lo, width, bins);
            ++joint[static_cast<size_t>(a) * bins + b];
            ++first_marginal[a];
            ++second_marginal[b];
        }
        const double total = static_cast<double>(pairs);
        double mi = 0.0;
        for (int a = 0; a < bins; ++a) {
            for (int b = 0; b < bins; ++b) {
                const int count = joint[static_cast<size_t>(a) * bins + b];
                if (count == 0) continue;
                const double pab = count / total;
                const double pa = first_marginal[a] / total;
                const double pb = second_marginal[b] / total;
                mi += pab * std::log(pab / (pa * pb));
            }
        }
        curve[tau - 1] = std::max(0.0, mi);
    }
    return curve;
}

int select_delay_mi_from_curve(const std::vector<double>& curve) {
    require(!curve.empty(), "select_delay_mi_from_curve: empty curve");
    const int count = static_cast<int>(curve.size());
    for (int t = 1; t + 1 < count; ++t) {
        if (curve[t - 1] > curve[t] && curve[t] < curve[t + 1]) return t + 1;
    }
    const auto min_it = std::min_element(curve.begin(), curve.end());
    return static_cast<int>(min_it - curve.begin()) + 1;
}

int select_delay_mi(const TimeSeries& x, int tau_max) {
    require(tau_max >= 2, "select_delay_mi: tau_max must be >= 2");
    return select_delay_mi_from_curve(mutual_information_curve(x, tau_max));
}

double normalized_permutation_entropy(const TimeSeries& x, int tau, int n) {
    const PointCloud cloud = delay_embed(x, tau, n);
    std::map<std::vector<int>, int> counts;
    for (const auto& point : cloud.points) ++counts[ordinal_pattern_of(point)];
    const double total = static_cast<double>(cloud.size());
    double h = 0.0;
    for (const auto& [pattern, count] : counts) {
        const double p = count / total;
        h -= p * std::log2(p);
    }
    return h / log2_factorial(n);
}

std::vector<double> mspe_delay_curve(const TimeSeries& x, int n_probe, int tau_max) {
    require(n_probe >= 3 && n_probe <= 7, "mspe_delay_curve: n_probe must be in [3, 7]");
    require(tau_max >= 1, "mspe_delay_curve: tau_max must be >= 1");
    std::vector<double> curve(tau_max);
    for (int tau = 1; tau <= tau_max; ++tau) {
        curve[tau - 1] = normalized_permutation_entropy(x, tau, n_probe);
    }
    return curve;
}

int select_delay_mspe_from_curve(const std::vector<double>& curve, double factor) {
    require(!curve.empty(), "select_delay_mspe_from_curve: empty curve");
    const double target = factor * *std::max_element(curve.begin(), curve.end());
    for (int t = 0; t < static_cast<int>(curve.size()); ++t) {
        if (curve[t] >= target) return t + 1;
    }
    return static_cast<int>(curve.size());  // unreachable: the max itself crosses
}

int select_delay_mspe(const TimeSeries& x, int n_probe, int tau_max) {
    return select_delay_mspe_from_curve(mspe_delay_curve(x, n_probe, tau_max));
}

double fnn_fraction(const TimeSeries& x, int tau, int n, double r_tol) {
    validate(x);
    require(tau >= 1, "fnn_fraction: tau must be >= 1");
    require(n >= 1, "fnn_fraction: dimension must be >= 1");
    const int len = x.length();
    // Tested points need the (n+1)-th coordinate x[i + n*tau].
    const int count = len - n * tau;
    if (count < 2) {
        throw SeriesTooShort("fnn_fraction: need length >= " + std::to_string(n * tau + 2));
    }

    int tested = 0;
    int false_neighbors = 0;
    for (int i = 0; i < count; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_j = -1;
        for (int j = 0; j < count; ++j) {
            if (j == i) continue;
            double sq = 0.0;
            for (int c = 0; c < n; ++c) {
                const double diff = x.values[i + c * tau] - x.values[j + c * tau];
                sq += diff * diff;
            }
            if (sq < best) {
                best = sq;
                best_j = j;
            }
        }
        const double dist = std::sqrt(best);
        if (dist == 0.0) continue;  // exact duplicate, skipped
        ++tested;
        const double next = std::abs(x.values[i + n * tau] - x.values[best_j + n * tau]);
        if (next / dist > r_tol) ++false_neighbors;
    }
    if (tested == 0) return 0.0;
    return static_cast<double>(false_neighbors) / tested;
}

std::vector<double> fnn_fraction_curve(const TimeSeries& x, int tau, int n_max, double r_tol) {
    require(n_max >= 2, "fnn_fraction_curve: n_max must be >= 2");
    std::vector<double> curve;
    curve.reserve(n_max - 1);
    for (int n = 2; n <= n_max; ++n) curve.push_back(fnn_fraction(x, tau, n, r_tol));
    return curve;
}

int select_dim_fnn(const TimeSeries& x, int tau, int n_max, double r_tol,
                   double frac_threshold) {
    require(n_max >= 2, "select_dim_fnn: n_max must be >= 2");
    if (x.length() - n_max * tau < 2) {
        throw SeriesTooShort("select_dim_fnn: series too short to test up to n_max");
    }
    for (int n = 2; n <= n_max; ++n) {
        if (fnn_fraction(x, tau, n, r_tol) < frac_threshold) return n;
    }
    return n_max;
}

int select_dim_mspe(const TimeSeries& x, int tau, int n_min, int n_max) {
    require(n_min >= 3 && n_min <= n_max && n_max <= 7,
            "select_dim_mspe: need 3 <= n_min <= n_max <= 7");
    int best_n = n_min;
    double best_h = -1.0;
    for (int n = n_min; n <= n_max; ++n) {
        const double h = normalized_permutation_entropy(x, tau, n);
        if (h > best_h) {  // ties keep the smaller n
            best_h = h;
            best_n = n;
        }
    }
    return best_n;
}

int lower_median(std::vector<int> values) {
    require(!values.empty(), "lower_median: empty input");
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

EmbeddingParams select_shared_params(const std::vector<TimeSeries>& dataset,
                                     ParamFamily family, int subset_size) {
    if (dataset.empty()) throw EmptyDataset("select_shared_params: empty dataset");
    require(subset_size >= 1, "select_shared_params: subset_size must be >= 1");

    const int count = std::min<int>(subset_size, static_cast<int>(dataset.size()));
    std::vector<int> taus, dims;
    taus.reserve(count);
    dims.reserve(count);
    for (int i = 0; i < count; ++i) {
        const TimeSeries& x = dataset[i];
        const int len = x.length();
        if (family == ParamFamily::Opn) {
            constexpr int n_probe = 5;
            const int tau_max = std::max(1, std::min(7, (len - 1) / (n_probe - 1)));
            const int tau = select_delay_mspe(x, n_probe, tau_max);
            const int n_max = std::max(3, std::min(7, (len - 1) / tau + 1));
            if ((n_max - 1) * tau + 1 > len) {
                throw SeriesTooShort("select_shared_params: series " + std::to_string(i) +
                                     " too short for MsPE dimension sweep");
            }
            taus.push_back(tau);
            dims.push_back(select_dim_mspe(x, tau, 3, n_max));
        } else {
            constexpr int n_max = 7;
            const int tau_max = std::min({50, (len - 2) / n_max, len - 1});
            if (tau_max < 2) {
                throw SeriesTooShort("select_shared_params: series " + std::to_string(i) +
                                     " too short for MI/FNN selection");
            }
            const int tau = select_delay_mi(x, tau_max);
            taus.push_back(tau);
            dims.push_back(select_dim_fnn(x, tau, n_max));
        }
    }
    EmbeddingParams params;
    params.tau = lower_median(std::move(taus));
    params.n = lower_median(std::move(dims));
    params.method = family == ParamFamily::Opn ? ParamMethod::MsPE : ParamMethod::MiFnn;
    return params;
}

} // namespace tsph
