#pragma once

#include <span>
#include <vector>

#include "tsph/graph.hpp"
#include "tsph/time_series.hpp"

namespace tsph {

/// Permutation sorting the window ascending, ties broken by earlier index.
/// [4,2,4] -> (1,0,2).
std::vector<int> ordinal_pattern(std::span<const double> window);

/// Big-endian base-n encoding of a pattern; numeric order equals the
/// lexicographic order of patterns.
long long encode_pattern(const std::vector<int>& pattern, int n);

/// Equal-width bin index in {0,...,b-1} over [lo, hi], top edge closed.
int coarse_bin(double value, double lo, double hi, int b);

/// CGSSN state id 1 + sum_j rho(j) * b^j for the window's bin tuple.
long long coarse_state(std::span<const double> window, double lo, double hi, int b);

/// Natural visibility graph: edge (i, j) iff the open line segment between
/// (i, y_i) and (j, y_j) passes strictly above every intermediate sample.
Graph build_nvg(const TimeSeries& x);

/// Horizontal visibility graph: edge iff every intermediate value is strictly
/// below min(y_i, y_j). Always a subgraph of the NVG.
Graph build_hvg(const TimeSeries& x);

/// Ordinal partition network: vertices are observed ordinal patterns (sorted
/// by encoding), directed consecutive-pattern transitions are counted and then
/// symmetrized; self-transitions are dropped.
Graph build_opn(const TimeSeries& x, int tau, int n);

/// Coarse-grained state-space network over b amplitude bins; same transition
/// counting and symmetrization as the OPN. A constant series yields a single
/// state and no edges.
Graph build_cgssn(const TimeSeries& x, int tau, int n, int b);

/// Symmetric k-nearest-neighbor graph on the delay embedding, Euclidean
/// metric, distance ties broken toward the smaller vertex index.
Graph build_knn(const TimeSeries& x, int tau, int n, int k);

} // namespace tsph
