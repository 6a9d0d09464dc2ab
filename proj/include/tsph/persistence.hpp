#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tsph/dissimilarity.hpp"

namespace tsph {

struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;  // may be +inf

    double lifetime() const { return death - birth; }
};

struct PersistenceDiagram {
    int dimension = 0;
    std::vector<PersistencePair> pairs;

    bool empty() const { return pairs.empty(); }
    int size() const { return static_cast<int>(pairs.size()); }
};

/// Persistence of the flag filtration of D in dimensions 0 and 1 over Z/2.
///
/// Dim 0 comes from union-find over edges sorted by (value, u, v); all
/// vertices are born at 0, the class whose root has the larger index dies at
/// each merge, and each component under the finite entries contributes one
/// essential (0, +inf) pair. Dim 1 comes from boundary-matrix reduction over
/// the flag complex's triangles, each entering at the max of its three edge
/// values. Zero-persistence pairs are never emitted.
std::pair<PersistenceDiagram, PersistenceDiagram> persist(const DissimilarityMatrix& d);

/// Betti numbers (beta0, beta1) of the clique complex at scale eps, computed
/// by explicit boundary-matrix ranks over Z/2. Test oracle; throws TooLarge
/// for matrices above 12x12.
std::pair<int, int> betti_oracle(const DissimilarityMatrix& d, double eps);

/// Sup over k <= 3 and over both diagrams' landscape breakpoints of
/// |lambda_k - lambda'_k|, computed from the two dim-1 diagrams. By the
/// stability theorems this never exceeds the max entrywise |D - D'|.
double landscape_stability_check(const DissimilarityMatrix& d,
                                 const DissimilarityMatrix& d_prime);

/// {"dim": p, "pairs": [[b, d or "inf"], ...]}
std::string to_json(const PersistenceDiagram& dgm);

} // namespace tsph
