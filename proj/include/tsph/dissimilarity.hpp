#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tsph/errors.hpp"

namespace tsph {

inline constexpr double kInfDist = std::numeric_limits<double>::infinity();

/// Symmetric nonnegative matrix with zero diagonal; +inf marks pairs that are
/// never joined by the filtration.
struct DissimilarityMatrix {
    int size = 0;
    std::vector<double> entries;  // row-major, size*size

    DissimilarityMatrix() = default;
    explicit DissimilarityMatrix(int n)
        : size(n), entries(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0) {}

    double& at(int i, int j) { return entries[static_cast<size_t>(i) * size + j]; }
    double at(int i, int j) const { return entries[static_cast<size_t>(i) * size + j]; }
};

/// Throws on asymmetry, nonzero diagonal, negative or NaN entries.
void validate(const DissimilarityMatrix& d);

/// Largest finite entry (0 for a 1x1 matrix).
double max_finite_entry(const DissimilarityMatrix& d);

/// Row-major CSV, `inf` token for +inf entries.
std::string to_csv(const DissimilarityMatrix& d);

} // namespace tsph
