#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tsph/errors.hpp"

namespace tsph {

/// A univariate signal with an optional class label and id.
/// Samples must be finite; length must be at least 1.
struct TimeSeries {
    std::vector<double> values;
    std::string label;  // empty = unlabeled
    std::string id;     // empty = anonymous

    int length() const { return static_cast<int>(values.size()); }
};

inline void validate(const TimeSeries& x) {
    if (x.values.empty()) {
        throw SeriesTooShort("time series must contain at least one sample");
    }
    for (double v : x.values) {
        if (!std::isfinite(v)) {
            throw Error("time series contains a non-finite sample");
        }
    }
}

} // namespace tsph
