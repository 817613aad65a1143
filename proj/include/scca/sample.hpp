#pragma once

#include "scca/linalg.hpp"

namespace scca {

/// Mean-zero paired data with a fixed two-way split: rows [0, split_at) form
/// the first half, rows [split_at, n) the second.
struct SplitSample {
    Matrix x; // n x p
    Matrix y; // n x q
    Index split_at = 0;

    Index n() const { return x.rows(); }
};

/// One half of a SplitSample (owning copy).
struct SampleHalf {
    Matrix x;
    Matrix y;

    Index rows() const { return x.rows(); }
};

/// Builds a SplitSample with split_at = floor(n/2); validates shapes.
SplitSample make_split_sample(Matrix x, Matrix y);

} // namespace scca
