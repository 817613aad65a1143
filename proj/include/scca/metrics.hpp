#pragma once

// Support-recovery error metrics. Index sets are given as vectors of distinct
// indices in any order.

#include "scca/linalg.hpp"

#include <vector>

namespace scca {

struct RecoveryErrors {
    double type_one = 0.0;
    double type_two = 0.0;
    double hamming = 0.0;
    bool exact = false;
};

/// |d_hat \ d_true| / (ambient_dim - |d_true|)
double type_one_error(const std::vector<Index>& d_hat, const std::vector<Index>& d_true,
                      Index ambient_dim);

/// |d_true \ d_hat| / |d_true|
double type_two_error(const std::vector<Index>& d_hat, const std::vector<Index>& d_true);

/// 1 - |d_true ∩ d_hat| / sqrt(|d_true| |d_hat|); 1 when d_hat is empty.
double hamming_error(const std::vector<Index>& d_hat, const std::vector<Index>& d_true);

RecoveryErrors recovery_errors(const std::vector<Index>& d_hat, const std::vector<Index>& d_true,
                               Index ambient_dim);

} // namespace scca
