#pragma once

// Truncated likelihood-ratio norm ||L_n^{<=D}||^2 for the rank-one sparse CCA
// detection problem under independent three-point (Rademacher) priors:
//
//   E[ W * sum_{d=0}^{floor(D/2)} C(d+n-1, d) (B^{-2} <a1,a2> <b1,b2>)^d ]
//
// where W = 1{||a1|| ||b1|| < B, ||a2|| ||b2|| < B} and (a1, a2, b1, b2) are
// independent prior draws.

#include "scca/linalg.hpp"

#include <cstdint>
#include <random>

namespace scca {

struct LowDegConfig {
    Index n = 1;
    Index p = 1;
    Index q = 1;
    Index s_x = 1;
    Index s_y = 1;
    double b_const = 3.0;
    Index degree = 2;
    Index mc_samples = 100000;
    std::uint64_t seed = 1;
    /// MC work is split into this many independently seeded shards; results
    /// depend on it but not on the number of threads.
    Index shards = 16;

    /// Throws InvalidArgument for out-of-range fields (B must exceed 2).
    void validate() const;
    /// D <= min(sqrt(p), sqrt(q), n); a warning condition, not an error.
    bool degree_hypothesis_holds() const;
};

enum class NormMethod { Exact, MonteCarlo };

struct NormEstimate {
    double value = 0.0;
    double std_error = 0.0;
    NormMethod method = NormMethod::Exact;
};

/// i.i.d. entries equal to +-1/sqrt(s) with probability s/(2 dim) each and 0
/// otherwise.
Vector sample_rademacher_prior(Index dim, Index s, std::mt19937_64& gen);
Vector sample_rademacher_prior(Index dim, Index s, std::uint64_t seed);

/// sum_{d=0}^{max_d} C(d+n-1, d) x^d evaluated in signed log space. When
/// `even_only` is set, odd d are skipped. Returns (sign, log|value|).
struct SignedLog {
    double sign = 1.0;
    double log_abs = 0.0;
    double value() const;
};
SignedLog truncated_negative_binomial(Index n, double x, Index max_d, bool even_only = false);

/// Monte Carlo estimate (mean and standard error over independent replica
/// draws). Odd-degree terms are kept so the estimator is unbiased for the
/// displayed expectation.
NormEstimate lowdeg_norm_mc(const LowDegConfig& config);

/// Exact expectation via a finite sum over support-size and overlap counts;
/// polynomial in p and q. Throws TooLarge when the number of (alpha, beta)
/// count tuples exceeds 1e8.
NormEstimate lowdeg_norm_exact(const LowDegConfig& config);

} // namespace scca
