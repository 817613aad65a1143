#pragma once

// Information-theoretic quantities: sparsity regimes, impossibility
// thresholds, the rank-one Gaussian KL divergence and the Fano bound.
// Logarithms are natural throughout.

#include "scca/linalg.hpp"

#include <string_view>

namespace scca {

enum class Regime { Easy, Difficult, Hard, Impossible };

std::string_view to_string(Regime regime);

struct RegimeReport {
    Regime regime = Regime::Easy;
    double easy_boundary = 0.0;      // sqrt(n / log(p+q))
    double difficult_boundary = 0.0; // sqrt(n)
    double hard_boundary = 0.0;      // n / log(p+q)
    Index n = 0, p = 0, q = 0, s_x = 0, s_y = 0;
};

/// Compares max(s_x, s_y) against the three boundaries with constant one.
RegimeReport classify_regime(Index n, Index p, Index q, Index s_x, Index s_y);

/// s > 16 n / ((B^2 - 1) log(p - s)); requires s > 1 and p - s > 16.
bool impossible_sparsity_predicate(Index n, Index p, Index s, double b_const);

/// sqrt((B^2 - 1) log(p - s) / (8 n)); requires p - s > 16 and n >= 1.
double min_signal_threshold(Index n, Index p, Index s, double b_const);

/// Two rank-one spiked models sharing beta and rho:
/// Sigma_i = [[I_p, rho alpha_i beta'], [rho beta alpha_i', I_q]].
struct SpikedPair {
    Vector alpha1;
    Vector alpha2;
    Vector beta;
    double rho = 0.0;
};

/// Per-observation KL(P1 | P2) between the two Gaussians of `pair`:
/// rho^2 ||alpha1 - alpha2||^2 / (2 (1 - rho^2)). Throws NotUnitNorm unless
/// alpha1, alpha2 and beta are unit vectors (to 1e-10).
double kl_rank1(const SpikedPair& pair);

/// max(0, 1 - (n rho^2 sup||a1 - a2||^2 / (1 - rho^2) + log 2) / log(|E| - 1)).
/// The numerator uses twice the per-sample KL, so the bound is conservative.
/// Throws FamilyTooSmall for |E| < 3.
double fano_lower_bound(double n, double rho, double sup_pair_dist_sq, double family_size);

} // namespace scca
