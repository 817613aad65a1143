#pragma once

// Support recovery: the clean-then-threshold decoder (RecoverSupp), the
// coordinate-thresholding (CT) direction estimator, and cut policies.

#include "scca/covariance.hpp"
#include "scca/linalg.hpp"
#include "scca/model.hpp"
#include "scca/sample.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace scca {

/// Which canonical side a support estimate refers to.
enum class Side { ForU, ForV };

/// Soft-thresholding operator: sign(x) * max(|x| - t, 0).
double soft_threshold(double x, double t);

/// Entrywise soft threshold.
Matrix soft_threshold(const Matrix& m, double t);

struct SupportEstimate {
    std::vector<Index> indices; // sorted
    Matrix score_matrix;        // cleaned directions the support was read from
    double cut_used = 0.0;
    Side side = Side::ForV;
};

/// Rows whose max-abs score strictly exceeds `cut`.
std::vector<Index> rows_above(const Matrix& scores, double cut);

/// RecoverSupp: score = precision * cross_cov * u_hat (q x r), keep row k iff
/// max_j |score(k, j)| > cut.
///
/// `u_hat` is the first-half estimate of the opposite side's directions
/// (p x r), `precision` the first-half precision for the recovered side
/// (q x q), and `cross_cov` the second-half cross-covariance in the
/// recovered-by-opposite orientation (q x p).
SupportEstimate recover_supp(const Matrix& u_hat, const Matrix& precision, const Matrix& cross_cov,
                             double cut, Index r, Side side = Side::ForV);

/// Recovery cut c_pr * xi_n * sqrt(log(p+q) s_prec / n), with
/// xi_n = c_pr sqrt(s_prec) (A), c_pr max(sqrt(r log q / n), 1) (B), 1 (C).
double theorem1_cut(Index n, Index p, Index q, Index s_prec, Index r, XiType xi_type, double c_pr);

/// c_mult * sqrt(log(p+q) s_prec / n)
double simulation_cut(Index n, Index p, Index q, Index s_prec, double c_mult);

/// Default simulation constants: 1 for the identity design, 0.05 (alpha side)
/// and 0.2 (beta side) for the banded-precision design.
double default_cut_constant(CovCase cov_case, Side side);

/// max(base_cut, s-th largest row-max-abs score). With the strict comparison
/// of recover_supp, rows tied with the s-th score are dropped.
double sparsity_aware_cut(double base_cut, const Matrix& score_matrix, Index s);

/// Inputs a cut policy may read when it is resolved.
struct CutContext {
    Index n = 0;
    Index p = 0;
    Index q = 0;
    Index s_prec = 1;
    Index r = 1;
};

struct TheoremOneCut {
    double c_pr = 1.0;
    XiType xi_type = XiType::C;
};
struct SimulationCut {
    double c_mult = 1.0;
};
struct ManualCut {
    double value = 0.0;
};
struct SparsityAwareCut;

/// Cut-selection rule for recover_supp.
struct ThresholdPolicy {
    std::variant<TheoremOneCut, SimulationCut, ManualCut, std::shared_ptr<const SparsityAwareCut>> kind;

    static ThresholdPolicy theorem_one(double c_pr, XiType xi_type);
    static ThresholdPolicy simulation(double c_mult);
    static ThresholdPolicy manual(double value);
    static ThresholdPolicy sparsity_aware(ThresholdPolicy base, Index s);

    /// Cut before any score-dependent refinement.
    double base_cut(const CutContext& ctx) const;
    /// Final cut; sparsity-aware policies look at `scores`.
    double resolve(const CutContext& ctx, const Matrix& scores) const;
};

struct SparsityAwareCut {
    ThresholdPolicy base;
    Index s = 1;
};

enum class CtCase { CaseI, CaseII, CaseIII };

/// Coordinate-thresholding level and the constants it was derived from.
struct CtThreshold {
    double k_const = 1288.0;
    double c1_const = 50.0;
    double b_eff = 1.0;
    CtCase resolved_case = CtCase::CaseIII;
    double theta = 0.0;
};

/// Three-case threshold:
///   (sx+sy)^2 <  2^{1/4} (p+q)^{3/4}            -> sqrt(C1 log(p+q))
///   2^{1/4}(p+q)^{3/4} <= (sx+sy)^2 <= (p+q)/e  -> sqrt(K log((p+q)/(sx+sy)^2))
///   otherwise                                   -> 0
CtThreshold ct_threshold(Index p, Index q, Index s_x, Index s_y, double k_const, double c1_const);

/// max of the largest eigenvalues of Sigma_x, Sigma_y and their inverses.
double effective_b(const CcaModel& model);

/// ct_threshold with K = k_mult B^4 and C1 = c1_mult B^4, B = effective_b(model),
/// and the true support sizes of the model.
CtThreshold ct_threshold_for_model(const CcaModel& model, double k_mult = 1288.0,
                                   double c1_mult = 50.0);

struct DirectionEstimate {
    Matrix directions;        // p x r, U' Sigma_x U = I on the non-padded columns
    Index effective_rank = 0; // columns backed by a nonzero singular value
    bool rank_deficient = false;
};

/// CT direction estimate from one sample half with known covariances:
/// peel T = Sigma_x^{-1} (X'Y/N) Sigma_y^{-1}, soft-threshold at theta/sqrt(N),
/// sandwich Sigma_x^{1/2} eta(T) Sigma_y^{1/2}, take the top-r left singular
/// vectors and premultiply by Sigma_x^{-1/2}. Missing singular directions are
/// zero-padded and flagged.
DirectionEstimate ct_estimate_directions(const SampleHalf& half, const CcaModel& model, Index r,
                                         const CtThreshold& threshold);

/// Same, from a p x q cross-covariance estimated on `n_rows` rows.
DirectionEstimate ct_estimate_directions(const Matrix& cross_cov, Index n_rows, const CcaModel& model,
                                         Index r, const CtThreshold& threshold);

/// CT estimate with theta = 0.
DirectionEstimate whitened_svd_directions(const SampleHalf& half, const CcaModel& model, Index r);

/// Full CT pipeline for one side. ForV estimates U from the first half and
/// cleans with Sigma_y^{-1} and the second-half cross-covariance; ForU swaps
/// the roles of X and Y.
SupportEstimate ct_recover_support(const SplitSample& sample, const CcaModel& model, Index r,
                                   const CtThreshold& threshold, const ThresholdPolicy& cut_policy,
                                   Side side);

/// Context the pipelines build for cut policies: full n, s_prec from the
/// recovered side's precision.
CutContext cut_context_for(const CcaModel& model, Index n, Index r, Side side);

/// max_i min_{w = +-1} (w u_hat_i - u_i)' Sigma_x (w u_hat_i - u_i)
double condition1_error(const Matrix& u_hat, const Matrix& u_true, const Matrix& sigma_x);

} // namespace scca
