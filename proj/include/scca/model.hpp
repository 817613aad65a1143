#pragma once

// Gaussian sparse-CCA model class: construction, validation and sampling.
//
// A model is described by the marginal covariances Sigma_x (p x p), Sigma_y
// (q x q), canonical directions U (p x r), V (q x r) normalized so that
// U' Sigma_x U = V' Sigma_y V = I, and canonical correlations lambda. The
// cross-covariance is Sigma_xy = Sigma_x U diag(lambda) V' Sigma_y.

#include "scca/linalg.hpp"
#include "scca/sample.hpp"

#include <cstdint>
#include <vector>

namespace scca {

enum class CovCase { IdentityA, BandedB };

class CcaModel {
public:
    Index p() const { return sigma_x_.rows(); }
    Index q() const { return sigma_y_.rows(); }
    Index r() const { return lambda_.size(); }

    const Matrix& sigma_x() const { return sigma_x_; }
    const Matrix& sigma_y() const { return sigma_y_; }
    const Matrix& u() const { return u_; }
    const Matrix& v() const { return v_; }
    const Vector& lambda() const { return lambda_; }
    double b_const() const { return b_const_; }

    /// Sigma_x U diag(lambda) V' Sigma_y
    Matrix sigma_xy() const;

    /// Same model with the roles of X and Y exchanged.
    CcaModel transposed() const;

private:
    friend CcaModel build_model(const Matrix&, const Matrix&, const Matrix&, const Matrix&,
                                const Vector&, double);
    CcaModel() = default;

    Matrix sigma_x_;
    Matrix sigma_y_;
    Matrix u_;
    Matrix v_;
    Vector lambda_;
    double b_const_ = 0.0;
};

/// Index sets of nonzero rows of U and V plus minimal signal strengths.
struct SupportTruth {
    std::vector<Index> d_u;
    std::vector<Index> d_v;
    Index s_x = 0;
    Index s_y = 0;
    double sig_x = 0.0;
    double sig_y = 0.0;
};

/// Entries with |value| <= this are structural zeros of U and V.
inline constexpr double kSupportZeroTol = 1e-12;

SupportTruth support_truth(const CcaModel& model);

/// Validates inputs against the model class (bounded eigenvalues, correlation
/// range and eigengap, joint positive definiteness) and Sigma-orthonormalizes
/// U_raw and V_raw by modified Gram-Schmidt.
///
/// Throws ClassViolation naming the violated condition, NotPositiveDefinite if
/// the joint covariance fails Cholesky, InvalidArgument/DimensionMismatch for
/// malformed input.
CcaModel build_model(const Matrix& sigma_x, const Matrix& sigma_y, const Matrix& u_raw,
                     const Matrix& v_raw, const Vector& lambda, double b_const);

/// Banded precision with unit diagonal, 0.65 on the first off-diagonals and
/// 0.4 on the second.
Matrix banded_precision(Index dim);

/// Normalized sparse directions of the rank-one simulation design (before
/// Sigma-normalization): alpha* = 1/sqrt(s) on the first s coordinates,
/// beta* = (sqrt(1 - (s-1) s^{-4/3}), s^{-2/3}, ..., s^{-2/3}, 0, ...).
Vector rank1_alpha_star(Index p, Index s);
Vector rank1_beta_star(Index q, Index s);

/// Rank-one simulation model. Throws InvalidSparsity when s is out of range,
/// NotPositiveDefinite when the banded precision is indefinite at this size.
CcaModel make_rank1_model(Index p, Index q, Index s, double rho, CovCase cov_case);

/// [[Sigma_x, Sigma_xy], [Sigma_yx, Sigma_y]]
Matrix joint_covariance(const CcaModel& model);

/// n i.i.d. rows from N(0, joint_covariance) through its Cholesky factor.
SplitSample sample(const CcaModel& model, Index n, std::uint64_t seed);

/// Latent-variable sampler: X = Z W1' + Z1 H1', Y = Z W2' + Z2 H2' with
/// W1 = Sigma_x U Lambda^{1/2}, H1 = (Sigma_x - W1 W1')^{1/2}.
SplitSample sample_hidden_variable(const CcaModel& model, Index n, std::uint64_t seed);

/// Loadings of the latent-variable representation.
struct HiddenVariableFactors {
    Matrix w1, w2, h1, h2;
};
HiddenVariableFactors hidden_variable_factors(const CcaModel& model);

} // namespace scca
