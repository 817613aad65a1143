#pragma once

// Empirical covariance machinery and precision-matrix providers.
//
// No centering is performed anywhere: data are mean-zero by construction.

#include "scca/linalg.hpp"
#include "scca/sample.hpp"

#include <functional>
#include <utility>

namespace scca {

class CcaModel;

/// X' Y / m for row-aligned parts with m >= 1 rows.
Matrix empirical_cross_cov(const Matrix& x_part, const Matrix& y_part);

/// Deterministic row split at sample.split_at.
std::pair<SampleHalf, SampleHalf> halves(const SplitSample& sample);

/// Which marginal the provider inverts.
enum class PrecisionTarget { ForX, ForY };

enum class PrecisionKind { KnownExact, SampleInverse, BandedTruth, Custom };

/// Error-rate class of a precision estimate; drives the xi_n factor of the
/// recovery threshold. C means exact, B an l_{inf,2}-rate estimator, A an
/// l_{inf,1}-rate estimator.
enum class XiType { A, B, C };

/// Role-typed source of Sigma_x^{-1} or Sigma_y^{-1}.
class PrecisionProvider {
public:
    /// Estimator for user-supplied procedures (e.g. CLIME, nodewise Lasso);
    /// receives the relevant block of one sample half.
    using Estimator = std::function<Matrix(const Matrix& block)>;

    static PrecisionProvider known_exact(PrecisionTarget target);
    static PrecisionProvider sample_inverse(PrecisionTarget target);
    static PrecisionProvider banded_truth(PrecisionTarget target);
    static PrecisionProvider custom(PrecisionTarget target, XiType xi_type, Estimator estimator);

    PrecisionTarget target() const { return target_; }
    PrecisionKind kind() const { return kind_; }
    XiType xi_type() const { return xi_type_; }
    const Estimator& estimator() const { return estimator_; }

private:
    PrecisionProvider(PrecisionTarget t, PrecisionKind k, XiType x) : target_(t), kind_(k), xi_type_(x) {}

    PrecisionTarget target_;
    PrecisionKind kind_;
    XiType xi_type_;
    Estimator estimator_;
};

/// Produces the precision matrix. KnownExact and BandedTruth need `truth`
/// (MissingTruth otherwise); SampleInverse needs more rows than the dimension
/// and throws SingularCovariance on rank-deficient input.
Matrix precision_of(const PrecisionProvider& provider, const SampleHalf& half,
                    const CcaModel* truth);

/// Entries with |value| <= this count as zero in row_sparsity.
inline constexpr double kSparsityZeroTol = 1e-12;

/// Maximum number of nonzero entries in any column.
Index row_sparsity(const Matrix& m);

} // namespace scca
