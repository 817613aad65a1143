#include "scca/covariance.hpp"

#include "scca/error.hpp"
#include "scca/model.hpp"

namespace scca {

SplitSample make_split_sample(Matrix x, Matrix y) {
    if (x.rows() != y.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "X and Y must have the same number of rows");
    }
    SplitSample s;
    s.split_at = x.rows() / 2;
    if (s.split_at < 1 || x.rows() - s.split_at < 1) {
        throw Error(ErrorCode::InvalidArgument, "both halves of the sample must be nonempty");
    }
    s.x = std::move(x);
    s.y = std::move(y);
    return s;
}

Matrix empirical_cross_cov(const Matrix& x_part, const Matrix& y_part) {
    if (x_part.rows() != y_part.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "parts must have the same number of rows");
    }
    if (x_part.rows() < 1) {
        throw Error(ErrorCode::DimensionMismatch, "parts must have at least one row");
    }
    return x_part.transpose() * y_part / static_cast<double>(x_part.rows());
}

std::pair<SampleHalf, SampleHalf> halves(const SplitSample& sample) {
    const Index n = sample.n();
    const Index k = sample.split_at;
    return {SampleHalf{sample.x.topRows(k), sample.y.topRows(k)},
            SampleHalf{sample.x.bottomRows(n - k), sample.y.bottomRows(n - k)}};
}

PrecisionProvider PrecisionProvider::known_exact(PrecisionTarget target) {
    return {target, PrecisionKind::KnownExact, XiType::C};
}

PrecisionProvider PrecisionProvider::sample_inverse(PrecisionTarget target) {
    return {target, PrecisionKind::SampleInverse, XiType::B};
}

PrecisionProvider PrecisionProvider::banded_truth(PrecisionTarget target) {
    return {target, PrecisionKind::BandedTruth, XiType::C};
}

PrecisionProvider PrecisionProvider::custom(PrecisionTarget target, XiType xi_type,
                                            Estimator estimator) {
    if (!estimator) throw Error(ErrorCode::InvalidArgument, "custom provider needs an estimator");
    PrecisionProvider p(target, PrecisionKind::Custom, xi_type);
    p.estimator_ = std::move(estimator);
    return p;
}

Matrix precision_of(const PrecisionProvider& provider, const SampleHalf& half,
                    const CcaModel* truth) {
    const bool for_x = provider.target() == PrecisionTarget::ForX;
    switch (provider.kind()) {
    case PrecisionKind::KnownExact: {
        if (!truth) throw Error(ErrorCode::MissingTruth, "KnownExact requires the model");
        return inverse_spd(for_x ? truth->sigma_x() : truth->sigma_y());
    }
    case PrecisionKind::BandedTruth: {
        if (!truth) throw Error(ErrorCode::MissingTruth, "BandedTruth requires the model");
        return banded_precision(for_x ? truth->p() : truth->q());
    }
    case PrecisionKind::SampleInverse: {
        const Matrix& block = for_x ? half.x : half.y;
        if (block.rows() < block.cols() + 1) {
            throw Error(ErrorCode::SingularCovariance,
                        "sample inverse needs more rows than the dimension");
        }
        const Matrix cov = empirical_cross_cov(block, block);
        Eigen::LLT<Matrix> llt(cov);
        if (llt.info() != Eigen::Success) {
            throw Error(ErrorCode::SingularCovariance, "empirical covariance is singular");
        }
        Matrix inv = llt.solve(Matrix::Identity(cov.rows(), cov.cols()));
        return 0.5 * (inv + inv.transpose());
    }
    case PrecisionKind::Custom: {
        Matrix m = provider.estimator()(for_x ? half.x : half.y);
        if (!is_symmetric(m, 1e-10)) {
            throw Error(ErrorCode::InvalidArgument, "custom precision estimate is not symmetric");
        }
        return m;
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown precision kind");
}

Index row_sparsity(const Matrix& m) {
    Index best = 0;
    for (Index j = 0; j < m.cols(); ++j) {
        Index count = 0;
        for (Index i = 0; i < m.rows(); ++i) {
            if (std::abs(m(i, j)) > kSparsityZeroTol) ++count;
        }
        best = std::max(best, count);
    }
    return best;
}

} // namespace scca
