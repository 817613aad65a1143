#include "scca/model.hpp"

#include "scca/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace scca {

namespace {

// Relative norm loss that marks a column as linearly dependent during
// Gram-Schmidt.
constexpr double kRankTol = 1e-10;

Matrix sigma_gram_schmidt(const Matrix& raw, const Matrix& sigma, const char* name) {
    Matrix q = raw;
    for (Index j = 0; j < q.cols(); ++j) {
        const double before = std::sqrt(q.col(j).dot(sigma * q.col(j)));
        for (Index i = 0; i < j; ++i) {
            const double proj = q.col(i).dot(sigma * q.col(j));
            q.col(j) -= proj * q.col(i);
        }
        const double after = std::sqrt(std::max(q.col(j).dot(sigma * q.col(j)), 0.0));
        if (!(before > 0.0) || after <= kRankTol * before) {
            throw Error(ErrorCode::InvalidArgument,
                        std::string(name) + " is not of full column rank");
        }
        q.col(j) /= after;
    }
    return q;
}

void check_bounded_spectrum(const Matrix& sigma, double b_const, const char* name) {
    if (!is_symmetric(sigma, 1e-12)) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " is not symmetric");
    }
    const Spectrum sp = spectrum(sigma);
    if (!(sp.min > 1.0 / b_const) || !(sp.max < b_const)) {
        std::ostringstream os;
        os << "bounded eigenvalue: spectrum of " << name << " is [" << sp.min << ", " << sp.max
           << "], outside (1/B, B) with B = " << b_const;
        throw Error(ErrorCode::ClassViolation, os.str());
    }
}

Matrix draw_standard_normal(std::mt19937_64& gen, Index rows, Index cols) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix z(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) z(i, j) = nd(gen);
    }
    return z;
}

void check_sample_size(Index n) {
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "sample size must be at least 4");
}

} // namespace

Matrix CcaModel::sigma_xy() const {
    return sigma_x_ * u_ * lambda_.asDiagonal() * v_.transpose() * sigma_y_;
}

CcaModel CcaModel::transposed() const {
    CcaModel t;
    t.sigma_x_ = sigma_y_;
    t.sigma_y_ = sigma_x_;
    t.u_ = v_;
    t.v_ = u_;
    t.lambda_ = lambda_;
    t.b_const_ = b_const_;
    return t;
}

SupportTruth support_truth(const CcaModel& model) {
    SupportTruth t;
    auto scan = [](const Matrix& m, std::vector<Index>& rows, double& sig) {
        sig = std::numeric_limits<double>::infinity();
        for (Index k = 0; k < m.rows(); ++k) {
            const double row_max = m.row(k).cwiseAbs().maxCoeff();
            if (row_max > kSupportZeroTol) {
                rows.push_back(k);
                sig = std::min(sig, row_max);
            }
        }
        if (rows.empty()) sig = 0.0;
    };
    scan(model.u(), t.d_u, t.sig_x);
    scan(model.v(), t.d_v, t.sig_y);
    t.s_x = static_cast<Index>(t.d_u.size());
    t.s_y = static_cast<Index>(t.d_v.size());
    return t;
}

CcaModel build_model(const Matrix& sigma_x, const Matrix& sigma_y, const Matrix& u_raw,
                     const Matrix& v_raw, const Vector& lambda, double b_const) {
    const Index p = sigma_x.rows();
    const Index q = sigma_y.rows();
    const Index r = lambda.size();
    if (sigma_x.cols() != p || sigma_y.cols() != q) {
        throw Error(ErrorCode::DimensionMismatch, "covariances must be square");
    }
    if (r < 1 || r > std::min(p, q)) {
        throw Error(ErrorCode::DimensionMismatch, "rank must lie in [1, min(p, q)]");
    }
    if (u_raw.rows() != p || u_raw.cols() != r || v_raw.rows() != q || v_raw.cols() != r) {
        throw Error(ErrorCode::DimensionMismatch, "directions must be p x r and q x r");
    }
    if (!(b_const > 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "model-class constant B must exceed 1");
    }
    for (Index i = 0; i < r; ++i) {
        if (!(lambda(i) > 0.0 && lambda(i) < 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "canonical correlations must lie in (0, 1)");
        }
        if (i > 0 && !(lambda(i) < lambda(i - 1))) {
            throw Error(ErrorCode::InvalidArgument,
                        "canonical correlations must be strictly decreasing");
        }
    }

    // Correlation range and eigengap.
    if (!(lambda(r - 1) > 1.0 / b_const)) {
        std::ostringstream os;
        os << "canonical correlation range: lambda_r = " << lambda(r - 1) << " <= 1/B";
        throw Error(ErrorCode::ClassViolation, os.str());
    }
    for (Index i = 1; i < r; ++i) {
        if (lambda(i - 1) - lambda(i) < 1.0 / b_const) {
            std::ostringstream os;
            os << "eigengap: lambda_" << i << " - lambda_" << (i + 1) << " = "
               << lambda(i - 1) - lambda(i) << " < 1/B";
            throw Error(ErrorCode::ClassViolation, os.str());
        }
    }
    check_bounded_spectrum(sigma_x, b_const, "Sigma_x");
    check_bounded_spectrum(sigma_y, b_const, "Sigma_y");

    CcaModel m;
    m.sigma_x_ = 0.5 * (sigma_x + sigma_x.transpose());
    m.sigma_y_ = 0.5 * (sigma_y + sigma_y.transpose());
    m.u_ = sigma_gram_schmidt(u_raw, m.sigma_x_, "U");
    m.v_ = sigma_gram_schmidt(v_raw, m.sigma_y_, "V");
    m.lambda_ = lambda;
    m.b_const_ = b_const;

    Eigen::LLT<Matrix> llt(joint_covariance(m));
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotPositiveDefinite, "joint covariance fails Cholesky");
    }
    return m;
}

Matrix banded_precision(Index dim) {
    Matrix omega = Matrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        omega(i, i) = 1.0;
        if (i + 1 < dim) omega(i, i + 1) = omega(i + 1, i) = 0.65;
        if (i + 2 < dim) omega(i, i + 2) = omega(i + 2, i) = 0.4;
    }
    return omega;
}

Vector rank1_alpha_star(Index p, Index s) {
    Vector a = Vector::Zero(p);
    a.head(s).setConstant(1.0 / std::sqrt(static_cast<double>(s)));
    return a;
}

Vector rank1_beta_star(Index q, Index s) {
    const double sd = static_cast<double>(s);
    const double lead = 1.0 - (sd - 1.0) * std::pow(sd, -4.0 / 3.0);
    if (!(lead > 0.0)) {
        throw Error(ErrorCode::InvalidSparsity, "1 - (s-1) s^{-4/3} must be positive");
    }
    Vector b = Vector::Zero(q);
    b(0) = std::sqrt(lead);
    b.segment(1, s - 1).setConstant(std::pow(sd, -2.0 / 3.0));
    return b;
}

CcaModel make_rank1_model(Index p, Index q, Index s, double rho, CovCase cov_case) {
    if (s < 2 || s > std::min(p, q)) {
        throw Error(ErrorCode::InvalidSparsity, "sparsity must lie in [2, min(p, q)]");
    }
    if (!(rho > 0.0 && rho < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "rho must lie in (0, 1)");
    }
    Matrix sx, sy;
    if (cov_case == CovCase::IdentityA) {
        sx = Matrix::Identity(p, p);
        sy = Matrix::Identity(q, q);
    } else {
        // Sigma^{-1} is banded; Sigma itself is dense.
        sx = inverse_spd(banded_precision(p));
        sy = inverse_spd(banded_precision(q));
    }
    const Vector a_star = rank1_alpha_star(p, s);
    const Vector b_star = rank1_beta_star(q, s);
    const Vector alpha = a_star / std::sqrt(a_star.dot(sx * a_star));
    const Vector beta = b_star / std::sqrt(b_star.dot(sy * b_star));

    const Spectrum spx = spectrum(sx);
    const Spectrum spy = spectrum(sy);
    const double b_eff =
        std::max({spx.max, spy.max, 1.0 / spx.min, 1.0 / spy.min, 1.0 / rho});
    Vector lambda(1);
    lambda << rho;
    return build_model(sx, sy, alpha, beta, lambda, 1.05 * b_eff);
}

Matrix joint_covariance(const CcaModel& model) {
    const Index p = model.p();
    const Index q = model.q();
    Matrix sigma(p + q, p + q);
    const Matrix sxy = model.sigma_xy();
    sigma.topLeftCorner(p, p) = model.sigma_x();
    sigma.bottomRightCorner(q, q) = model.sigma_y();
    sigma.topRightCorner(p, q) = sxy;
    sigma.bottomLeftCorner(q, p) = sxy.transpose();
    return sigma;
}

SplitSample sample(const CcaModel& model, Index n, std::uint64_t seed) {
    check_sample_size(n);
    Eigen::LLT<Matrix> llt(joint_covariance(model));
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::CholeskyFailure, "joint covariance is not positive definite");
    }
    std::mt19937_64 gen(seed);
    const Matrix z = draw_standard_normal(gen, n, model.p() + model.q());
    const Matrix data = z * llt.matrixL().transpose();
    return make_split_sample(data.leftCols(model.p()), data.rightCols(model.q()));
}

HiddenVariableFactors hidden_variable_factors(const CcaModel& model) {
    const Vector root_lambda = model.lambda().cwiseSqrt();
    HiddenVariableFactors f;
    f.w1 = model.sigma_x() * model.u() * root_lambda.asDiagonal();
    f.w2 = model.sigma_y() * model.v() * root_lambda.asDiagonal();
    f.h1 = sqrtm_psd(model.sigma_x() - f.w1 * f.w1.transpose());
    f.h2 = sqrtm_psd(model.sigma_y() - f.w2 * f.w2.transpose());
    return f;
}

SplitSample sample_hidden_variable(const CcaModel& model, Index n, std::uint64_t seed) {
    check_sample_size(n);
    const HiddenVariableFactors f = hidden_variable_factors(model);
    std::mt19937_64 gen(seed);
    const Matrix z = draw_standard_normal(gen, n, model.r());
    const Matrix z1 = draw_standard_normal(gen, n, model.p());
    const Matrix z2 = draw_standard_normal(gen, n, model.q());
    Matrix x = z * f.w1.transpose() + z1 * f.h1.transpose();
    Matrix y = z * f.w2.transpose() + z2 * f.h2.transpose();
    return make_split_sample(std::move(x), std::move(y));
}

} // namespace scca
