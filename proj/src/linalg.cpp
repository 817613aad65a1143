#include "scca/linalg.hpp"

#include "scca/error.hpp"

#include <algorithm>
#include <cmath>

namespace scca {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eig_or_throw(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "square matrix required");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::SqrtFailure, "eigendecomposition did not converge");
    }
    return es;
}

} // namespace

Matrix sqrtm_psd(const Matrix& a) {
    const auto es = eig_or_throw(a);
    Vector ev = es.eigenvalues();
    for (Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -kPsdClampTol) {
            throw Error(ErrorCode::SqrtFailure,
                        "matrix has eigenvalue " + std::to_string(ev(i)) + " below -1e-10");
        }
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    const Matrix& q = es.eigenvectors();
    Matrix r = q * ev.asDiagonal() * q.transpose();
    return 0.5 * (r + r.transpose());
}

Matrix inv_sqrtm_spd(const Matrix& a) {
    const auto es = eig_or_throw(a);
    Vector ev = es.eigenvalues();
    if (ev.minCoeff() <= 0.0) {
        throw Error(ErrorCode::NotPositiveDefinite, "inverse square root of a non-PD matrix");
    }
    ev = ev.cwiseSqrt().cwiseInverse();
    const Matrix& q = es.eigenvectors();
    Matrix r = q * ev.asDiagonal() * q.transpose();
    return 0.5 * (r + r.transpose());
}

Matrix inverse_spd(const Matrix& a) {
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    }
    Matrix inv = llt.solve(Matrix::Identity(a.rows(), a.cols()));
    return 0.5 * (inv + inv.transpose());
}

Spectrum spectrum(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidArgument, "eigenvalue computation failed");
    }
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

bool is_symmetric(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, max_abs(a));
    return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

void canonicalize_signs(Matrix& columns) {
    for (Index j = 0; j < columns.cols(); ++j) {
        Index arg = 0;
        columns.col(j).cwiseAbs().maxCoeff(&arg);
        if (columns(arg, j) < 0.0) columns.col(j) *= -1.0;
    }
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace scca
