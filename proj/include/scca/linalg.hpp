#pragma once

// Dense linear-algebra helpers shared by the model, recovery and theory code.

#include <Eigen/Dense>

#include <cstdint>

namespace scca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Eigenvalues in [-1e-10, 0] are treated as zero; anything below throws SqrtFailure.
inline constexpr double kPsdClampTol = 1e-10;

/// Symmetric PSD square root via eigendecomposition.
Matrix sqrtm_psd(const Matrix& a);

/// Inverse symmetric square root; requires a strictly positive spectrum.
Matrix inv_sqrtm_spd(const Matrix& a);

/// Inverse of a symmetric positive-definite matrix via Cholesky.
/// Throws NotPositiveDefinite if the factorization fails.
Matrix inverse_spd(const Matrix& a);

/// Smallest and largest eigenvalue of a symmetric matrix.
struct Spectrum {
    double min;
    double max;
};
Spectrum spectrum(const Matrix& a);

bool is_symmetric(const Matrix& a, double tol = 1e-12);

/// Max-abs entry of a matrix (0 for empty).
double max_abs(const Matrix& a);

/// Flip each column so its largest-magnitude entry is positive.
void canonicalize_signs(Matrix& columns);

/// splitmix64 finalizer; used for all seed derivation.
std::uint64_t mix_seed(std::uint64_t x);

} // namespace scca
