#pragma once

#include "scca/model.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <random>
#include <vector>

namespace scca::testing {

inline Matrix gaussian_matrix(std::mt19937_64& gen, Index rows, Index cols) {
    std::normal_distribution<double> z(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = z(gen);
    }
    return m;
}

/// Random SPD matrix with eigenvalues drawn uniformly from [lo, hi].
inline Matrix random_spd(std::mt19937_64& gen, Index dim, double lo, double hi) {
    Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(gen, dim, dim));
    const Matrix q = qr.householderQ();
    std::uniform_real_distribution<double> eig(lo, hi);
    Vector d(dim);
    for (Index i = 0; i < dim; ++i) d(i) = eig(gen);
    Matrix s = q * d.asDiagonal() * q.transpose();
    return 0.5 * (s + s.transpose());
}

/// Random sparse-direction model in the class with B = 10: spectra in
/// [0.5, 2], correlations spaced by at least 0.2 and above 0.15.
inline CcaModel random_model(std::mt19937_64& gen, Index p, Index q, Index r) {
    const Matrix sx = random_spd(gen, p, 0.5, 2.0);
    const Matrix sy = random_spd(gen, q, 0.5, 2.0);
    std::bernoulli_distribution keep(0.5);
    auto sparse = [&](Index rows) {
        Matrix m = gaussian_matrix(gen, rows, r);
        for (Index i = 0; i < rows; ++i) {
            if (i >= r && !keep(gen)) m.row(i).setZero();
        }
        return m;
    };
    std::uniform_real_distribution<double> jitter(0.0, 0.05);
    Vector lambda(r);
    for (Index i = 0; i < r; ++i) lambda(i) = 0.9 - 0.25 * static_cast<double>(i) - jitter(gen);
    return build_model(sx, sy, sparse(p), sparse(q), lambda, 10.0);
}


inline std::vector<Index> iota_set(Index lo, Index hi) {
    std::vector<Index> v;
    for (Index i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

} // namespace scca::testing
