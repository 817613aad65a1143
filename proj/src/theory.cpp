#include "scca/theory.hpp"

#include "scca/error.hpp"

#include <algorithm>
#include <cmath>

namespace scca {

std::string_view to_string(Regime regime) {
    switch (regime) {
    case Regime::Easy: return "Easy";
    case Regime::Difficult: return "Difficult";
    case Regime::Hard: return "Hard";
    case Regime::Impossible: return "Impossible";
    }
    return "Unknown";
}

RegimeReport classify_regime(Index n, Index p, Index q, Index s_x, Index s_y) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
    if (p + q < 3) throw Error(ErrorCode::InvalidArgument, "p + q must be at least 3");
    const double nd = static_cast<double>(n);
    const double log_dim = std::log(static_cast<double>(p + q));

    RegimeReport rep;
    rep.n = n;
    rep.p = p;
    rep.q = q;
    rep.s_x = s_x;
    rep.s_y = s_y;
    rep.easy_boundary = std::sqrt(nd / log_dim);
    rep.difficult_boundary = std::sqrt(nd);
    rep.hard_boundary = nd / log_dim;

    const double s = static_cast<double>(std::max(s_x, s_y));
    if (s <= rep.easy_boundary) {
        rep.regime = Regime::Easy;
    } else if (s <= rep.difficult_boundary) {
        rep.regime = Regime::Difficult;
    } else if (s <= rep.hard_boundary) {
        rep.regime = Regime::Hard;
    } else {
        rep.regime = Regime::Impossible;
    }
    return rep;
}

namespace {

void require_packing_room(Index p, Index s) {
    if (p - s <= 16) throw Error(ErrorCode::PreconditionViolated, "requires p - s > 16");
}

} // namespace

bool impossible_sparsity_predicate(Index n, Index p, Index s, double b_const) {
    if (s <= 1) throw Error(ErrorCode::PreconditionViolated, "requires s > 1");
    require_packing_room(p, s);
    if (!(b_const > 1.0)) throw Error(ErrorCode::PreconditionViolated, "requires B > 1");
    const double bound = 16.0 * static_cast<double>(n) /
                         ((b_const * b_const - 1.0) * std::log(static_cast<double>(p - s)));
    return static_cast<double>(s) > bound;
}

double min_signal_threshold(Index n, Index p, Index s, double b_const) {
    require_packing_room(p, s);
    if (n < 1) throw Error(ErrorCode::PreconditionViolated, "requires n >= 1");
    if (!(b_const >= 1.0)) throw Error(ErrorCode::PreconditionViolated, "requires B >= 1");
    return std::sqrt((b_const * b_const - 1.0) * std::log(static_cast<double>(p - s)) /
                     (8.0 * static_cast<double>(n)));
}

double kl_rank1(const SpikedPair& pair) {
    constexpr double tol = 1e-10;
    auto unit = [](const Vector& v) { return std::abs(v.norm() - 1.0) <= tol; };
    if (!unit(pair.alpha1) || !unit(pair.alpha2) || !unit(pair.beta)) {
        throw Error(ErrorCode::NotUnitNorm, "alpha1, alpha2 and beta must be unit vectors");
    }
    if (pair.alpha1.size() != pair.alpha2.size()) {
        throw Error(ErrorCode::DimensionMismatch, "alpha1 and alpha2 differ in length");
    }
    if (!(pair.rho >= 0.0 && pair.rho < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "rho must lie in [0, 1)");
    }
    const double rho2 = pair.rho * pair.rho;
    return rho2 * (pair.alpha1 - pair.alpha2).squaredNorm() / (2.0 * (1.0 - rho2));
}

double fano_lower_bound(double n, double rho, double sup_pair_dist_sq, double family_size) {
    if (family_size < 3.0) throw Error(ErrorCode::FamilyTooSmall, "family needs at least 3 members");
    if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorCode::InvalidArgument, "rho must lie in [0, 1)");
    const double rho2 = rho * rho;
    const double info = n * rho2 * sup_pair_dist_sq / (1.0 - rho2);
    const double bound = 1.0 - (info + std::log(2.0)) / std::log(family_size - 1.0);
    return std::max(0.0, bound);
}

} // namespace scca
