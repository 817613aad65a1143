#include "scca/recover.hpp"

#include "scca/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace scca {

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

Matrix soft_threshold(const Matrix& m, double t) {
    return m.unaryExpr([t](double x) { return soft_threshold(x, t); });
}

std::vector<Index> rows_above(const Matrix& scores, double cut) {
    std::vector<Index> rows;
    for (Index k = 0; k < scores.rows(); ++k) {
        if (scores.cols() > 0 && scores.row(k).cwiseAbs().maxCoeff() > cut) rows.push_back(k);
    }
    return rows;
}

SupportEstimate recover_supp(const Matrix& u_hat, const Matrix& precision, const Matrix& cross_cov,
                             double cut, Index r, Side side) {
    if (u_hat.cols() != r) {
        throw Error(ErrorCode::DimensionMismatch, "preliminary estimate must have r columns");
    }
    if (precision.rows() != precision.cols() || precision.cols() != cross_cov.rows() ||
        cross_cov.cols() != u_hat.rows()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "need precision q x q, cross-covariance q x p and estimate p x r");
    }
    if (!(cut >= 0.0)) throw Error(ErrorCode::InvalidArgument, "cut must be nonnegative");

    SupportEstimate est;
    est.score_matrix = precision * (cross_cov * u_hat);
    est.indices = rows_above(est.score_matrix, cut);
    est.cut_used = cut;
    est.side = side;
    return est;
}

namespace {

void check_cut_inputs(Index n, Index s_prec) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
    if (s_prec < 1) throw Error(ErrorCode::InvalidArgument, "precision sparsity must be >= 1");
}

double base_rate(Index n, Index p, Index q, Index s_prec) {
    return std::sqrt(std::log(static_cast<double>(p + q)) * static_cast<double>(s_prec) /
                     static_cast<double>(n));
}

} // namespace

double theorem1_cut(Index n, Index p, Index q, Index s_prec, Index r, XiType xi_type, double c_pr) {
    check_cut_inputs(n, s_prec);
    double xi = 1.0;
    switch (xi_type) {
    case XiType::A:
        xi = c_pr * std::sqrt(static_cast<double>(s_prec));
        break;
    case XiType::B:
        xi = c_pr * std::max(std::sqrt(static_cast<double>(r) * std::log(static_cast<double>(q)) /
                                       static_cast<double>(n)),
                             1.0);
        break;
    case XiType::C:
        xi = 1.0;
        break;
    }
    return c_pr * xi * base_rate(n, p, q, s_prec);
}

double simulation_cut(Index n, Index p, Index q, Index s_prec, double c_mult) {
    check_cut_inputs(n, s_prec);
    return c_mult * base_rate(n, p, q, s_prec);
}

double default_cut_constant(CovCase cov_case, Side side) {
    if (cov_case == CovCase::IdentityA) return 1.0;
    return side == Side::ForU ? 0.05 : 0.2;
}

double sparsity_aware_cut(double base_cut, const Matrix& score_matrix, Index s) {
    if (s < 1 || s > score_matrix.rows()) {
        throw Error(ErrorCode::InvalidS, "s must lie in [1, number of rows]");
    }
    std::vector<double> row_scores(static_cast<std::size_t>(score_matrix.rows()));
    for (Index k = 0; k < score_matrix.rows(); ++k) {
        row_scores[static_cast<std::size_t>(k)] =
            score_matrix.cols() > 0 ? score_matrix.row(k).cwiseAbs().maxCoeff() : 0.0;
    }
    auto nth = row_scores.begin() + (s - 1);
    std::nth_element(row_scores.begin(), nth, row_scores.end(), std::greater<>());
    return std::max(base_cut, *nth);
}

ThresholdPolicy ThresholdPolicy::theorem_one(double c_pr, XiType xi_type) {
    return {TheoremOneCut{c_pr, xi_type}};
}

ThresholdPolicy ThresholdPolicy::simulation(double c_mult) { return {SimulationCut{c_mult}}; }

ThresholdPolicy ThresholdPolicy::manual(double value) {
    if (!(value >= 0.0)) throw Error(ErrorCode::InvalidArgument, "cut must be nonnegative");
    return {ManualCut{value}};
}

ThresholdPolicy ThresholdPolicy::sparsity_aware(ThresholdPolicy base, Index s) {
    if (s < 1) throw Error(ErrorCode::InvalidS, "s must be at least 1");
    return {std::make_shared<const SparsityAwareCut>(SparsityAwareCut{std::move(base), s})};
}

double ThresholdPolicy::base_cut(const CutContext& ctx) const {
    struct Visitor {
        const CutContext& ctx;
        double operator()(const TheoremOneCut& k) const {
            return theorem1_cut(ctx.n, ctx.p, ctx.q, ctx.s_prec, ctx.r, k.xi_type, k.c_pr);
        }
        double operator()(const SimulationCut& k) const {
            return simulation_cut(ctx.n, ctx.p, ctx.q, ctx.s_prec, k.c_mult);
        }
        double operator()(const ManualCut& k) const { return k.value; }
        double operator()(const std::shared_ptr<const SparsityAwareCut>& k) const {
            return k->base.base_cut(ctx);
        }
    };
    return std::visit(Visitor{ctx}, kind);
}

double ThresholdPolicy::resolve(const CutContext& ctx, const Matrix& scores) const {
    if (const auto* sa = std::get_if<std::shared_ptr<const SparsityAwareCut>>(&kind)) {
        return sparsity_aware_cut((*sa)->base.resolve(ctx, scores), scores, (*sa)->s);
    }
    return base_cut(ctx);
}

CtThreshold ct_threshold(Index p, Index q, Index s_x, Index s_y, double k_const, double c1_const) {
    if (s_x + s_y < 2) throw Error(ErrorCode::InvalidArgument, "s_x + s_y must be at least 2");
    const double dim = static_cast<double>(p + q);
    const double sum = static_cast<double>(s_x + s_y);
    const double sq = sum * sum;
    CtThreshold t;
    t.k_const = k_const;
    t.c1_const = c1_const;
    if (sq < std::pow(2.0, 0.25) * std::pow(dim, 0.75)) {
        t.resolved_case = CtCase::CaseI;
        t.theta = std::sqrt(c1_const * std::log(dim));
    } else if (sq <= dim / std::exp(1.0)) {
        t.resolved_case = CtCase::CaseII;
        t.theta = std::sqrt(k_const * std::log(dim / sq));
    } else {
        t.resolved_case = CtCase::CaseIII;
        t.theta = 0.0;
    }
    return t;
}

double effective_b(const CcaModel& model) {
    const Spectrum sx = spectrum(model.sigma_x());
    const Spectrum sy = spectrum(model.sigma_y());
    return std::max({sx.max, sy.max, 1.0 / sx.min, 1.0 / sy.min});
}

CtThreshold ct_threshold_for_model(const CcaModel& model, double k_mult, double c1_mult) {
    const double b = effective_b(model);
    const double b4 = b * b * b * b;
    const SupportTruth truth = support_truth(model);
    CtThreshold t = ct_threshold(model.p(), model.q(), truth.s_x, truth.s_y, k_mult * b4, c1_mult * b4);
    t.b_eff = b;
    return t;
}

DirectionEstimate ct_estimate_directions(const SampleHalf& half, const CcaModel& model, Index r,
                                         const CtThreshold& threshold) {
    if (half.x.cols() != model.p() || half.y.cols() != model.q()) {
        throw Error(ErrorCode::DimensionMismatch, "sample half does not match the model");
    }
    if (half.rows() < 2) throw Error(ErrorCode::InvalidArgument, "half needs at least 2 rows");
    return ct_estimate_directions(empirical_cross_cov(half.x, half.y), half.rows(), model, r,
                                  threshold);
}

DirectionEstimate ct_estimate_directions(const Matrix& cross_cov, Index n_rows, const CcaModel& model,
                                         Index r, const CtThreshold& threshold) {
    const Index p = model.p();
    const Index q = model.q();
    if (cross_cov.rows() != p || cross_cov.cols() != q) {
        throw Error(ErrorCode::DimensionMismatch, "cross-covariance does not match the model");
    }
    if (n_rows < 1) throw Error(ErrorCode::InvalidArgument, "row count must be positive");
    if (r < 1 || r > std::min(p, q)) {
        throw Error(ErrorCode::InvalidArgument, "r must lie in [1, min(p, q)]");
    }
    const double n_half = static_cast<double>(n_rows);

    // Peel, threshold, sandwich.
    const Matrix peeled = inverse_spd(model.sigma_x()) * cross_cov * inverse_spd(model.sigma_y());
    const Matrix thresholded = soft_threshold(peeled, threshold.theta / std::sqrt(n_half));
    const Matrix sx_half = sqrtm_psd(model.sigma_x());
    const Matrix sandwich = sx_half * thresholded * sqrtm_psd(model.sigma_y());

    Eigen::BDCSVD<Matrix> svd(sandwich, Eigen::ComputeThinU);
    if (svd.info() != Eigen::Success) {
        throw Error(ErrorCode::SvdFailure, "singular value decomposition failed");
    }
    const Vector& sv = svd.singularValues();
    const double tol = static_cast<double>(std::max(p, q)) * std::numeric_limits<double>::epsilon() *
                       (sv.size() > 0 ? sv(0) : 0.0);

    DirectionEstimate out;
    Matrix u_pre = Matrix::Zero(p, r);
    for (Index j = 0; j < r && j < sv.size(); ++j) {
        if (sv(j) > 0.0 && sv(j) > tol) {
            u_pre.col(j) = svd.matrixU().col(j);
            ++out.effective_rank;
        }
    }
    out.rank_deficient = out.effective_rank < r;
    canonicalize_signs(u_pre);
    out.directions = inv_sqrtm_spd(model.sigma_x()) * u_pre;
    return out;
}

DirectionEstimate whitened_svd_directions(const SampleHalf& half, const CcaModel& model, Index r) {
    CtThreshold zero;
    zero.resolved_case = CtCase::CaseIII;
    zero.theta = 0.0;
    return ct_estimate_directions(half, model, r, zero);
}

CutContext cut_context_for(const CcaModel& model, Index n, Index r, Side side) {
    CutContext ctx;
    ctx.n = n;
    ctx.p = model.p();
    ctx.q = model.q();
    ctx.r = r;
    const Matrix& sigma = side == Side::ForV ? model.sigma_y() : model.sigma_x();
    ctx.s_prec = std::max<Index>(1, row_sparsity(inverse_spd(sigma)));
    return ctx;
}

SupportEstimate ct_recover_support(const SplitSample& sample, const CcaModel& model, Index r,
                                   const CtThreshold& threshold, const ThresholdPolicy& cut_policy,
                                   Side side) {
    auto [first, second] = halves(sample);
    const CutContext ctx = cut_context_for(model, sample.n(), r, side);

    SupportEstimate est;
    if (side == Side::ForV) {
        const DirectionEstimate u_hat = ct_estimate_directions(first, model, r, threshold);
        est = recover_supp(u_hat.directions, inverse_spd(model.sigma_y()),
                           empirical_cross_cov(second.y, second.x), 0.0, r, side);
    } else {
        const SampleHalf swapped{first.y, first.x};
        const DirectionEstimate v_hat =
            ct_estimate_directions(swapped, model.transposed(), r, threshold);
        est = recover_supp(v_hat.directions, inverse_spd(model.sigma_x()),
                           empirical_cross_cov(second.x, second.y), 0.0, r, side);
    }
    est.cut_used = cut_policy.resolve(ctx, est.score_matrix);
    est.indices = rows_above(est.score_matrix, est.cut_used);
    return est;
}

double condition1_error(const Matrix& u_hat, const Matrix& u_true, const Matrix& sigma_x) {
    if (u_hat.rows() != u_true.rows() || u_hat.cols() != u_true.cols() ||
        sigma_x.rows() != u_true.rows() || sigma_x.cols() != u_true.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "estimate, truth and Sigma_x are not conformable");
    }
    double worst = 0.0;
    for (Index i = 0; i < u_true.cols(); ++i) {
        const Vector plus = u_hat.col(i) - u_true.col(i);
        const Vector minus = -u_hat.col(i) - u_true.col(i);
        const double e = std::min(plus.dot(sigma_x * plus), minus.dot(sigma_x * minus));
        worst = std::max(worst, e);
    }
    return worst;
}

} // namespace scca
