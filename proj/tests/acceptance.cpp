// Acceptance suite: one PASS/FAIL line per criterion.
//
//   scca_acceptance            run all criteria
//   scca_acceptance 3 7        run the listed criteria
//
// Exit status is 0 iff every requested criterion passed.

#include "lowdeg_oracle.hpp"
#include "scca/bench.hpp"
#include "scca/covariance.hpp"
#include "scca/error.hpp"
#include "scca/lowdeg.hpp"
#include "scca/metrics.hpp"
#include "scca/recover.hpp"
#include "scca/theory.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#ifndef SCCA_DESK_CONFIG
#define SCCA_DESK_CONFIG "configs/desk_scale.cfg"
#endif

using namespace scca;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// --- 1 ---------------------------------------------------------------------

Outcome oracle_identities() {
    std::mt19937_64 gen(1001);
    std::uniform_int_distribution<Index> dim(3, 30);
    double worst_rep = 0.0, worst_orth = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Index p = dim(gen), q = dim(gen);
        const Index r = 1 + trial % 3;
        const CcaModel m = testing::random_model(gen, std::max(p, r), std::max(q, r), r);
        const Matrix rep = inverse_spd(m.sigma_y()) * m.sigma_xy().transpose() * m.u() -
                           m.v() * m.lambda().asDiagonal();
        worst_rep = std::max(worst_rep, rep.cwiseAbs().maxCoeff());
        const Matrix orth = m.u().transpose() * m.sigma_x() * m.u() - Matrix::Identity(r, r);
        worst_orth = std::max(worst_orth, orth.cwiseAbs().maxCoeff());
    }
    return {worst_rep < 1e-10 && worst_orth < 1e-8,
            fmt("max representation residual %.3g (< 1e-10), max orthonormality residual %.3g (< 1e-8)",
                worst_rep, worst_orth)};
}

// --- 2 ---------------------------------------------------------------------

Outcome sampling_fidelity() {
    Matrix sx(3, 3), sy(3, 3);
    sx << 1.0, 0.3, 0.0, 0.3, 1.0, 0.2, 0.0, 0.2, 1.0;
    sy << 1.5, 0.0, 0.4, 0.0, 1.0, 0.0, 0.4, 0.0, 0.8;
    Matrix u(3, 1), v(3, 1);
    u << 1.0, 1.0, 0.0;
    v << 0.0, 1.0, 1.0;
    Vector lambda(1);
    lambda << 0.6;
    const CcaModel m = build_model(sx, sy, u, v, lambda, 5.0);
    const Index n = 200000;
    const double tol = 5.0 / std::sqrt(static_cast<double>(n));
    const Matrix truth = joint_covariance(m);
    auto joint = [](const SplitSample& s) {
        Matrix d(s.n(), s.x.cols() + s.y.cols());
        d << s.x, s.y;
        return empirical_cross_cov(d, d);
    };
    const Matrix a = joint(sample(m, n, 2024));
    const Matrix b = joint(sample_hidden_variable(m, n, 2025));
    const double da = (a - truth).cwiseAbs().maxCoeff();
    const double db = (b - truth).cwiseAbs().maxCoeff();
    const double dab = (a - b).cwiseAbs().maxCoeff();
    return {da < tol && db < tol && dab < tol,
            fmt("joint %.4f, hidden-variable %.4f, between samplers %.4f (tolerance %.4f)", da, db, dab,
                tol)};
}

// --- 3 ---------------------------------------------------------------------

double log_det_spd(const Matrix& a) {
    Eigen::LLT<Matrix> llt(a);
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Outcome kl_equivalence() {
    std::mt19937_64 gen(3003);
    std::uniform_int_distribution<Index> dim(1, 8);
    std::uniform_real_distribution<double> corr(0.05, 0.9);
    auto unit = [&](Index d) {
        Vector v = testing::gaussian_matrix(gen, d, 1).col(0);
        return Vector(v / v.norm());
    };
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Index p = dim(gen), q = dim(gen);
        const SpikedPair pair{unit(p), unit(p), unit(q), corr(gen)};
        auto joint = [&](const Vector& a) {
            Matrix s = Matrix::Identity(p + q, p + q);
            s.topRightCorner(p, q) = pair.rho * a * pair.beta.transpose();
            s.bottomLeftCorner(q, p) = pair.rho * pair.beta * a.transpose();
            return s;
        };
        const Matrix s1 = joint(pair.alpha1);
        const Matrix s2 = joint(pair.alpha2);
        const double dense = 0.5 * (log_det_spd(s2) - log_det_spd(s1) - static_cast<double>(p + q) +
                                    Eigen::LLT<Matrix>(s2).solve(s1).trace());
        worst = std::max(worst, std::abs(dense - kl_rank1(pair)));
    }
    return {worst < 1e-10, fmt("max |closed form - dense| = %.3g over 100 instances (< 1e-10)", worst)};
}

// --- 4 ---------------------------------------------------------------------

Outcome fano_consistency() {
    int points = 0, impossible = 0, violations = 0;
    double min_bound = 1.0;
    for (double n : {10.0, 100.0, 1000.0, 1e4, 1e5}) {
        for (Index p : {50, 200, 1000, 5000}) {
            const Index top = p - 17;
            for (Index s : {Index{2}, Index{5}, p / 4, p / 2, top}) {
                for (double b : {1.5, 3.0}) {
                    ++points;
                    if (!impossible_sparsity_predicate(static_cast<Index>(n), p, s, b)) continue;
                    ++impossible;
                    const double sd = static_cast<double>(s);
                    const double bound =
                        fano_lower_bound(n, 1.0 / b, 4.0 / sd, sd * static_cast<double>(p - s));
                    min_bound = std::min(min_bound, bound);
                    if (!(bound > 0.5)) ++violations;
                }
            }
        }
    }
    return {violations == 0 && impossible > 0 && points == 200,
            fmt("%d grid points, %d flagged impossible, min Fano bound there %.4f (> 0.5), %d violations",
                points, impossible, min_bound, violations)};
}

// --- 5 ---------------------------------------------------------------------

Outcome easy_regime() {
    const CcaModel m = make_rank1_model(50, 50, 3, 0.5, CovCase::IdentityA);
    const SupportTruth truth = support_truth(m);
    const CtThreshold t = ct_threshold_for_model(m);
    const auto cut_u = ThresholdPolicy::simulation(default_cut_constant(CovCase::IdentityA, Side::ForU));
    const auto cut_v = ThresholdPolicy::simulation(default_cut_constant(CovCase::IdentityA, Side::ForV));
    int exact = 0, deficient = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const SplitSample s = sample(m, 2000, replication_seed(5005, 50, 3, static_cast<Index>(rep)));
        const auto u = ct_recover_support(s, m, 1, t, cut_u, Side::ForU);
        const auto v = ct_recover_support(s, m, 1, t, cut_v, Side::ForV);
        exact += (u.indices == truth.d_u && v.indices == truth.d_v) ? 1 : 0;
        deficient += u.score_matrix.cwiseAbs().maxCoeff() == 0.0 ? 1 : 0;
    }
    const char* case_name = t.resolved_case == CtCase::CaseI    ? "I"
                            : t.resolved_case == CtCase::CaseII ? "II"
                                                                : "III";
    return {exact >= 95,
            fmt("exact recovery of both supports in %d/100 (need >= 95); threshold case %s, "
                "theta/sqrt(N) = %.3f, all-zero direction estimates %d/100",
                exact, case_name, t.theta / std::sqrt(1000.0), deficient)};
}

// --- 6 / 10 ----------------------------------------------------------------

std::string desk_csv(const ExperimentConfig& cfg) {
    std::ostringstream os;
    write_results_csv(os, run_experiment(cfg));
    return os.str();
}

Outcome difficult_regime() {
    const ExperimentConfig cfg = load_config(SCCA_DESK_CONFIG);
    const auto summary = summarize(run_experiment(cfg));
    const Index root_n_s = static_cast<Index>(std::llround(1.0 * std::sqrt(static_cast<double>(cfg.n))));

    // (method, side, s) -> row
    std::map<std::tuple<Method, Side, Index>, SummaryRow> by;
    std::vector<Index> levels;
    for (const auto& r : summary) {
        by[{r.method, r.side, r.s}] = r;
        if (std::find(levels.begin(), levels.end(), r.s) == levels.end()) levels.push_back(r.s);
    }
    std::sort(levels.begin(), levels.end());

    bool a = true;
    std::string a_note;
    for (Index s : levels) {
        for (Side side : {Side::ForU, Side::ForV}) {
            const double naive = by.at({Method::WhitenedSvdNaive, side, s}).mean_type_one;
            for (Method m : cfg.methods) {
                if (m == Method::WhitenedSvdNaive) continue;
                const double other = by.at({m, side, s}).mean_type_one;
                if (!(naive < other)) {
                    a = false;
                }
            }
            a_note += fmt(" s=%lld/%s naive %.3f vs CT %.3f;", static_cast<long long>(s),
                          std::string(side_name(side)).c_str(), naive,
                          by.at({Method::CT, side, s}).mean_type_one);
        }
    }

    bool b = true;
    std::string b_note;
    for (Side side : {Side::ForU, Side::ForV}) {
        const double naive = by.at({Method::WhitenedSvdNaive, side, root_n_s}).mean_type_two;
        double best_other = 0.0;
        for (Method m : cfg.methods) {
            if (m == Method::WhitenedSvdNaive) continue;
            best_other = std::max(best_other, by.at({m, side, root_n_s}).mean_type_two);
        }
        if (!(naive > best_other)) b = false;
        b_note += fmt(" %s naive %.3f vs max other %.3f;", std::string(side_name(side)).c_str(), naive,
                      best_other);
    }

    const double ct_ham = by.at({Method::CT, Side::ForV, root_n_s}).mean_hamming;
    const double naive_ham = by.at({Method::WhitenedSvdNaive, Side::ForV, root_n_s}).mean_hamming;
    const bool c = ct_ham < naive_ham;

    return {a && b && c,
            fmt("(a) naive lowest type I: %s [%s ] (b) naive largest type II at s=%lld: %s [%s ] "
                "(c) beta Hamming CT %.3f < naive %.3f: %s",
                a ? "yes" : "no", a_note.c_str(), static_cast<long long>(root_n_s), b ? "yes" : "no",
                b_note.c_str(), ct_ham, naive_ham, c ? "yes" : "no")};
}

Outcome determinism() {
    const ExperimentConfig cfg = load_config(SCCA_DESK_CONFIG);
    const std::string first = desk_csv(cfg);
    const std::string second = desk_csv(cfg);
    return {first == second && !first.empty(),
            fmt("%zu bytes, identical: %s", first.size(), first == second ? "yes" : "no")};
}

// --- 7 ---------------------------------------------------------------------

Outcome threshold_partition() {
    std::mt19937_64 gen(7007);
    std::uniform_int_distribution<Index> dim(2, 5000);
    int mismatches = 0;
    std::array<int, 3> counts{0, 0, 0};
    for (int trial = 0; trial < 10000; ++trial) {
        const Index p = dim(gen), q = dim(gen);
        // Log-uniform sparsities so that all three cases are exercised.
        auto log_uniform = [&](Index hi) {
            const double u = std::uniform_real_distribution<double>(0.0, std::log(static_cast<double>(hi)))(gen);
            return std::clamp<Index>(static_cast<Index>(std::exp(u)), 1, hi);
        };
        const Index sx = log_uniform(p);
        const Index sy = log_uniform(q);
        const double k = 1288.0, c1 = 50.0;
        const double total = static_cast<double>(p + q);
        const double sq = std::pow(static_cast<double>(sx + sy), 2.0);
        const double lower = std::pow(2.0, 0.25) * std::pow(total, 0.75);
        const double upper = total / std::exp(1.0);
        const bool one = sq < lower;
        const bool two = lower <= sq && sq <= upper;
        const bool three = sq > upper && !(sq < lower);
        if (static_cast<int>(one) + static_cast<int>(two) + static_cast<int>(three) != 1) {
            ++mismatches;
            continue;
        }
        const double expected = one ? std::sqrt(c1 * std::log(total))
                                : two ? std::sqrt(k * std::log(total / sq))
                                      : 0.0;
        const CtCase expected_case = one ? CtCase::CaseI : two ? CtCase::CaseII : CtCase::CaseIII;
        const CtThreshold t = ct_threshold(p, q, sx, sy, k, c1);
        ++counts[static_cast<std::size_t>(expected_case)];
        if (t.resolved_case != expected_case || std::abs(t.theta - expected) > 1e-12) ++mismatches;
    }
    const CtThreshold e1 = ct_threshold(300, 300, 2, 2, 1288.0, 50.0);
    const CtThreshold e2 = ct_threshold(300, 300, 7, 7, 1288.0, 50.0);
    const CtThreshold e3 = ct_threshold(300, 300, 12, 12, 1288.0, 50.0);
    const bool worked = e1.resolved_case == CtCase::CaseI && std::abs(e1.theta - 17.88) < 0.01 &&
                        e2.resolved_case == CtCase::CaseII && std::abs(e2.theta - 37.97) < 0.01 &&
                        e3.resolved_case == CtCase::CaseIII && e3.theta == 0.0;
    return {mismatches == 0 && worked,
            fmt("10000 draws (case I %d, II %d, III %d), %d mismatches; worked examples %.2f, %.2f, %.2f: %s",
                counts[0], counts[1], counts[2], mismatches, e1.theta, e2.theta, e3.theta,
                worked ? "ok" : "wrong")};
}

// --- 8 ---------------------------------------------------------------------

LowDegConfig ld(Index n, Index p, Index s, double b, Index d, Index samples, std::uint64_t seed) {
    LowDegConfig c;
    c.n = n;
    c.p = c.q = p;
    c.s_x = c.s_y = s;
    c.b_const = b;
    c.degree = d;
    c.mc_samples = samples;
    c.seed = seed;
    return c;
}

Outcome lowdeg_checks() {
    double worst = 0.0;
    for (Index dim = 2; dim <= 4; ++dim) {
        for (Index s = 1; s <= dim; ++s) {
            for (double b : {2.1, 3.0}) {
                LowDegConfig c = ld(4, dim, s, b, 6, 1, 1);
                c.s_y = std::max<Index>(1, s - 1);
                worst = std::max(worst, std::abs(lowdeg_norm_exact(c).value - testing::naive_lowdeg_norm(c)));
            }
        }
    }
    const bool part_a = worst < 1e-12;

    const LowDegConfig mc_cfg = ld(4, 6, 2, 3.0, 4, 1000000, 8008);
    const double exact = lowdeg_norm_exact(mc_cfg).value;
    const NormEstimate mc = lowdeg_norm_mc(mc_cfg);
    const double z = std::abs(mc.value - exact) / mc.std_error;
    const bool part_b = z < 3.0;

    // p/n held at 3 while n doubles.
    double above_max = 0.0, ratio_min = std::numeric_limits<double>::infinity();
    std::string sizes;
    for (Index n : {20, 40}) {
        const Index p = 3 * n;
        const double above = lowdeg_norm_mc(ld(n, p, 7, 3.0, 6, 200000, 9009)).value;
        const double below = lowdeg_norm_mc(ld(n, p, 2, 3.0, 6, 200000, 9010)).value;
        above_max = std::max(above_max, above);
        ratio_min = std::min(ratio_min, below / above);
        sizes += fmt(" n=%lld p=%lld: s=7 %.4f, s=2 %.4f;", static_cast<long long>(n),
                     static_cast<long long>(p), above, below);
    }
    const bool part_c = above_max < 10.0 && ratio_min >= 10.0;

    return {part_a && part_b && part_c,
            fmt("(a) max |exact - enumeration| %.3g: %s (b) MC %.6f vs exact %.6f, %.2f SE: %s "
                "(c)%s bounded: %s, s=2 at least 10x larger: %s",
                worst, part_a ? "ok" : "FAIL", mc.value, exact, z, part_b ? "ok" : "FAIL",
                sizes.c_str(), above_max < 10.0 ? "ok" : "FAIL", ratio_min >= 10.0 ? "ok" : "FAIL")};
}

// --- 9 ---------------------------------------------------------------------

Outcome property_suites() {
    std::mt19937_64 gen(9009);
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::uniform_real_distribution<double> thr(0.0, 5.0);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const double x = val(gen), y = val(gen), t = thr(gen);
        if (std::abs(soft_threshold(x, t) - soft_threshold(y, t)) > std::abs(x - y) + 1e-12) ++bad;
        if (soft_threshold(-x, t) != -soft_threshold(x, t)) ++bad;
        if (std::abs(x) <= t && soft_threshold(x, t) != 0.0) ++bad;
        if (std::abs(x) > t && std::abs(std::abs(soft_threshold(x, t)) - (std::abs(x) - t)) > 1e-12) ++bad;
    }
    const int eta_bad = bad;

    bad = 0;
    std::uniform_int_distribution<Index> dim_d(3, 40);
    for (int i = 0; i < 10000; ++i) {
        const Index dim = dim_d(gen);
        std::bernoulli_distribution in_true(0.3), in_hat(0.4);
        std::vector<Index> d_true, d_hat;
        for (Index k = 0; k < dim; ++k) {
            if (in_true(gen)) d_true.push_back(k);
            if (in_hat(gen)) d_hat.push_back(k);
        }
        if (d_true.empty() || static_cast<Index>(d_true.size()) == dim) continue;
        if (i % 4 == 0) d_hat = d_true;
        const RecoveryErrors e = recovery_errors(d_hat, d_true, dim);
        for (double v : {e.type_one, e.type_two, e.hamming}) {
            if (!(v >= 0.0 && v <= 1.0)) ++bad;
        }
        std::vector<Index> shuffled_hat = d_hat, shuffled_true = d_true;
        std::shuffle(shuffled_hat.begin(), shuffled_hat.end(), gen);
        std::shuffle(shuffled_true.begin(), shuffled_true.end(), gen);
        const RecoveryErrors f = recovery_errors(shuffled_hat, shuffled_true, dim);
        if (f.type_one != e.type_one || f.type_two != e.type_two || f.hamming != e.hamming) ++bad;
        const bool equal = d_hat == d_true;
        if ((e.hamming == 0.0) != equal) ++bad;
        if ((e.type_one == 0.0 && e.type_two == 0.0) != equal) ++bad;
        if (e.exact != equal) ++bad;
    }
    return {eta_bad == 0 && bad == 0,
            fmt("soft-threshold violations %d / 10000, metric violations %d / 10000", eta_bad, bad)};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "oracle identities", 5.0, oracle_identities},
        {2, "sampling fidelity", 30.0, sampling_fidelity},
        {3, "KL oracle equivalence", 5.0, kl_equivalence},
        {4, "Fano consistency", 5.0, fano_consistency},
        {5, "easy-regime exact recovery", 120.0, easy_regime},
        {6, "difficult-regime trends", 600.0, difficult_regime},
        {7, "CT threshold partition", 1.0, threshold_partition},
        {8, "low-degree norm", 180.0, lowdeg_checks},
        {9, "soft-threshold and metric properties", 5.0, property_suites},
        {10, "determinism", 600.0, determinism},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    bool ok = true;
    for (const Criterion& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = out.pass && in_time;
        ok = ok && pass;
        std::printf("criterion %d (%s): %s  %s  [%.2f s, budget %.0f s%s]\n", c.id, c.name,
                    pass ? "PASS" : "FAIL", out.detail.c_str(), secs, c.budget_s,
                    in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    return ok ? 0 : 1;
}
