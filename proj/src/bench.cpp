#include "scca/bench.hpp"

#include "scca/error.hpp"
#include "scca/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

namespace scca {

std::string_view to_string(Method m) {
    switch (m) {
    case Method::WhitenedSvdNaive: return "WhitenedSvdNaive";
    case Method::CleanedWhitenedSvd: return "CleanedWhitenedSvd";
    case Method::CT: return "CT";
    case Method::CtSparsityAware: return "CtSparsityAware";
    }
    return "Unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::WhitenedSvdNaive, Method::CleanedWhitenedSvd, Method::CT,
                     Method::CtSparsityAware}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

std::string_view to_string(CovCase c) {
    return c == CovCase::IdentityA ? "IdentityA" : "BandedB";
}

std::optional<CovCase> parse_cov_case(std::string_view name) {
    if (name == "IdentityA") return CovCase::IdentityA;
    if (name == "BandedB") return CovCase::BandedB;
    return std::nullopt;
}

std::string_view side_name(Side side) { return side == Side::ForU ? "alpha" : "beta"; }

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
    if (n < 4) fail("n must be at least 4");
    if (p_list.empty()) fail("p_list is empty");
    for (Index p : p_list) {
        if (p < 19) fail("every p must be at least 19 so that p - s > 16 leaves s >= 2");
    }
    if (s_grid.empty()) fail("s_grid is empty");
    if (!std::is_sorted(s_grid.begin(), s_grid.end())) fail("s_grid must be ascending");
    for (double r : s_grid) {
        if (!(r > 0.0)) fail("s_grid ratios must be positive");
    }
    if (!(rho > 0.0 && rho < 1.0)) fail("rho must lie in (0, 1)");
    if (methods.empty()) fail("no methods selected");
    if (replications < 1) fail("replications must be at least 1");
    if (cut_alpha && !(*cut_alpha >= 0.0)) fail("cut constant must be nonnegative");
    if (cut_beta && !(*cut_beta >= 0.0)) fail("cut constant must be nonnegative");
    if (!(k_mult > 0.0) || !(c1_mult > 0.0)) fail("CT constants must be positive");
}

double ExperimentConfig::cut_constant(Side side) const {
    const auto& user = side == Side::ForU ? cut_alpha : cut_beta;
    return user ? *user : default_cut_constant(cov_case, side);
}

std::vector<Index> ExperimentConfig::sparsity_levels(Index p) const {
    std::vector<Index> out;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (double ratio : s_grid) {
        const auto s = static_cast<Index>(std::llround(ratio * root_n));
        out.push_back(std::clamp<Index>(s, 2, p - 17));
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> ExperimentConfig::equidistant_ratios(Index count, double lo, double hi) {
    if (count < 1 || !(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "bad ratio grid");
    if (count == 1) return {lo};
    std::vector<double> r(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) {
        r[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    r.back() = hi;
    return r;
}

std::uint64_t replication_seed(std::uint64_t base_seed, Index p, Index s, Index replication_id) {
    std::uint64_t h = mix_seed(static_cast<std::uint64_t>(p));
    h = mix_seed(h ^ static_cast<std::uint64_t>(s));
    h = mix_seed(h ^ static_cast<std::uint64_t>(replication_id));
    return base_seed ^ h;
}

SupportEstimate run_method(Method method, Side side, const SplitSample& sample,
                           const CcaModel& model, Index s, const ExperimentConfig& config) {
    constexpr Index r = 1;
    const ThresholdPolicy cut = ThresholdPolicy::simulation(config.cut_constant(side));
    switch (method) {
    case Method::WhitenedSvdNaive: {
        // No split: the estimate itself is thresholded.
        const CutContext ctx = cut_context_for(model, sample.n(), r, side);
        SupportEstimate est;
        est.side = side;
        if (side == Side::ForU) {
            est.score_matrix = whitened_svd_directions({sample.x, sample.y}, model, r).directions;
        } else {
            est.score_matrix =
                whitened_svd_directions({sample.y, sample.x}, model.transposed(), r).directions;
        }
        est.cut_used = cut.resolve(ctx, est.score_matrix);
        est.indices = rows_above(est.score_matrix, est.cut_used);
        return est;
    }
    case Method::CleanedWhitenedSvd: {
        CtThreshold zero;
        return ct_recover_support(sample, model, r, zero, cut, side);
    }
    case Method::CT:
        return ct_recover_support(sample, model, r,
                                  ct_threshold_for_model(model, config.k_mult, config.c1_mult), cut,
                                  side);
    case Method::CtSparsityAware:
        return ct_recover_support(sample, model, r,
                                  ct_threshold_for_model(model, config.k_mult, config.c1_mult),
                                  ThresholdPolicy::sparsity_aware(cut, s), side);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method");
}

namespace {

struct Task {
    Index p;
    Index s;
    Index replication_id;
};

std::string sanitize(std::string msg) {
    for (char& c : msg) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return msg.empty() ? "error" : msg;
}

std::vector<ResultRow> run_task(const Task& task, const ExperimentConfig& config,
                                const std::optional<CcaModel>& model, const std::string& model_error) {
    std::vector<ResultRow> rows;
    const std::uint64_t seed = replication_seed(config.seed, task.p, task.s, task.replication_id);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto error_row = [&](Method m, Side side, const std::string& msg) {
        ResultRow row;
        row.method = m;
        row.side = side;
        row.p = task.p;
        row.s = task.s;
        row.replication_id = task.replication_id;
        row.seed = seed;
        row.type_one = row.type_two = row.hamming = nan;
        row.error = sanitize(msg);
        return row;
    };

    std::optional<SplitSample> data;
    std::string data_error = model_error;
    if (model) {
        try {
            data = sample(*model, config.n, seed);
        } catch (const std::exception& e) {
            data_error = e.what();
        }
    }

    for (Method m : config.methods) {
        for (Side side : {Side::ForU, Side::ForV}) {
            if (!data) {
                rows.push_back(error_row(m, side, data_error));
                continue;
            }
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const SupportEstimate est = run_method(m, side, *data, *model, task.s, config);
                const auto t1 = std::chrono::steady_clock::now();
                const SupportTruth truth = support_truth(*model);
                const auto& d_true = side == Side::ForU ? truth.d_u : truth.d_v;
                const Index dim = side == Side::ForU ? model->p() : model->q();
                const RecoveryErrors err = recovery_errors(est.indices, d_true, dim);

                ResultRow row;
                row.method = m;
                row.side = side;
                row.p = task.p;
                row.s = task.s;
                row.replication_id = task.replication_id;
                row.seed = seed;
                row.type_one = err.type_one;
                row.type_two = err.type_two;
                row.hamming = err.hamming;
                row.exact = err.exact;
                if (config.record_wall_time) {
                    row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                }
                rows.push_back(std::move(row));
            } catch (const std::exception& e) {
                rows.push_back(error_row(m, side, e.what()));
            }
        }
    }
    return rows;
}

auto sort_key(const ResultRow& r) {
    return std::make_tuple(to_string(r.method), side_name(r.side), r.p, r.s, r.replication_id);
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    config.validate();

    // Models are shared by all replications of a grid point.
    std::map<std::pair<Index, Index>, std::optional<CcaModel>> models;
    std::map<std::pair<Index, Index>, std::string> model_errors;
    std::vector<Task> tasks;
    for (Index p : config.p_list) {
        for (Index s : config.sparsity_levels(p)) {
            try {
                models.emplace(std::make_pair(p, s),
                               make_rank1_model(p, p, s, config.rho, config.cov_case));
            } catch (const std::exception& e) {
                models.emplace(std::make_pair(p, s), std::nullopt);
                model_errors[{p, s}] = e.what();
            }
            for (Index rep = 0; rep < config.replications; ++rep) tasks.push_back({p, s, rep});
        }
    }

    std::vector<std::vector<ResultRow>> per_task(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto key = std::make_pair(tasks[i].p, tasks[i].s);
            per_task[i] = run_task(tasks[i], config, models.at(key), model_errors.at(key));
        }
    };
    unsigned n_threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(tasks.size())));

    for (const auto& [key, model] : models) model_errors.try_emplace(key);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<ResultRow> rows;
    for (auto& chunk : per_task) {
        for (auto& row : chunk) rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const ResultRow& a, const ResultRow& b) { return sort_key(a) < sort_key(b); });
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "cannot summarize an empty table");

    struct Acc {
        Method method;
        Side side;
        std::vector<double> t1, t2, ham;
        std::size_t exact = 0;
    };
    std::map<std::tuple<std::string_view, std::string_view, Index, Index>, Acc> groups;
    for (const ResultRow& r : rows) {
        auto key = std::make_tuple(to_string(r.method), side_name(r.side), r.p, r.s);
        auto [it, inserted] = groups.try_emplace(key, Acc{r.method, r.side, {}, {}, {}, 0});
        if (!r.error.empty()) continue;
        it->second.t1.push_back(r.type_one);
        it->second.t2.push_back(r.type_two);
        it->second.ham.push_back(r.hamming);
        it->second.exact += r.exact ? 1 : 0;
    }

    auto mean_se = [](const std::vector<double>& v) -> std::pair<double, double> {
        if (v.empty()) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            return {nan, nan};
        }
        const double m = static_cast<double>(v.size());
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= m;
        if (v.size() < 2) return {mean, 0.0};
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return {mean, std::sqrt(ss / (m - 1.0) / m)};
    };

    std::vector<SummaryRow> out;
    for (const auto& [key, acc] : groups) {
        SummaryRow s;
        s.method = acc.method;
        s.side = acc.side;
        s.p = std::get<2>(key);
        s.s = std::get<3>(key);
        std::tie(s.mean_type_one, s.se_type_one) = mean_se(acc.t1);
        std::tie(s.mean_type_two, s.se_type_two) = mean_se(acc.t2);
        std::tie(s.mean_hamming, s.se_hamming) = mean_se(acc.ham);
        s.exact_rate = acc.t1.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : static_cast<double>(acc.exact) / static_cast<double>(acc.t1.size());
        out.push_back(s);
    }
    return out;
}

} // namespace scca
