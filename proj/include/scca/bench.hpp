#pragma once

// Monte Carlo harness for the rank-one simulation design: sweeps (p, s)
// grid points, replicates, runs each recovery method on both sides and
// records type I / type II / symmetric Hamming errors.

#include "scca/linalg.hpp"
#include "scca/model.hpp"
#include "scca/recover.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scca {

enum class Method {
    WhitenedSvdNaive,   // rows of the full-sample whitened-SVD estimate above the cut
    CleanedWhitenedSvd, // RecoverSupp on the first-half whitened-SVD estimate
    CT,                 // RecoverSupp on the coordinate-thresholded estimate
    CtSparsityAware,    // CT with the cut raised to the s-th largest score
};

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);
std::string_view to_string(CovCase c);
std::optional<CovCase> parse_cov_case(std::string_view name);
/// "alpha" for ForU, "beta" for ForV.
std::string_view side_name(Side side);

struct ExperimentConfig {
    Index n = 1000;
    std::vector<Index> p_list{100, 200, 300};
    /// s / sqrt(n) ratios, ascending.
    std::vector<double> s_grid = equidistant_ratios(16, 0.01, 2.0);
    double rho = 0.5;
    CovCase cov_case = CovCase::IdentityA;
    std::vector<Method> methods{Method::WhitenedSvdNaive, Method::CleanedWhitenedSvd, Method::CT,
                                Method::CtSparsityAware};
    /// Cut constants; unset means the per-case simulation default.
    std::optional<double> cut_alpha;
    std::optional<double> cut_beta;
    double k_mult = 1288.0;
    double c1_mult = 50.0;
    Index replications = 1000;
    std::uint64_t seed = 1;
    std::string output_path = "results.csv";
    /// wall_time_ms is 0 unless enabled, so default output is byte-reproducible.
    bool record_wall_time = false;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    /// Throws InvalidArgument on inconsistent fields.
    void validate() const;
    double cut_constant(Side side) const;
    /// Distinct values of round(ratio sqrt(n)) clamped to [2, p - 17], ascending.
    std::vector<Index> sparsity_levels(Index p) const;

    static std::vector<double> equidistant_ratios(Index count, double lo, double hi);
};

struct ResultRow {
    Method method = Method::CT;
    Side side = Side::ForV;
    Index p = 0;
    Index s = 0;
    Index replication_id = 0;
    std::uint64_t seed = 0;
    double type_one = 0.0;
    double type_two = 0.0;
    double hamming = 0.0;
    bool exact = false;
    double wall_time_ms = 0.0;
    std::string error; // empty on success

    bool operator==(const ResultRow&) const = default;
};

struct SummaryRow {
    Method method = Method::CT;
    Side side = Side::ForV;
    Index p = 0;
    Index s = 0;
    double mean_type_one = 0.0;
    double se_type_one = 0.0;
    double mean_type_two = 0.0;
    double se_type_two = 0.0;
    double mean_hamming = 0.0;
    double se_hamming = 0.0;
    double exact_rate = 0.0;
};

/// Seed of one (grid point, replication) task: base seed XOR a stable hash.
std::uint64_t replication_seed(std::uint64_t base_seed, Index p, Index s, Index replication_id);

/// Runs one method on one side for an already drawn sample.
SupportEstimate run_method(Method method, Side side, const SplitSample& sample,
                           const CcaModel& model, Index s, const ExperimentConfig& config);

/// Full sweep; rows sorted by (method, side, p, s, replication_id).
/// Per-row failures are recorded in `error` and never abort the sweep.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

/// Mean and standard error per (method, side, p, s) over rows without error.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

// --- I/O -------------------------------------------------------------------

inline constexpr std::string_view kResultsHeader =
    "method,side,p,s,replication_id,seed,type_one,type_two,hamming,exact,wall_time_ms,error";
inline constexpr std::string_view kSummaryHeader =
    "method,side,p,s,mean_type_one,se_type_one,mean_type_two,se_type_two,mean_hamming,se_hamming,"
    "exact_rate";

/// Flat `key = value` text with `[a, b]` lists and `#` comments. Throws
/// ParseError on unknown keys or malformed values.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

/// 17 significant digits.
std::string format_double(double v);

} // namespace scca
