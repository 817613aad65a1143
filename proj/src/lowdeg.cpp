#include "scca/lowdeg.hpp"

#include "scca/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <thread>
#include <tuple>
#include <vector>

namespace scca {

void LowDegConfig::validate() const {
    if (n < 1 || p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "n, p, q must be positive");
    if (s_x < 1 || s_x > p || s_y < 1 || s_y > q) {
        throw Error(ErrorCode::InvalidArgument, "sparsities must lie in [1, p] and [1, q]");
    }
    if (!(b_const > 2.0)) throw Error(ErrorCode::InvalidArgument, "B must exceed 2");
    if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
    if (mc_samples < 1) throw Error(ErrorCode::InvalidArgument, "mc_samples must be positive");
    if (shards < 1) throw Error(ErrorCode::InvalidArgument, "shards must be positive");
}

bool LowDegConfig::degree_hypothesis_holds() const {
    const double d = static_cast<double>(degree);
    return d <= std::sqrt(static_cast<double>(p)) && d <= std::sqrt(static_cast<double>(q)) &&
           degree <= n;
}

Vector sample_rademacher_prior(Index dim, Index s, std::mt19937_64& gen) {
    if (s < 1 || s > dim) throw Error(ErrorCode::InvalidArgument, "s must lie in [1, dim]");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double half_mass = static_cast<double>(s) / (2.0 * static_cast<double>(dim));
    const double mag = 1.0 / std::sqrt(static_cast<double>(s));
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) {
        const double u = unif(gen);
        v(i) = u < half_mass ? mag : (u < 2.0 * half_mass ? -mag : 0.0);
    }
    return v;
}

Vector sample_rademacher_prior(Index dim, Index s, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    return sample_rademacher_prior(dim, s, gen);
}

double SignedLog::value() const {
    if (log_abs == -std::numeric_limits<double>::infinity()) return 0.0;
    if (log_abs > std::log(std::numeric_limits<double>::max())) {
        throw Error(ErrorCode::Overflow, "truncated norm term exceeds double range");
    }
    return sign * std::exp(log_abs);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

} // namespace

SignedLog truncated_negative_binomial(Index n, double x, Index max_d, bool even_only) {
    // Positive and negative terms are accumulated separately, then combined.
    double log_pos = 0.0; // d = 0 term is 1
    double log_neg = kNegInf;
    if (x != 0.0) {
        const double log_x = std::log(std::abs(x));
        const double lg_n = std::lgamma(static_cast<double>(n));
        for (Index d = 1; d <= max_d; ++d) {
            if (even_only && d % 2 == 1) continue;
            const double dd = static_cast<double>(d);
            const double log_term = std::lgamma(dd + static_cast<double>(n)) - std::lgamma(dd + 1.0) -
                                    lg_n + dd * log_x;
            if (x < 0.0 && d % 2 == 1) {
                log_neg = log_add(log_neg, log_term);
            } else {
                log_pos = log_add(log_pos, log_term);
            }
        }
    }
    if (log_neg == kNegInf) return {1.0, log_pos};
    if (log_pos == log_neg) return {1.0, kNegInf};
    if (log_pos > log_neg) return {1.0, log_pos + std::log1p(-std::exp(log_neg - log_pos))};
    return {-1.0, log_neg + std::log1p(-std::exp(log_pos - log_neg))};
}

namespace {

// Integer sufficient statistics of two replica draws on one block.
struct ReplicaDraw {
    Index nnz1 = 0;
    Index nnz2 = 0;
    Index signed_overlap = 0; // (#agreeing - #disagreeing) nonzero overlaps
};

ReplicaDraw draw_replicas(Index dim, Index s, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double half_mass = static_cast<double>(s) / (2.0 * static_cast<double>(dim));
    auto three_point = [&]() {
        const double u = unif(gen);
        return u < half_mass ? 1 : (u < 2.0 * half_mass ? -1 : 0);
    };
    ReplicaDraw r;
    for (Index i = 0; i < dim; ++i) {
        const int a = three_point();
        const int b = three_point();
        r.nnz1 += a != 0;
        r.nnz2 += b != 0;
        r.signed_overlap += a * b;
    }
    return r;
}

// ||a||^2 ||b||^2 < B^2 with ||a||^2 = nnz_a / s_a.
bool within_ball(Index nnz_a, Index nnz_b, Index s_a, Index s_b, double b_const) {
    return static_cast<double>(nnz_a * nnz_b) <
           b_const * b_const * static_cast<double>(s_a) * static_cast<double>(s_b);
}

double spike_product(Index overlap_a, Index overlap_b, const LowDegConfig& c) {
    return (static_cast<double>(overlap_a) / static_cast<double>(c.s_x)) *
           (static_cast<double>(overlap_b) / static_cast<double>(c.s_y)) / (c.b_const * c.b_const);
}

struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        count += 1.0;
        const double delta = v - mean;
        mean += delta / count;
        m2 += delta * (v - mean);
    }
    void merge(const Moments& o) {
        if (o.count == 0.0) return;
        const double total = count + o.count;
        const double delta = o.mean - mean;
        mean += delta * o.count / total;
        m2 += o.m2 + delta * delta * count * o.count / total;
        count = total;
    }
};

Moments run_shard(const LowDegConfig& c, Index samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const Index max_d = c.degree / 2;
    Moments m;
    for (Index i = 0; i < samples; ++i) {
        const ReplicaDraw a = draw_replicas(c.p, c.s_x, gen);
        const ReplicaDraw b = draw_replicas(c.q, c.s_y, gen);
        const bool w = within_ball(a.nnz1, b.nnz1, c.s_x, c.s_y, c.b_const) &&
                       within_ball(a.nnz2, b.nnz2, c.s_x, c.s_y, c.b_const);
        double v = 0.0;
        if (w) {
            v = truncated_negative_binomial(c.n, spike_product(a.signed_overlap, b.signed_overlap, c),
                                            max_d)
                    .value();
        }
        m.push(v);
    }
    return m;
}

// Aggregated law of ReplicaDraw on one block.
using CountLaw = std::map<std::tuple<Index, Index, Index>, double>;

CountLaw replica_count_law(Index dim, Index s) {
    // Pascal triangle; exact in double for the dimensions this is used at.
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(dim + 1));
    for (Index i = 0; i <= dim; ++i) {
        auto& row = binom[static_cast<std::size_t>(i)];
        row.assign(static_cast<std::size_t>(i + 1), 1.0);
        for (Index j = 1; j < i; ++j) {
            const auto& prev = binom[static_cast<std::size_t>(i - 1)];
            row[static_cast<std::size_t>(j)] =
                prev[static_cast<std::size_t>(j - 1)] + prev[static_cast<std::size_t>(j)];
        }
    }
    auto choose = [&](Index a, Index b) {
        return binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    };

    const double pi = static_cast<double>(s) / static_cast<double>(dim);
    const double p_same = 0.5 * pi * pi; // both nonzero, same sign (and likewise opposite)
    const double p_one = pi * (1.0 - pi); // exactly one replica nonzero
    const double p_none = (1.0 - pi) * (1.0 - pi);

    CountLaw law;
    for (Index kp = 0; kp <= dim; ++kp) {
        for (Index km = 0; kp + km <= dim; ++km) {
            for (Index m1 = 0; kp + km + m1 <= dim; ++m1) {
                for (Index m2 = 0; kp + km + m1 + m2 <= dim; ++m2) {
                    const Index rest = dim - kp - km - m1 - m2;
                    const double coef = choose(dim, kp) * choose(dim - kp, km) *
                                        choose(dim - kp - km, m1) * choose(dim - kp - km - m1, m2);
                    const double prob = coef * std::pow(p_same, static_cast<double>(kp + km)) *
                                        std::pow(p_one, static_cast<double>(m1 + m2)) *
                                        std::pow(p_none, static_cast<double>(rest));
                    if (prob == 0.0) continue;
                    law[{kp + km + m1, kp + km + m2, kp - km}] += prob;
                }
            }
        }
    }
    return law;
}

} // namespace

NormEstimate lowdeg_norm_mc(const LowDegConfig& config) {
    config.validate();
    const Index shards = std::min(config.shards, config.mc_samples);
    const Index base = config.mc_samples / shards;
    const Index extra = config.mc_samples % shards;

    std::vector<Moments> results(static_cast<std::size_t>(shards));
    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(shards)));
    for (Index start = 0; start < shards; start += workers) {
        std::vector<std::future<Moments>> batch;
        for (Index k = start; k < std::min<Index>(shards, start + workers); ++k) {
            const Index count = base + (k < extra ? 1 : 0);
            const std::uint64_t seed = mix_seed(config.seed ^ mix_seed(static_cast<std::uint64_t>(k) + 1));
            batch.push_back(std::async(std::launch::async, run_shard, std::cref(config), count, seed));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            results[static_cast<std::size_t>(start) + i] = batch[i].get();
        }
    }

    Moments total;
    for (const Moments& m : results) total.merge(m);
    NormEstimate est;
    est.method = NormMethod::MonteCarlo;
    est.value = total.mean;
    est.std_error = total.count > 1.0 ? std::sqrt(total.m2 / (total.count - 1.0) / total.count) : 0.0;
    return est;
}

NormEstimate lowdeg_norm_exact(const LowDegConfig& config) {
    config.validate();
    const auto enumeration_cost = [](Index dim) {
        const double d = static_cast<double>(dim + 1);
        return d * d * d * d;
    };
    if (enumeration_cost(config.p) > 1e8 || enumeration_cost(config.q) > 1e8) {
        throw Error(ErrorCode::TooLarge, "instance too large for exact evaluation");
    }
    const CountLaw law_a = replica_count_law(config.p, config.s_x);
    const CountLaw law_b = replica_count_law(config.q, config.s_y);
    if (static_cast<double>(law_a.size()) * static_cast<double>(law_b.size()) > 1e8) {
        throw Error(ErrorCode::TooLarge, "instance too large for exact evaluation");
    }

    // Odd degrees vanish by the sign symmetry of the prior.
    const Index max_d = config.degree / 2;
    double total = 0.0;
    for (const auto& [ka, pa] : law_a) {
        const auto& [a1, a2, oa] = ka;
        for (const auto& [kb, pb] : law_b) {
            const auto& [b1, b2, ob] = kb;
            if (!within_ball(a1, b1, config.s_x, config.s_y, config.b_const) ||
                !within_ball(a2, b2, config.s_x, config.s_y, config.b_const)) {
                continue;
            }
            const double inner =
                truncated_negative_binomial(config.n, spike_product(oa, ob, config), max_d, true).value();
            total += pa * pb * inner;
        }
    }
    return {total, 0.0, NormMethod::Exact};
}

} // namespace scca
