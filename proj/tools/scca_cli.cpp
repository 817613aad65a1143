// scca: command-line front end for the support-recovery library.
//
//   scca run --config desk.cfg [--output results.csv]
//   scca summarize results.csv [--output summary.csv]
//   scca regime --n 1000 --p 100 --q 100 --sx 3 --sy 3 [--json]
//   scca lowdeg --n 4 --p 6 --q 6 --sx 2 --sy 2 --B 3 --D 4 [--exact]
//   scca bounds --n 1000 --p 100 --s 10 --B 3
//
// Exit codes: 0 success, 2 usage or config error, 3 runtime failure.

#include "scca/bench.hpp"
#include "scca/error.hpp"
#include "scca/lowdeg.hpp"
#include "scca/theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse CCA support recovery toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_output;
    unsigned run_threads = 0;
    auto* run = app.add_subcommand("run", "Run a Monte Carlo sweep from a config file");
    run->add_option("--config,config", config_path, "Config file")->required();
    run->add_option("-o,--output", run_output, "Results CSV (overrides output_path)");
    run->add_option("--threads", run_threads, "Worker threads (0 = hardware)");

    std::string results_path;
    std::string summary_output;
    auto* summ = app.add_subcommand("summarize", "Aggregate a results CSV per grid point");
    summ->add_option("results", results_path, "Results CSV")->required();
    summ->add_option("-o,--output", summary_output, "Summary CSV (default: stdout)");

    long long rn = 0, rp = 0, rq = 0, rsx = 0, rsy = 0;
    bool as_json = false;
    auto* regime = app.add_subcommand("regime", "Classify a sparsity level");
    regime->add_option("--n", rn)->required();
    regime->add_option("--p", rp)->required();
    regime->add_option("--q", rq)->required();
    regime->add_option("--sx", rsx)->required();
    regime->add_option("--sy", rsy)->required();
    regime->add_flag("--json", as_json, "Emit JSON");

    scca::LowDegConfig ld;
    bool exact = false;
    auto* lowdeg = app.add_subcommand("lowdeg", "Truncated low-degree likelihood-ratio norm");
    lowdeg->add_option("--n", ld.n)->required();
    lowdeg->add_option("--p", ld.p)->required();
    lowdeg->add_option("--q", ld.q)->required();
    lowdeg->add_option("--sx", ld.s_x)->required();
    lowdeg->add_option("--sy", ld.s_y)->required();
    lowdeg->add_option("--B", ld.b_const, "Spectrum bound (> 2)")->capture_default_str();
    lowdeg->add_option("--D", ld.degree, "Degree")->required();
    lowdeg->add_option("--samples", ld.mc_samples)->capture_default_str();
    lowdeg->add_option("--seed", ld.seed)->capture_default_str();
    lowdeg->add_flag("--exact", exact, "Exact combinatorial evaluation");

    long long bn = 0, bp = 0, bs = 0;
    double bb = 0.0;
    auto* bounds = app.add_subcommand("bounds", "Information-theoretic limit quantities");
    bounds->add_option("--n", bn)->required();
    bounds->add_option("--p", bp)->required();
    bounds->add_option("--s", bs)->required();
    bounds->add_option("--B", bb)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*run) {
            scca::ExperimentConfig cfg;
            try {
                cfg = scca::load_config(config_path);
            } catch (const scca::Error& e) {
                throw UsageError(e.what());
            }
            if (!run_output.empty()) cfg.output_path = run_output;
            if (run_threads) cfg.threads = run_threads;
            const auto rows = scca::run_experiment(cfg);
            auto out = open_output(cfg.output_path);
            scca::write_results_csv(out, rows);
            std::size_t failed = 0;
            for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
            std::cerr << "wrote " << rows.size() << " rows to " << cfg.output_path;
            if (failed) std::cerr << " (" << failed << " with errors)";
            std::cerr << '\n';
        } else if (*summ) {
            std::ifstream in(results_path);
            if (!in) throw UsageError("cannot open " + results_path);
            std::vector<scca::ResultRow> rows;
            try {
                rows = scca::read_results_csv(in);
            } catch (const scca::Error& e) {
                throw UsageError(e.what());
            }
            const auto summary = scca::summarize(rows);
            if (summary_output.empty()) {
                scca::write_summary_csv(std::cout, summary);
            } else {
                auto out = open_output(summary_output);
                scca::write_summary_csv(out, summary);
            }
        } else if (*regime) {
            const auto rep = scca::classify_regime(rn, rp, rq, rsx, rsy);
            if (as_json) {
                nlohmann::json j{{"regime", std::string(scca::to_string(rep.regime))},
                                 {"easy_boundary", rep.easy_boundary},
                                 {"difficult_boundary", rep.difficult_boundary},
                                 {"hard_boundary", rep.hard_boundary},
                                 {"n", rep.n},
                                 {"p", rep.p},
                                 {"q", rep.q},
                                 {"s_x", rep.s_x},
                                 {"s_y", rep.s_y}};
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << scca::to_string(rep.regime) << '\n'
                          << "easy_boundary " << scca::format_double(rep.easy_boundary) << '\n'
                          << "difficult_boundary " << scca::format_double(rep.difficult_boundary) << '\n'
                          << "hard_boundary " << scca::format_double(rep.hard_boundary) << '\n';
            }
        } else if (*lowdeg) {
            if (!ld.degree_hypothesis_holds()) {
                std::cerr << "warning: D exceeds min(sqrt(p), sqrt(q), n)\n";
            }
            const auto est = exact ? scca::lowdeg_norm_exact(ld) : scca::lowdeg_norm_mc(ld);
            nlohmann::json j{{"value", est.value},
                             {"std_error", est.std_error},
                             {"method", exact ? "exact" : "monte_carlo"}};
            std::cout << j.dump(2) << '\n';
        } else if (*bounds) {
            nlohmann::json j{{"impossible", scca::impossible_sparsity_predicate(bn, bp, bs, bb)},
                             {"min_signal_threshold", scca::min_signal_threshold(bn, bp, bs, bb)}};
            std::cout << j.dump(2) << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
