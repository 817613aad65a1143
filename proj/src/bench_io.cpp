#include "scca/bench.hpp"

#include "scca/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace scca {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& s, const std::string& what) {
    if (s.empty()) parse_fail(what + ": empty value");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) parse_fail(what + ": not a number: " + s);
    return v;
}

long long to_int(const std::string& s, const std::string& what) {
    if (s.empty()) parse_fail(what + ": empty value");
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE) parse_fail(what + ": not an integer: " + s);
    return v;
}

std::uint64_t to_u64(const std::string& s, const std::string& what) {
    if (s.empty() || s[0] == '-') parse_fail(what + ": not an unsigned integer: " + s);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE) parse_fail(what + ": not an unsigned integer: " + s);
    return v;
}

bool to_bool(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    parse_fail(what + ": expected true or false: " + s);
}

std::vector<std::string> to_list(const std::string& s, const std::string& what) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') parse_fail(what + ": expected [a, b, ...]");
    std::vector<std::string> out;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) parse_fail(what + ": empty list item");
        out.push_back(item);
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::optional<Index> grid_count;
    std::optional<std::pair<double, double>> grid_range;
    bool explicit_grid = false;

    std::stringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string val = trim(std::string_view(line).substr(eq + 1));
        const std::string what = "line " + std::to_string(line_no) + " (" + key + ")";

        if (key == "n") {
            c.n = to_int(val, what);
        } else if (key == "p_list") {
            c.p_list.clear();
            for (const auto& item : to_list(val, what)) c.p_list.push_back(to_int(item, what));
        } else if (key == "s_grid") {
            c.s_grid.clear();
            for (const auto& item : to_list(val, what)) c.s_grid.push_back(to_double(item, what));
            explicit_grid = true;
        } else if (key == "s_grid.count") {
            grid_count = to_int(val, what);
        } else if (key == "s_grid.ratio_range") {
            const auto items = to_list(val, what);
            if (items.size() != 2) parse_fail(what + ": expected [lo, hi]");
            grid_range = std::make_pair(to_double(items[0], what), to_double(items[1], what));
        } else if (key == "rho") {
            c.rho = to_double(val, what);
        } else if (key == "cov_case") {
            const auto cc = parse_cov_case(val);
            if (!cc) parse_fail(what + ": unknown covariance case " + val);
            c.cov_case = *cc;
        } else if (key == "methods") {
            c.methods.clear();
            for (const auto& item : to_list(val, what)) {
                const auto m = parse_method(item);
                if (!m) parse_fail(what + ": unknown method " + item);
                c.methods.push_back(*m);
            }
        } else if (key == "cut_constants.alpha") {
            c.cut_alpha = to_double(val, what);
        } else if (key == "cut_constants.beta") {
            c.cut_beta = to_double(val, what);
        } else if (key == "ct_constants.K_mult") {
            c.k_mult = to_double(val, what);
        } else if (key == "ct_constants.C1_mult") {
            c.c1_mult = to_double(val, what);
        } else if (key == "replications") {
            c.replications = to_int(val, what);
        } else if (key == "seed") {
            c.seed = to_u64(val, what);
        } else if (key == "output_path") {
            c.output_path = val;
        } else if (key == "record_wall_time") {
            c.record_wall_time = to_bool(val, what);
        } else if (key == "threads") {
            const long long t = to_int(val, what);
            if (t < 0) parse_fail(what + ": must be nonnegative");
            c.threads = static_cast<unsigned>(t);
        } else {
            parse_fail(what + ": unknown key");
        }
    }

    if (grid_count || grid_range) {
        if (explicit_grid) parse_fail("give either s_grid or s_grid.count with s_grid.ratio_range");
        if (!grid_count || !grid_range) parse_fail("s_grid.count and s_grid.ratio_range go together");
        try {
            c.s_grid = ExperimentConfig::equidistant_ratios(*grid_count, grid_range->first,
                                                            grid_range->second);
        } catch (const Error& e) {
            parse_fail(e.what());
        }
    }
    try {
        c.validate();
    } catch (const Error& e) {
        parse_fail(e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kResultsHeader << '\n';
    for (const ResultRow& r : rows) {
        os << to_string(r.method) << ',' << side_name(r.side) << ',' << r.p << ',' << r.s << ','
           << r.replication_id << ',' << r.seed << ',' << format_double(r.type_one) << ','
           << format_double(r.type_two) << ',' << format_double(r.hamming) << ',' << (r.exact ? 1 : 0)
           << ',' << format_double(r.wall_time_ms) << ',' << r.error << '\n';
    }
}

std::vector<ResultRow> read_results_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != kResultsHeader) parse_fail("missing results header");
    std::vector<ResultRow> rows;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        const std::string what = "results line " + std::to_string(line_no);
        if (cells.size() != 12) parse_fail(what + ": expected 12 fields");
        ResultRow r;
        const auto m = parse_method(cells[0]);
        if (!m) parse_fail(what + ": unknown method " + cells[0]);
        r.method = *m;
        if (cells[1] == "alpha") {
            r.side = Side::ForU;
        } else if (cells[1] == "beta") {
            r.side = Side::ForV;
        } else {
            parse_fail(what + ": unknown side " + cells[1]);
        }
        r.p = to_int(cells[2], what);
        r.s = to_int(cells[3], what);
        r.replication_id = to_int(cells[4], what);
        r.seed = to_u64(cells[5], what);
        r.type_one = to_double(cells[6], what);
        r.type_two = to_double(cells[7], what);
        r.hamming = to_double(cells[8], what);
        r.exact = to_bool(cells[9], what);
        r.wall_time_ms = to_double(cells[10], what);
        r.error = cells[11];
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << kSummaryHeader << '\n';
    for (const SummaryRow& r : rows) {
        os << to_string(r.method) << ',' << side_name(r.side) << ',' << r.p << ',' << r.s << ','
           << format_double(r.mean_type_one) << ',' << format_double(r.se_type_one) << ','
           << format_double(r.mean_type_two) << ',' << format_double(r.se_type_two) << ','
           << format_double(r.mean_hamming) << ',' << format_double(r.se_hamming) << ','
           << format_double(r.exact_rate) << '\n';
    }
}

} // namespace scca
