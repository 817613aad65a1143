#include "scca/metrics.hpp"

#include "scca/error.hpp"

#include <algorithm>
#include <cmath>

namespace scca {

namespace {

std::vector<Index> sorted(std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::size_t intersection_size(const std::vector<Index>& a, const std::vector<Index>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

void require_nonempty(const std::vector<Index>& d_true) {
    if (d_true.empty()) throw Error(ErrorCode::DegenerateTruth, "true support is empty");
}

} // namespace

double type_one_error(const std::vector<Index>& d_hat, const std::vector<Index>& d_true,
                      Index ambient_dim) {
    const auto hat = sorted(d_hat);
    const auto truth = sorted(d_true);
    require_nonempty(truth);
    const auto s = static_cast<Index>(truth.size());
    if (s >= ambient_dim) throw Error(ErrorCode::DegenerateTruth, "true support is the full set");
    for (const auto* set : {&hat, &truth}) {
        if (!set->empty() && (set->front() < 0 || set->back() >= ambient_dim)) {
            throw Error(ErrorCode::InvalidArgument, "index outside the ambient dimension");
        }
    }
    const auto false_pos = hat.size() - intersection_size(hat, truth);
    return static_cast<double>(false_pos) / static_cast<double>(ambient_dim - s);
}

double type_two_error(const std::vector<Index>& d_hat, const std::vector<Index>& d_true) {
    const auto hat = sorted(d_hat);
    const auto truth = sorted(d_true);
    require_nonempty(truth);
    const auto missed = truth.size() - intersection_size(hat, truth);
    return static_cast<double>(missed) / static_cast<double>(truth.size());
}

double hamming_error(const std::vector<Index>& d_hat, const std::vector<Index>& d_true) {
    const auto hat = sorted(d_hat);
    const auto truth = sorted(d_true);
    require_nonempty(truth);
    if (hat.empty()) return 1.0;
    const auto common = static_cast<double>(intersection_size(hat, truth));
    const double value =
        1.0 - common / std::sqrt(static_cast<double>(truth.size()) * static_cast<double>(hat.size()));
    // Equal sets give exactly 0 rather than a rounding residue.
    return hat == truth ? 0.0 : std::clamp(value, 0.0, 1.0);
}

RecoveryErrors recovery_errors(const std::vector<Index>& d_hat, const std::vector<Index>& d_true,
                               Index ambient_dim) {
    RecoveryErrors e;
    e.type_one = type_one_error(d_hat, d_true, ambient_dim);
    e.type_two = type_two_error(d_hat, d_true);
    e.hamming = hamming_error(d_hat, d_true);
    e.exact = e.type_one == 0.0 && e.type_two == 0.0;
    return e;
}

} // namespace scca
