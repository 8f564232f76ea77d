#include "hfaos/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hfaos/errors.hpp"

namespace hfaos {

namespace {

double normal_upper_tail(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b,
                                    WilcoxonMethod method) {
    if (a.size() != b.size()) throw ConfigError("paired samples differ in length");
    if (a.size() < 2) throw ConfigError("need at least 2 pairs");

    std::vector<double> diff;
    diff.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diff.push_back(d);
    }

    WilcoxonResult res;
    res.n_effective = static_cast<int>(diff.size());
    if (diff.empty()) {
        res.degenerate = true;
        res.p_two_sided = 1.0;
        return res;
    }

    // Midranks of |d|.
    const std::size_t n = diff.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(diff[i]) < std::abs(diff[j]);
    });
    std::vector<double> rank(n, 0.0);
    std::vector<double> tie_sizes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n &&
               std::abs(diff[order[j + 1]]) == std::abs(diff[order[i]]))
            ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        tie_sizes.push_back(static_cast<double>(j - i + 1));
        i = j + 1;
    }

    for (std::size_t i = 0; i < n; ++i)
        (diff[i] > 0.0 ? res.w_plus : res.w_minus) += rank[i];
    res.statistic = std::min(res.w_plus, res.w_minus);

    const double rank_sum = 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);

    const bool use_exact = method == WilcoxonMethod::Exact ||
                           (method == WilcoxonMethod::Auto && n <= 12);
    if (use_exact && n > 30)
        throw ConfigError("exact enumeration limited to 30 pairs");

    if (use_exact) {
        // Exact: count assignments with W+ at or below min(w+, w-) and at
        // or above max(w+, w-); the null distribution is symmetric about
        // rank_sum / 2, so this is the standard two-sided tail mass.
        res.exact = true;
        const double lo = res.statistic;
        const double hi = rank_sum - res.statistic;
        const std::uint64_t total = std::uint64_t{1} << n;
        std::uint64_t count = 0;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            double w = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::uint64_t{1} << i)) w += rank[i];
            if (w <= lo + 1e-9 || w >= hi - 1e-9) ++count;
        }
        res.p_two_sided = std::min(
            1.0, static_cast<double>(count) / static_cast<double>(total));
    } else {
        const double mean = rank_sum / 2.0;
        double tie_term = 0.0;
        for (double t : tie_sizes) tie_term += t * t * t - t;
        const double nn = static_cast<double>(n);
        const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
        if (var <= 0.0) {
            res.p_two_sided = 1.0;
            return res;
        }
        // Continuity correction toward the mean on the smaller tail.
        const double z = (res.statistic - mean + 0.5) / std::sqrt(var);
        res.p_two_sided = std::min(1.0, 2.0 * normal_upper_tail(-z));
    }
    return res;
}

} // namespace hfaos
