#include "hfaos/features.hpp"

#include <algorithm>
#include <cmath>

#include "hfaos/stateless_aos.hpp"

namespace hfaos {

namespace {

double clamp01(double v) {
    if (!std::isfinite(v)) return 0.0;
    return std::clamp(v, 0.0, 1.0);
}

} // namespace

StateVector FeatureExtractor::extract(const SearchSnapshot& snap,
                                      std::span<const IterationLog> history,
                                      double budget_used) {
    const int k = spec_.k_ops;
    const double window = static_cast<double>(spec_.window);
    StateVector f(static_cast<std::size_t>(spec_.dim()), 0.0);

    f[0] = clamp01(budget_used);

    // Steps since the last improving application, saturating at the window.
    if (!history.empty()) {
        double since = static_cast<double>(history.size());
        for (std::size_t i = history.size(); i-- > 0;) {
            if (history[i].improved()) {
                since = static_cast<double>(history.size() - 1 - i);
                break;
            }
        }
        f[1] = clamp01(since / window);
    }

    // Gap between the state objective and the best, squashed to [0, 1).
    const double gap = (snap.current_objective - snap.best_objective) /
                       (std::abs(snap.best_objective) + kEps);
    const double g = std::max(0.0, gap);
    f[2] = clamp01(g / (1.0 + g));

    max_dispersion_ = std::max(max_dispersion_, snap.dispersion);
    f[3] = max_dispersion_ > 0.0 ? clamp01(snap.dispersion / max_dispersion_) : 0.0;

    // Log-compressed rank of the current objective in the recent window.
    if (!history.empty()) {
        std::size_t below = 0;
        for (const IterationLog& e : history)
            if (e.y_after < snap.current_objective) ++below;
        f[4] = clamp01(std::log1p(static_cast<double>(below)) /
                       std::log1p(static_cast<double>(history.size())));
    }

    if (!history.empty()) {
        const IterationLog& last = history.back();
        f[5] = last.improved() ? 1.0 : 0.0;
        std::size_t improved = 0;
        for (const IterationLog& e : history)
            if (e.improved()) ++improved;
        f[6] = clamp01(static_cast<double>(improved) /
                       static_cast<double>(history.size()));
        f[7] = clamp01(assign_credit(last.y_before, last.y_after));
    }

    // Per-operator selection share and mean credit over the window.
    std::vector<double> count(static_cast<std::size_t>(k), 0.0);
    std::vector<double> credit_sum(static_cast<std::size_t>(k), 0.0);
    for (const IterationLog& e : history) {
        if (e.op.index < 0 || e.op.index >= k) continue;
        count[static_cast<std::size_t>(e.op.index)] += 1.0;
        credit_sum[static_cast<std::size_t>(e.op.index)] +=
            assign_credit(e.y_before, e.y_after);
    }
    for (int i = 0; i < k; ++i) {
        const std::size_t base = static_cast<std::size_t>(8 + 2 * i);
        const double c = count[static_cast<std::size_t>(i)];
        f[base] = history.empty()
                      ? 1.0 / static_cast<double>(k)
                      : clamp01(c / static_cast<double>(history.size()));
        f[base + 1] = c > 0.0 ? clamp01(credit_sum[static_cast<std::size_t>(i)] / c)
                              : 0.0;
    }

    return f;
}

} // namespace hfaos
