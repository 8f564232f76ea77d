#pragma once

#include <span>

namespace hfaos {

struct WilcoxonResult {
    double w_plus = 0.0;
    double w_minus = 0.0;
    double statistic = 0.0;   // min(w_plus, w_minus)
    double p_two_sided = 1.0;
    int n_effective = 0;      // pairs left after dropping zero differences
    bool degenerate = false;  // every difference was zero
    bool exact = false;       // exact enumeration (n_effective <= 12)
};

enum class WilcoxonMethod { Auto, Exact, Approx };

/// Paired Wilcoxon signed-rank test. Zero differences are dropped,
/// absolute differences ranked with midranks on ties. With Auto, up to 12
/// effective pairs get the exact two-sided p from full enumeration of the
/// 2^n sign assignments; beyond that a normal approximation with tie and
/// continuity corrections is used. Throws ConfigError when the inputs
/// differ in length or hold fewer than 2 pairs.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b,
                                    WilcoxonMethod method = WilcoxonMethod::Auto);

} // namespace hfaos
