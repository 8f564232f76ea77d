#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hfaos {

inline constexpr double kEps = 1e-12;

/// Index into a problem's operator pool, 0 <= index < K.
struct OperatorId {
    int index = 0;

    friend bool operator==(OperatorId a, OperatorId b) { return a.index == b.index; }
};

/// A finite objective value; lower is better. NaN/Inf rejected at construction.
struct Objective {
    double value = 0.0;

    Objective() = default;
    explicit Objective(double v) : value(v) {
        if (!std::isfinite(v))
            throw std::invalid_argument("objective value must be finite");
    }
};

/// Strict improvement test: the new value must be strictly smaller.
/// Ties count as non-improvement.
inline bool improvement(Objective y_prev, Objective y_new) {
    return y_new.value < y_prev.value;
}

/// Fixed-length search-state feature vector; entries clamped to [0, 1].
using StateVector = std::vector<double>;

/// One step of experience for the state-based module.
struct Transition {
    StateVector s;
    OperatorId a;
    double r = 0.0; // >= 0
    StateVector s_next;
};

/// Which selector produced an operator choice. None marks the
/// uniform-random baseline that bypasses both modules.
enum class ModuleKind { Stateless, StateBased, None };

/// Per-step trace record; doubles as the controller's credit record.
struct IterationLog {
    long t = 0;
    ModuleKind module_used = ModuleKind::Stateless;
    OperatorId op;
    double y_before = 0.0;
    double y_after = 0.0;
    double p_after = 0.0;
    double best_so_far = 0.0;

    bool improved() const { return y_after < y_before; }
};

} // namespace hfaos
