#include "hfaos/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hfaos/errors.hpp"

namespace hfaos {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum Kind {
    kSphere,
    kRosenbrock,
    kRastrigin,
    kAckley,
    kGriewank,
    kSchwefel12,
    kLevy,
    kZakharov,
    kStyblinskiTang,
    kSchafferF7,
};

struct Entry {
    const char* name;
    Kind kind;
    int min_dim;
    double lower, upper;
    double opt_coord; // coordinate of the unshifted optimum (same in every dim)
    const char* note;
};

// Classical suite; bounds follow the customary literature boxes.
const Entry kRegistry[] = {
    {"sphere", kSphere, 1, -100.0, 100.0, 0.0, "0 at origin"},
    {"rosenbrock", kRosenbrock, 2, -30.0, 30.0, 1.0, "0 at (1,...,1)"},
    {"rastrigin", kRastrigin, 1, -5.12, 5.12, 0.0, "0 at origin"},
    {"ackley", kAckley, 1, -32.768, 32.768, 0.0, "0 at origin"},
    {"griewank", kGriewank, 1, -600.0, 600.0, 0.0, "0 at origin"},
    {"schwefel_1_2", kSchwefel12, 1, -100.0, 100.0, 0.0, "0 at origin"},
    {"levy", kLevy, 1, -10.0, 10.0, 1.0, "0 at (1,...,1)"},
    {"zakharov", kZakharov, 1, -5.0, 10.0, 0.0, "0 at origin"},
    {"styblinski_tang", kStyblinskiTang, 1, -5.0, 5.0, -2.903534018185960,
     "-39.16617*d at -2.9035..."},
    {"schaffer_f7", kSchafferF7, 2, -100.0, 100.0, 0.0, "0 at origin"},
};

double eval_base(Kind kind, std::span<const double> x) {
    const std::size_t d = x.size();
    switch (kind) {
    case kSphere: {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    }
    case kRosenbrock: {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            const double b = x[i] - 1.0;
            s += 100.0 * a * a + b * b;
        }
        return s;
    }
    case kRastrigin: {
        double s = 10.0 * static_cast<double>(d);
        for (double v : x) s += v * v - 10.0 * std::cos(kTwoPi * v);
        return s;
    }
    case kAckley: {
        double sq = 0.0, cs = 0.0;
        for (double v : x) {
            sq += v * v;
            cs += std::cos(kTwoPi * v);
        }
        const double n = static_cast<double>(d);
        return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) +
               20.0 + std::numbers::e;
    }
    case kGriewank: {
        double s = 0.0, p = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            s += x[i] * x[i];
            p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
        }
        return s / 4000.0 - p + 1.0;
    }
    case kSchwefel12: {
        double s = 0.0, partial = 0.0;
        for (double v : x) {
            partial += v;
            s += partial * partial;
        }
        return s;
    }
    case kLevy: {
        auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
        const double s0 = std::sin(std::numbers::pi * w(0));
        double s = s0 * s0;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            const double wi = w(i);
            const double t = std::sin(std::numbers::pi * wi + 1.0);
            s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * t * t);
        }
        const double wd = w(d - 1);
        const double t = std::sin(kTwoPi * wd);
        return s + (wd - 1.0) * (wd - 1.0) * (1.0 + t * t);
    }
    case kZakharov: {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            s1 += x[i] * x[i];
            s2 += 0.5 * static_cast<double>(i + 1) * x[i];
        }
        return s1 + s2 * s2 + s2 * s2 * s2 * s2;
    }
    case kStyblinskiTang: {
        double s = 0.0;
        for (double v : x) {
            const double v2 = v * v;
            s += v2 * v2 - 16.0 * v2 + 5.0 * v;
        }
        return 0.5 * s;
    }
    case kSchafferF7: {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            const double si = std::sqrt(x[i] * x[i] + x[i + 1] * x[i + 1]);
            const double term = std::sqrt(si) * (std::sin(50.0 * std::pow(si, 0.2)) + 1.0);
            s += term;
        }
        const double mean = s / static_cast<double>(d - 1);
        return mean * mean;
    }
    }
    return 0.0;
}

const Entry& find_entry(const std::string& name) {
    for (const Entry& e : kRegistry)
        if (name == e.name) return e;
    throw NameError("unknown benchmark function: " + name);
}

} // namespace

RealFunction make_function(const std::string& name, int dim,
                           std::optional<std::uint64_t> shift_seed) {
    const Entry& e = find_entry(name);
    if (dim < e.min_dim)
        throw DimensionError(name + " requires dim >= " + std::to_string(e.min_dim));

    RealFunction f;
    f.kind_ = e.kind;
    f.name_ = e.name;
    f.dim_ = dim;
    f.lower_.assign(static_cast<std::size_t>(dim), e.lower);
    f.upper_.assign(static_cast<std::size_t>(dim), e.upper);
    f.optimum_point_.assign(static_cast<std::size_t>(dim), e.opt_coord);

    if (shift_seed) {
        // Shift bounded to a quarter of the box width per dimension and
        // constrained so the shifted optimum stays inside the bounds.
        RngStream rng = RngStream::substream(*shift_seed, 0xBE5Cu);
        f.shift_.resize(static_cast<std::size_t>(dim));
        const double w = 0.25 * (e.upper - e.lower);
        for (int i = 0; i < dim; ++i) {
            const double lo = std::max(e.lower - e.opt_coord, -w);
            const double hi = std::min(e.upper - e.opt_coord, w);
            const double s = rng.uniform(lo, hi);
            f.shift_[static_cast<std::size_t>(i)] = s;
            f.optimum_point_[static_cast<std::size_t>(i)] = e.opt_coord + s;
        }
    }

    f.optimum_value_ = f.evaluate(f.optimum_point_).value;
    return f;
}

Objective RealFunction::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw DimensionError(name_ + ": expected " + std::to_string(dim_) +
                             " coordinates, got " + std::to_string(x.size()));

    std::vector<double> z(x.begin(), x.end());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = std::clamp(z[i], lower_[i], upper_[i]);
    if (!shift_.empty())
        for (std::size_t i = 0; i < z.size(); ++i) z[i] -= shift_[i];

    return Objective(eval_base(static_cast<Kind>(kind_), z));
}

const std::vector<FunctionInfo>& list_functions() {
    static const std::vector<FunctionInfo> infos = [] {
        std::vector<FunctionInfo> v;
        for (const Entry& e : kRegistry)
            v.push_back({e.name, e.min_dim, e.lower, e.upper, e.note});
        return v;
    }();
    return infos;
}

} // namespace hfaos
