#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hfaos/core.hpp"
#include "hfaos/rng.hpp"

namespace hfaos {

/// A real-valued minimization test function with box bounds and a known
/// optimum. Optionally the optimum is translated by a bounded random shift
/// drawn from a seed; evaluation then sees f(x - shift).
class RealFunction {
public:
    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    double lower(int i) const { return lower_[static_cast<std::size_t>(i)]; }
    double upper(int i) const { return upper_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& lower_bounds() const { return lower_; }
    const std::vector<double>& upper_bounds() const { return upper_; }

    /// Value at the optimum point, computed once at construction.
    double optimum_value() const { return optimum_value_; }
    /// Location of the optimum after any shift.
    const std::vector<double>& optimum_point() const { return optimum_point_; }
    bool shifted() const { return !shift_.empty(); }
    const std::vector<double>& optimum_shift() const { return shift_; }

    /// Evaluates the closed form. Coordinates outside the box are clamped
    /// to the violated bound first. Throws DimensionError on length mismatch.
    Objective evaluate(std::span<const double> x) const;

private:
    friend RealFunction make_function(const std::string&, int,
                                      std::optional<std::uint64_t>);

    int kind_ = 0;
    std::string name_;
    int dim_ = 0;
    std::vector<double> lower_, upper_;
    std::vector<double> shift_;         // empty when unshifted
    std::vector<double> optimum_point_;
    double optimum_value_ = 0.0;
};

/// Builds one of the registered functions by name. Unknown name throws
/// NameError; dimension below the function's minimum throws DimensionError.
RealFunction make_function(const std::string& name, int dim,
                           std::optional<std::uint64_t> shift_seed = {});

struct FunctionInfo {
    std::string name;
    int min_dim;
    double lower, upper;
    std::string optimum_note;
};

/// Registry listing for the CLI.
const std::vector<FunctionInfo>& list_functions();

} // namespace hfaos
