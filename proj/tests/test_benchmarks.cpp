#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hfaos/benchmarks.hpp"
#include "hfaos/errors.hpp"

using namespace hfaos;

namespace {

// Independent closed-form oracle for rastrigin, written against the
// textbook definition rather than the library path.
double rastrigin_oracle(const std::vector<double>& x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
}

} // namespace

TEST_CASE("registry construction and errors") {
    const RealFunction f = make_function("sphere", 10);
    CHECK(f.dim() == 10);
    CHECK(f.lower(0) == -100.0);
    CHECK(f.upper(9) == 100.0);
    CHECK(f.optimum_value() == 0.0);

    CHECK_THROWS_AS(make_function("nope", 5), NameError);
    CHECK_THROWS_AS(make_function("rosenbrock", 1), DimensionError);
    CHECK_THROWS_AS(make_function("schaffer_f7", 1), DimensionError);
    CHECK(list_functions().size() == 10);
}

TEST_CASE("known optima evaluate to their stored optimum value") {
    for (const FunctionInfo& info : list_functions()) {
        const RealFunction f = make_function(info.name, std::max(2, info.min_dim));
        const Objective at_opt = f.evaluate(f.optimum_point());
        CHECK(at_opt.value == f.optimum_value());
        // the literature optimum for this suite
        const double expected =
            info.name == "styblinski_tang" ? -39.16616570377142 * f.dim() : 0.0;
        CHECK(std::abs(f.optimum_value() - expected) < 1e-9 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("sphere and rosenbrock hit zero at their minima") {
    const RealFunction sphere = make_function("sphere", 4);
    CHECK(sphere.evaluate(std::vector<double>(4, 0.0)).value == 0.0);

    const RealFunction rosen = make_function("rosenbrock", 6);
    CHECK(rosen.evaluate(std::vector<double>(6, 1.0)).value == 0.0);
}

TEST_CASE("rastrigin matches the independent closed form") {
    const RealFunction f = make_function("rastrigin", 2);
    const std::vector<double> x{0.5, 0.5};
    const double expected = rastrigin_oracle(x); // = 40.5
    CHECK(expected == doctest::Approx(40.5).epsilon(1e-12));
    CHECK(f.evaluate(x).value == doctest::Approx(expected).epsilon(1e-12));

    const std::vector<double> y{-1.25, 2.0};
    CHECK(f.evaluate(y).value == doctest::Approx(rastrigin_oracle(y)).epsilon(1e-12));
}

TEST_CASE("shifted functions keep their optimum") {
    const RealFunction f = make_function("rastrigin", 10, 7);
    CHECK(f.shifted());
    CHECK(f.evaluate(f.optimum_point()).value == 0.0); // origin optimum: exact
    for (int i = 0; i < 10; ++i) {
        CHECK(f.optimum_point()[static_cast<std::size_t>(i)] >= f.lower(i));
        CHECK(f.optimum_point()[static_cast<std::size_t>(i)] <= f.upper(i));
    }

    // ones-based optimum picks up at most an ulp of drift
    const RealFunction r = make_function("rosenbrock", 5, 3);
    CHECK(std::abs(r.evaluate(r.optimum_point()).value - r.optimum_value()) < 1e-12);

    const RealFunction same = make_function("rastrigin", 10, 7);
    CHECK(same.optimum_shift() == f.optimum_shift());
}

TEST_CASE("evaluation clamps out-of-bounds coordinates") {
    const RealFunction f = make_function("sphere", 2);
    const std::vector<double> wild{1e6, -1e6};
    const std::vector<double> corner{100.0, -100.0};
    CHECK(f.evaluate(wild).value == f.evaluate(corner).value);
}

TEST_CASE("evaluate is pure and checks dimensions") {
    const RealFunction f = make_function("ackley", 3);
    const std::vector<double> x{1.0, -2.0, 0.5};
    CHECK(f.evaluate(x).value == f.evaluate(x).value);
    CHECK_THROWS_AS(f.evaluate(std::vector<double>{1.0, 2.0}), DimensionError);
}

TEST_CASE("all functions return finite values over random points") {
    RngStream rng(123);
    for (const FunctionInfo& info : list_functions()) {
        const RealFunction f = make_function(info.name, std::max(3, info.min_dim));
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x(static_cast<std::size_t>(f.dim()));
            for (int d = 0; d < f.dim(); ++d)
                x[static_cast<std::size_t>(d)] = rng.uniform(f.lower(d), f.upper(d));
            CHECK(std::isfinite(f.evaluate(x).value));
        }
    }
}
