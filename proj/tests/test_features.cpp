#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hfaos/features.hpp"
#include "hfaos/rng.hpp"

using namespace hfaos;

namespace {

IterationLog entry(long t, int op, double before, double after, double best) {
    IterationLog e;
    e.t = t;
    e.op = OperatorId{op};
    e.y_before = before;
    e.y_after = after;
    e.best_so_far = best;
    return e;
}

} // namespace

TEST_CASE("cold start yields defaults") {
    FeatureExtractor fx(FeatureSpec{4, 50});
    SearchSnapshot snap{100.0, 100.0, 0.0};
    const StateVector f = fx.extract(snap, {}, 0.0);
    REQUIRE(f.size() == 16);
    CHECK(f[0] == 0.0); // no budget spent
    CHECK(f[1] == 0.0); // no stagnation yet
    CHECK(f[5] == 0.0); // no last-step flag
    CHECK(f[6] == 0.0);
    CHECK(f[7] == 0.0);
    for (int op = 0; op < 4; ++op) {
        CHECK(f[static_cast<std::size_t>(8 + 2 * op)] == 0.25); // uniform share
        CHECK(f[static_cast<std::size_t>(9 + 2 * op)] == 0.0);
    }
}

TEST_CASE("budget fraction is passed through") {
    FeatureExtractor fx(FeatureSpec{4, 50});
    SearchSnapshot snap{10.0, 10.0, 0.0};
    CHECK(fx.extract(snap, {}, 0.5)[0] == 0.5);
    CHECK(fx.extract(snap, {}, 2.0)[0] == 1.0); // clamped
}

TEST_CASE("stagnation saturates after a windowful of non-improving steps") {
    FeatureExtractor fx(FeatureSpec{4, 50});
    std::vector<IterationLog> hist;
    for (int i = 0; i < 50; ++i)
        hist.push_back(entry(i, 0, 5.0, 6.0, 5.0)); // never improves
    SearchSnapshot snap{6.0, 5.0, 0.1};
    const StateVector f = fx.extract(snap, hist, 0.3);
    CHECK(f[1] == 1.0);
    CHECK(f[5] == 0.0);
    CHECK(f[6] == 0.0);
}

TEST_CASE("improvement flags and per-op statistics") {
    FeatureExtractor fx(FeatureSpec{4, 50});
    std::vector<IterationLog> hist;
    hist.push_back(entry(1, 2, 10.0, 8.0, 8.0));  // improving, credit 0.2
    hist.push_back(entry(2, 2, 8.0, 9.0, 8.0));   // worse, credit 0
    hist.push_back(entry(3, 1, 9.0, 9.0, 8.0));   // tie, credit 0
    hist.push_back(entry(4, 2, 9.0, 4.5, 4.5));   // improving, credit 0.5
    SearchSnapshot snap{4.5, 4.5, 0.2};
    const StateVector f = fx.extract(snap, hist, 0.4);

    CHECK(f[1] == 0.0);               // last step improved
    CHECK(f[5] == 1.0);
    CHECK(f[6] == doctest::Approx(0.5)); // 2 of 4 improved
    CHECK(f[7] == doctest::Approx(0.5)); // last credit
    CHECK(f[8 + 2 * 2] == doctest::Approx(0.75));      // op 2 share
    CHECK(f[9 + 2 * 2] == doctest::Approx(0.7 / 3.0)); // op 2 mean credit
    CHECK(f[8 + 2 * 1] == doctest::Approx(0.25));
    CHECK(f[9 + 2 * 1] == 0.0);
    CHECK(f[8 + 2 * 0] == 0.0);
}

TEST_CASE("dispersion is normalized by its running maximum") {
    FeatureExtractor fx(FeatureSpec{4, 50});
    SearchSnapshot snap{1.0, 1.0, 4.0};
    CHECK(fx.extract(snap, {}, 0.0)[3] == 1.0); // first sighting is the max
    snap.dispersion = 1.0;
    CHECK(fx.extract(snap, {}, 0.0)[3] == doctest::Approx(0.25));
    snap.dispersion = 8.0; // new max
    CHECK(fx.extract(snap, {}, 0.0)[3] == 1.0);
    snap.dispersion = 4.0;
    CHECK(fx.extract(snap, {}, 0.0)[3] == doctest::Approx(0.5));
}

TEST_CASE("every feature stays inside [0,1] on random histories") {
    FeatureExtractor fx(FeatureSpec{4, 50});
    RngStream rng(2718);
    std::vector<IterationLog> hist;
    for (int step = 0; step < 500; ++step) {
        const double before = rng.uniform(-100.0, 100.0);
        const double after = before + rng.uniform(-50.0, 50.0);
        hist.push_back(entry(step, static_cast<int>(rng.next_below(4)), before,
                             after, std::min(before, after)));
        if (hist.size() > 50) hist.erase(hist.begin());

        SearchSnapshot snap{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0),
                            rng.uniform(0.0, 10.0)};
        const StateVector f = fx.extract(snap, hist, rng.next_double());
        for (double v : f) {
            REQUIRE(std::isfinite(v));
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}
