#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ppfd/scaling.hpp"

using namespace ppfd;

namespace {
TimeSeries make(std::vector<double> v) { return TimeSeries{0, 1, std::move(v)}; }
}

TEST_CASE("fit_forward on the two-point endpoints example") {
    auto [y, state] = fit_forward(make({0, 10}));
    REQUIRE(y.size() == 1);
    CHECK(y.values[0] == Catch::Approx(1.0));
    CHECK(state.x_min == 0.0);
    CHECK(state.x_max == 10.0);
    CHECK(state.l_max_abs == Catch::Approx(1.0));
    CHECK(state.s_prev == Catch::Approx(2.0));
}

TEST_CASE("fit_forward rejects degenerate input") {
    CHECK_THROWS_WITH(fit_forward(make({3, 3, 3})),
                      Catch::Matchers::ContainsSubstring("zero range"));
    CHECK_THROWS(fit_forward(make({5})));
}

TEST_CASE("strictly increasing series maps to positive y in (0, 1]") {
    auto [y, state] = fit_forward(make({1, 2, 4, 8, 9, 12}));
    for (double v : y.values) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("training outputs stay in band") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-50, 50);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(20);
        for (auto& x : v) x = dist(rng);
        TimeSeries s = make(v);
        ScalingState check;
        try {
            auto [y, state] = fit_forward(s);
            check = state;
            for (double yv : y.values) {
                CHECK(yv >= -1.0 - 1e-12);
                CHECK(yv <= 1.0 + 1e-12);
            }
            CHECK(check.s_prev >= 1.0 - 1e-12);
            CHECK(check.s_prev <= 2.0 + 1e-12);
        } catch (const std::invalid_argument&) {
            // constant draw; legal rejection
        }
    }
}

TEST_CASE("apply_forward follows the frozen constants") {
    auto [y, state] = fit_forward(make({0, 5, 10}));
    SECTION("value at x_max maps to s=2; repeated max gives y=0") {
        ScalingState st = state; // s_prev currently 2 (last value was max)
        const double out = apply_forward(10.0, st);
        CHECK(out == Catch::Approx(0.0).margin(1e-15));
        CHECK(st.s_prev == Catch::Approx(2.0));
    }
    SECTION("value at x_min maps to s=1") {
        ScalingState st = state;
        apply_forward(0.0, st);
        CHECK(st.s_prev == Catch::Approx(1.0));
    }
    SECTION("value above training max leaves the band, formulas still apply") {
        ScalingState st = state;
        const double out = apply_forward(25.0, st);
        CHECK(st.s_prev > 2.0);
        CHECK(std::isfinite(out));
    }
}

TEST_CASE("invert_step hand-evaluated example") {
    ScalingState st;
    st.x_min = 0.0;
    st.x_max = 10.0;
    st.l_max_abs = 0.5;
    st.s_prev = 1.2;
    // y=1 -> l=0.5 -> s=1.8 -> x' = 8.0
    CHECK(invert_step(1.0, st) == Catch::Approx(8.0));
    CHECK(st.s_prev == 1.2); // forecast does not advance the state
}

TEST_CASE("invert_step at y=0 reproduces the de-scaled s_prev") {
    auto [y, state] = fit_forward(make({2, 7, 4}));
    CHECK(invert_step(0.0, state) == Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("invert_step rejects non-positive s_prev") {
    ScalingState st{0.0, 1.0, 1.0, -0.5};
    CHECK_THROWS(invert_step(0.0, st));
}

TEST_CASE("round trip: invert_step reproduces every training point") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1000, 1000);
    std::uniform_int_distribution<std::size_t> len(2, 60);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(len(rng));
        for (auto& x : v) x = dist(rng);
        TimeSeries s = make(v);
        std::vector<double> y;
        ScalingState st;
        try {
            auto [ys, state] = fit_forward(s);
            y = ys.values;
            st = state;
        } catch (const std::invalid_argument&) {
            continue;
        }
        // replay the chain, inverting each y against the state just before it
        ScalingState replay = st;
        replay.s_prev = (v[0] - st.x_min) / (st.x_max - st.x_min) + 1.0;
        for (std::size_t t = 1; t < v.size(); ++t) {
            const double rebuilt = invert_step(y[t - 1], replay);
            const double scale = std::max(std::abs(v[t]), 1.0);
            CHECK(std::abs(rebuilt - v[t]) < 1e-10 * scale);
            apply_forward(v[t], replay);
        }
    }
}

TEST_CASE("monotone step sign") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-10, 10);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(15);
        for (auto& x : v) x = dist(rng);
        try {
            auto [y, state] = fit_forward(TimeSeries{0, 1, v});
            for (std::size_t t = 1; t < v.size(); ++t) {
                const double dv = v[t] - v[t - 1];
                if (dv > 0) CHECK(y.values[t - 1] > 0);
                if (dv < 0) CHECK(y.values[t - 1] < 0);
                if (dv == 0) CHECK(y.values[t - 1] == 0);
            }
        } catch (const std::invalid_argument&) {
        }
    }
}
