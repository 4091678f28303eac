#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ppfd/ann.hpp"
#include "ppfd/arima.hpp"
#include "ppfd/forecast.hpp"
#include "ppfd/synth.hpp"
#include "ppfd/window.hpp"

using namespace ppfd;

TEST_CASE("make_windows enumeration") {
    const auto d = make_windows(std::vector<double>{1, 2, 3, 4}, 2);
    REQUIRE(d.inputs.size() == 2);
    CHECK(d.inputs[0] == std::vector<double>{1, 2});
    CHECK(d.inputs[1] == std::vector<double>{2, 3});
    CHECK(d.targets == std::vector<double>{3, 4});
}

TEST_CASE("make_windows boundaries") {
    const auto one = make_windows(std::vector<double>{1, 2, 3}, 2);
    CHECK(one.inputs.size() == 1);
    CHECK_THROWS(make_windows(std::vector<double>{1, 2}, 2));
    CHECK_THROWS(make_windows(std::vector<double>{1, 2, 3}, 0));

    std::vector<double> v(20, 1.0);
    CHECK(make_windows(v, 7).inputs[0].size() == 7);
}

TEST_CASE("make_windows preserves chronology") {
    std::vector<double> v(30);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    const auto d = make_windows(v, 5);
    for (std::size_t i = 0; i < d.inputs.size(); ++i)
        for (double x : d.inputs[i]) CHECK(x < d.targets[i]);
}

namespace {

WindowDataset mean_target_dataset(std::size_t count, std::size_t w,
                                  std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1, 1);
    WindowDataset d;
    d.window_size = w;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> x(w);
        double sum = 0.0;
        for (auto& v : x) {
            v = dist(rng);
            sum += v;
        }
        d.inputs.push_back(std::move(x));
        d.targets.push_back(sum / static_cast<double>(w));
    }
    return d;
}

} // namespace

TEST_CASE("ann learns target = mean(window)") {
    const auto data = mean_target_dataset(200, 4, 5);
    const AnnModel m = ann_fit(data, AnnConfig{});
    double sse = 0.0;
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        const double e = ann_predict(m, data.inputs[i]) - data.targets[i];
        sse += e * e;
    }
    CHECK(std::sqrt(sse / static_cast<double>(data.inputs.size())) < 0.05);
}

TEST_CASE("ann zero-epoch training returns the seeded initialization") {
    const auto data = mean_target_dataset(20, 3, 7);
    AnnConfig cfg;
    cfg.epochs = 0;
    const AnnModel trained = ann_fit(data, cfg);
    const AnnModel init = ann_init(3, cfg);
    CHECK(trained.w1 == init.w1);
    CHECK(trained.b1 == init.b1);
    CHECK(trained.w2 == init.w2);
    CHECK(trained.b2 == init.b2);
}

TEST_CASE("ann training is deterministic for a fixed seed") {
    const auto data = mean_target_dataset(50, 4, 9);
    AnnConfig cfg;
    cfg.epochs = 100;
    cfg.seed = 42;
    const AnnModel a = ann_fit(data, cfg);
    const AnnModel b = ann_fit(data, cfg);
    CHECK(a.w1 == b.w1);
    CHECK(a.b1 == b.b1);
    CHECK(a.w2 == b.w2);
    CHECK(a.b2 == b.b2);
}

TEST_CASE("ann forward pass identities") {
    AnnModel m;
    m.window = 3;
    m.w1.assign(AnnModel::kHidden * 3, 0.0);
    m.b1.assign(AnnModel::kHidden, 0.0);
    m.w2.assign(AnnModel::kHidden, 0.0);
    m.b2 = 0.75;
    CHECK(ann_predict(m, {1, 2, 3}) == Catch::Approx(0.75));
    CHECK_THROWS(ann_predict(m, {1, 2}));
}

TEST_CASE("ann monotone response with positive weights") {
    AnnModel m;
    m.window = 2;
    m.w1 = {0.5, 0.3, 0.2, 0.1, 0.4, 0.6, 0.7, 0.2, 0.3, 0.5};
    m.b1.assign(AnnModel::kHidden, 0.1);
    m.w2 = {0.2, 0.3, 0.1, 0.4, 0.5};
    m.b2 = 0.0;
    double prev = ann_predict(m, {-2.0, 0.5});
    for (double x = -1.5; x <= 2.0; x += 0.25) {
        const double out = ann_predict(m, {x, 0.5});
        CHECK(out >= prev);
        prev = out;
    }
}

TEST_CASE("ann analytic gradient matches central finite differences") {
    const auto data = mean_target_dataset(15, 4, 13);
    AnnModel m = ann_init(4, AnnConfig{.seed = 21});
    AnnGradient grad;
    const double base_unused = ann_loss_gradient(m, data, grad);
    (void)base_unused;

    auto loss_at = [&](AnnModel probe) {
        AnnGradient g;
        return ann_loss_gradient(probe, data, g);
    };
    auto check_param = [&](double& param, double analytic) {
        const double h = 1e-5;
        const double orig = param;
        param = orig + h;
        const double fp = loss_at(m);
        param = orig - h;
        const double fm = loss_at(m);
        param = orig;
        const double numeric = (fp - fm) / (2.0 * h);
        CHECK(std::abs(analytic - numeric) <=
              1e-5 * std::max({std::abs(analytic), std::abs(numeric), 1e-4}));
    };

    for (std::size_t i = 0; i < m.w1.size(); ++i) check_param(m.w1[i], grad.w1[i]);
    for (std::size_t j = 0; j < AnnModel::kHidden; ++j) {
        check_param(m.b1[j], grad.b1[j]);
        check_param(m.w2[j], grad.w2[j]);
    }
    check_param(m.b2, grad.b2);
}

namespace {

TimeSeries simulate_arima_diffs(std::size_t n, const std::vector<double>& ar,
                                double noise_sd, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sd);
    std::vector<double> d(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double v = noise(rng);
        for (std::size_t i = 0; i < ar.size() && t > i; ++i)
            v += ar[i] * d[t - 1 - i];
        d[t] = v;
    }
    TimeSeries x{0, 1, std::vector<double>(n + 1)};
    x.values[0] = 10.0;
    for (std::size_t t = 0; t < n; ++t) x.values[t + 1] = x.values[t] + d[t];
    return x;
}

} // namespace

TEST_CASE("arima recovers an AR(1) coefficient on differences") {
    const TimeSeries x = simulate_arima_diffs(2000, {0.6}, 1.0, 101);
    const ArimaModel m = arima_fit(x, 1, 0);
    CHECK(m.ar[0] == Catch::Approx(0.6).margin(0.05));
    CHECK(m.stationary);
}

TEST_CASE("arima(0,1,0) is a random walk with drift") {
    TimeSeries x{0, 1, {1, 3, 4, 8, 9, 13}};
    const ArimaModel m = arima_fit(x, 0, 0);
    // CSS intercept of (0,1,0) is the mean difference
    const double mu = (13.0 - 1.0) / 5.0;
    CHECK(m.intercept == Catch::Approx(mu).margin(1e-6));
    CHECK(arima_predict(m, x.values) ==
          Catch::Approx(13.0 + m.intercept).margin(1e-9));
}

TEST_CASE("arima with zero coefficients is naive persistence") {
    ArimaModel m;
    m.p = 1;
    m.q = 1;
    m.ar = {0.0};
    m.ma = {0.0};
    m.intercept = 0.0;
    m.residual_history = {0.0};
    CHECK(arima_predict(m, {5, 9, 7}) == 7.0);
    CHECK_THROWS(arima_predict(m, {5})); // needs p+1 points
}

TEST_CASE("arima near-zero coefficients on white-noise differences") {
    const TimeSeries x = simulate_arima_diffs(3000, {}, 1.0, 103);
    const ArimaModel ar_fit_model = arima_fit(x, 1, 0);
    CHECK(std::abs(ar_fit_model.ar[0]) < 0.1);
    const ArimaModel ma_fit_model = arima_fit(x, 0, 1);
    CHECK(std::abs(ma_fit_model.ma[0]) < 0.1);
}

TEST_CASE("arima_predict matches a hand-unrolled (1,1,1) recursion") {
    ArimaModel m;
    m.p = 1;
    m.q = 1;
    m.ar = {0.4};
    m.ma = {0.25};
    m.intercept = 0.1;

    const std::vector<double> x{2.0, 3.5, 3.0, 4.2, 5.0};
    // diffs: 1.5, -0.5, 1.2, 0.8; recursion starts at t=1 with e0 = 0
    const double e1 = -0.5 - (0.1 + 0.4 * 1.5 + 0.25 * 0.0);
    const double e2 = 1.2 - (0.1 + 0.4 * -0.5 + 0.25 * e1);
    const double e3 = 0.8 - (0.1 + 0.4 * 1.2 + 0.25 * e2);
    m.residual_history = {e3};
    const double expected = 5.0 + 0.1 + 0.4 * 0.8 + 0.25 * e3;
    CHECK(arima_predict(m, x) == Catch::Approx(expected).margin(1e-12));
}

TEST_CASE("arima_select prefers an adequate order on AR(2) data") {
    const TimeSeries x = simulate_arima_diffs(400, {0.5, -0.3}, 1.0, 107);
    const auto [p, q] = arima_select(x, 5, 5);
    CHECK(p >= 2);
    const double chosen_aic = arima_aic(arima_fit(x, p, q));
    const double ar2_aic = arima_aic(arima_fit(x, 2, 0));
    CHECK(chosen_aic <= ar2_aic + 1e-9);
}

TEST_CASE("arima_select determinism and singleton grid") {
    const TimeSeries x = simulate_arima_diffs(200, {0.4}, 1.0, 109);
    CHECK(arima_select(x, 2, 2) == arima_select(x, 2, 2));
    CHECK(arima_select(x, 0, 0) == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("fourier_sum_forecast reproduces its training range") {
    std::mt19937 rng(201);
    std::uniform_real_distribution<double> dist(-5, 5);
    TimeSeries x{0, 1, std::vector<double>(50)};
    for (auto& v : x.values) v = dist(rng);
    const auto rebuilt = fourier_sum_forecast(x, 0, 49);
    double scale = 0.0;
    for (double v : x.values) scale = std::max(scale, std::abs(v));
    for (std::size_t t = 0; t < 50; ++t)
        CHECK(std::abs(rebuilt[t] - x.values[t]) < 1e-7 * scale);
}

TEST_CASE("fourier_sum_forecast continues a pure cosine exactly") {
    TimeSeries x{0, 1, std::vector<double>(32)};
    for (std::size_t t = 0; t < 32; ++t)
        x.values[t] =
            2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / 8.0 + 0.3);
    const auto future = fourier_sum_forecast(x, 32, 47);
    for (std::size_t t = 32; t < 48; ++t)
        CHECK(future[t - 32] ==
              Catch::Approx(2.0 * std::cos(2.0 * std::numbers::pi *
                                               static_cast<double>(t) / 8.0 +
                                           0.3))
                  .margin(1e-9));
}

namespace {

TimeSeries trend_plus_tone(std::size_t n, double slope, double intercept,
                           double amp, double period) {
    TimeSeries x{0, 1, std::vector<double>(n)};
    for (std::size_t t = 0; t < n; ++t)
        x.values[t] = slope * static_cast<double>(t) + intercept +
                      amp * std::sin(2.0 * std::numbers::pi *
                                     static_cast<double>(t) / period);
    return x;
}

} // namespace

TEST_CASE("ppfd_fit recovers the synthetic seasonal periods") {
    SynthSpec spec;
    spec.n = 1250;
    const TimeSeries train = generate(spec);
    PpfdConfig cfg;
    cfg.ann.epochs = 0; // decomposition is what this test checks
    const PpfdModel m = ppfd_fit(train, 3, BaseKind::ann, cfg);
    REQUIRE(m.sinusoids.size() == 3);
    for (double period : {7.0, 30.0, 365.0}) {
        bool found = false;
        for (const auto& s : m.sinusoids)
            if (std::abs(static_cast<double>(s.bin) - 1250.0 / period) <= 1.0)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("ppfd_fit with c = n/2 hits the documented zero-range rejection") {
    const TimeSeries x = trend_plus_tone(64, 0.0, 10.0, 2.0, 8.0);
    PpfdConfig cfg;
    cfg.window = 4;
    CHECK_THROWS_WITH(ppfd_fit(x, 32, BaseKind::ann, cfg),
                      Catch::Matchers::ContainsSubstring("zero range"));
}

TEST_CASE("ppfd_fit is deterministic under a fixed seed") {
    const TimeSeries x = trend_plus_tone(128, 0.05, 20.0, 3.0, 8.0);
    PpfdConfig cfg;
    cfg.window = 4;
    cfg.ann.epochs = 50;
    cfg.ann.seed = 5;
    const PpfdModel a = ppfd_fit(x, 1, BaseKind::ann, cfg);
    const PpfdModel b = ppfd_fit(x, 1, BaseKind::ann, cfg);
    CHECK(std::get<AnnModel>(a.base).w1 == std::get<AnnModel>(b.base).w1);
    CHECK(std::get<AnnModel>(a.base).b2 == std::get<AnnModel>(b.base).b2);
}

TEST_CASE("ppfd with an always-zero base forecasts seasonal + last residual") {
    const TimeSeries x = trend_plus_tone(128, 0.01, 20.0, 3.0, 8.0);
    PpfdConfig cfg;
    cfg.window = 4;
    cfg.ann.epochs = 0;
    PpfdModel m = ppfd_fit(x, 1, BaseKind::ann, cfg);
    auto& ann = std::get<AnnModel>(m.base);
    std::fill(ann.w1.begin(), ann.w1.end(), 0.0);
    std::fill(ann.b1.begin(), ann.b1.end(), 0.0);
    std::fill(ann.w2.begin(), ann.w2.end(), 0.0);
    ann.b2 = 0.0;

    const double forecast = m.predict_next();
    const double expected =
        m.seasonal_at(128) + invert_step(0.0, m.scaling);
    CHECK(forecast == Catch::Approx(expected).margin(1e-12));
    // y=0 inverts to the de-scaled s_prev, i.e. the last training residual
    const Spectrum s = dft(x);
    const auto residual = idft(remove_components(s, top_components(s, 1)));
    CHECK(invert_step(0.0, m.scaling) ==
          Catch::Approx(residual.values.back()).epsilon(1e-9));
}

TEST_CASE("ppfd one-step forecasts track a near-seasonal series") {
    const std::size_t n = 256;
    const TimeSeries x = trend_plus_tone(n + 32, 0.01, 100.0, 5.0, 8.0);
    TimeSeries train{0, 1, std::vector<double>(x.values.begin(),
                                               x.values.begin() + n)};
    PpfdConfig cfg;
    cfg.window = 8;
    cfg.ann.epochs = 1000;
    PpfdModel m = ppfd_fit(train, 1, BaseKind::ann, cfg);
    REQUIRE(m.sinusoids[0].bin == 32); // period 8 at n=256

    double sse = 0.0;
    for (std::size_t t = n; t < n + 32; ++t) {
        const double f = ppfd_forecast_step(m, x.values, t);
        const double e = f - x.values[t];
        sse += e * e;
        m.observe(x.values[t]);
    }
    // series swings +-5 around the trend; the decomposed forecast should be
    // far inside that envelope
    CHECK(std::sqrt(sse / 32.0) < 1.0);
}

TEST_CASE("ppfd_forecast_step consumes pending history and validates bounds") {
    const TimeSeries x = trend_plus_tone(96, 0.02, 10.0, 2.0, 8.0);
    TimeSeries train{0, 1, std::vector<double>(x.values.begin(),
                                               x.values.begin() + 64)};
    PpfdConfig cfg;
    cfg.window = 4;
    cfg.ann.epochs = 10;
    PpfdModel m = ppfd_fit(train, 1, BaseKind::ann, cfg);
    CHECK_THROWS(ppfd_forecast_step(m, x.values, 200)); // beyond history
    (void)ppfd_forecast_step(m, x.values, 70);          // consumes 64..69
    CHECK(m.next_index == 70);
    CHECK_THROWS(ppfd_forecast_step(m, x.values, 69)); // in the past now
}

TEST_CASE("ppfd_fit validates c") {
    const TimeSeries x = trend_plus_tone(64, 0.1, 5.0, 1.0, 8.0);
    PpfdConfig cfg;
    cfg.window = 4;
    CHECK_THROWS(ppfd_fit(x, 0, BaseKind::ann, cfg));
    CHECK_THROWS(ppfd_fit(x, 33, BaseKind::ann, cfg));
}
