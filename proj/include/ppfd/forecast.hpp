#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ppfd/ann.hpp"
#include "ppfd/arima.hpp"
#include "ppfd/scaling.hpp"
#include "ppfd/spectral.hpp"
#include "ppfd/time_series.hpp"
#include "ppfd/window.hpp"

namespace ppfd {

enum class BaseKind { ann, arima };

struct PpfdConfig {
    std::size_t window = 7;     // past observations fed to the base model
    AnnConfig ann;
    std::size_t arima_p = 1;
    std::size_t arima_q = 0;
};

// The fitted composite: c extracted cosine waves plus a base model trained
// on the normalized deseasonalized series y. Also serves the plain ANN and
// ARIMA baselines with an empty sinusoid list (identical normalization
// pipeline, no seasonal term).
//
// Forecasting is one-step-ahead: predict_next() uses only true observed
// values, observe() feeds the actual once it is known.
struct PpfdModel {
    std::vector<Sinusoid> sinusoids;
    ScalingState scaling;
    std::variant<AnnModel, ArimaModel> base;
    std::size_t window = 7;
    std::size_t training_length = 0;

    // rolling state
    std::vector<double> y_history;
    std::size_t next_index = 0;
    double last_base_pred = 0.0;

    double seasonal_at(std::size_t t) const {
        double acc = 0.0;
        for (const auto& s : sinusoids)
            acc += sinusoid_value(s, static_cast<double>(t));
        return acc;
    }

    double predict_next() {
        const std::size_t t = next_index;
        double y_next;
        if (std::holds_alternative<AnnModel>(base)) {
            const auto& ann = std::get<AnnModel>(base);
            if (y_history.size() < window)
                throw std::invalid_argument("predict_next: insufficient history");
            std::vector<double> w(y_history.end() - static_cast<long>(window),
                                  y_history.end());
            y_next = ann_predict(ann, w);
        } else {
            y_next = arima_predict(std::get<ArimaModel>(base), y_history);
        }
        last_base_pred = y_next;
        return seasonal_at(t) + invert_step(y_next, scaling);
    }

    void observe(double value) {
        const std::size_t t = next_index;
        const double y_obs = apply_forward(value - seasonal_at(t), scaling);
        if (std::holds_alternative<ArimaModel>(base))
            arima_observe(std::get<ArimaModel>(base), last_base_pred, y_obs);
        y_history.push_back(y_obs);
        ++next_index;
    }
};

// Fits the full pipeline on a training series: DFT, extract the top-c
// sinusoids, zero them out, inverse DFT, normalize, fit the base model on y.
// c = 0 skips the decomposition (baseline path).
inline PpfdModel fit_pipeline(const TimeSeries& training, std::size_t c,
                              BaseKind kind, const PpfdConfig& config) {
    PpfdModel m;
    m.window = config.window;
    m.training_length = training.size();

    TimeSeries residual = training;
    if (c > 0) {
        const Spectrum spec = dft(training);
        m.sinusoids = top_components(spec, c);
        residual = idft(remove_components(spec, m.sinusoids));
    }

    auto [y, state] = fit_forward(residual);
    m.scaling = state;
    m.y_history = y.values;

    if (kind == BaseKind::ann) {
        m.base = ann_fit(make_windows(y.values, config.window), config.ann);
    } else {
        m.base = arima_fit(y, config.arima_p, config.arima_q);
    }
    m.next_index = training.size();
    return m;
}

inline PpfdModel ppfd_fit(const TimeSeries& training, std::size_t c,
                          BaseKind kind, const PpfdConfig& config) {
    if (c < 1 || c > training.size() / 2)
        throw std::invalid_argument("ppfd_fit: c out of range 1..n/2");
    return fit_pipeline(training, c, kind, config);
}

// One forecast at global index t_next, first consuming any not-yet-observed
// history values before it.
inline double ppfd_forecast_step(PpfdModel& model,
                                 const std::vector<double>& observed_history,
                                 std::size_t t_next) {
    if (observed_history.size() < t_next)
        throw std::invalid_argument("ppfd_forecast_step: history does not reach t_next");
    while (model.next_index < t_next)
        model.observe(observed_history[model.next_index]);
    if (model.next_index != t_next)
        throw std::invalid_argument("ppfd_forecast_step: t_next precedes consumed history");
    return model.predict_next();
}

// FOURIER baseline: every positive-frequency bin extrapolated as a cosine
// plus the zero-frequency mean. Over the training range this reproduces the
// series; beyond it, the continuation is purely periodic.
inline std::vector<double> fourier_sum_forecast(const Spectrum& spectrum,
                                                std::size_t t_start,
                                                std::size_t t_end) {
    if (t_start > t_end)
        throw std::invalid_argument("fourier_sum_forecast: empty horizon");
    const double mean =
        spectrum.coeffs[0].real() / static_cast<double>(spectrum.n);
    std::vector<Sinusoid> all;
    all.reserve(spectrum.n / 2);
    for (std::size_t k = 1; k <= spectrum.n / 2; ++k)
        all.push_back(Sinusoid{
            k, static_cast<double>(k) / static_cast<double>(spectrum.n),
            bin_amplitude(spectrum, k), std::arg(spectrum.coeffs[k])});
    std::vector<double> out(t_end - t_start + 1, mean);
    for (std::size_t t = t_start; t <= t_end; ++t)
        for (const auto& s : all)
            out[t - t_start] += sinusoid_value(s, static_cast<double>(t));
    return out;
}

inline std::vector<double> fourier_sum_forecast(const TimeSeries& training,
                                                std::size_t t_start,
                                                std::size_t t_end) {
    return fourier_sum_forecast(dft(training), t_start, t_end);
}

// Uniform one-step-ahead interface the evaluation loop drives.
class Forecaster {
public:
    virtual ~Forecaster() = default;
    virtual void fit(const TimeSeries& training) = 0;
    virtual double predict_next() = 0;
    virtual void observe(double value) = 0;
};

class PipelineForecaster final : public Forecaster {
public:
    PipelineForecaster(std::size_t c, BaseKind kind, PpfdConfig config)
        : c_(c), kind_(kind), config_(config) {}

    void fit(const TimeSeries& training) override {
        model_ = fit_pipeline(training, c_, kind_, config_);
    }
    double predict_next() override { return model_.predict_next(); }
    void observe(double value) override { model_.observe(value); }

    const PpfdModel& model() const { return model_; }

private:
    std::size_t c_;
    BaseKind kind_;
    PpfdConfig config_;
    PpfdModel model_;
};

class FourierForecaster final : public Forecaster {
public:
    void fit(const TimeSeries& training) override {
        spectrum_ = dft(training);
        next_index_ = training.size();
    }
    double predict_next() override {
        return fourier_sum_forecast(spectrum_, next_index_, next_index_)[0];
    }
    void observe(double) override { ++next_index_; }

    std::size_t c_used() const { return (spectrum_.n + 1) / 2; }

private:
    Spectrum spectrum_;
    std::size_t next_index_ = 0;
};

} // namespace ppfd
