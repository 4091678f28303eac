#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppfd/forecast.hpp"
#include "ppfd/metrics.hpp"
#include "ppfd/peaks.hpp"
#include "ppfd/time_series.hpp"

namespace ppfd {

struct FoldPlan {
    struct Fold {
        std::size_t train_begin = 0; // always 0
        std::size_t train_end = 0;   // exclusive
        std::size_t validate_begin = 0;
        std::size_t validate_end = 0; // exclusive
    };
    std::vector<Fold> folds;
    std::size_t k = 0;
};

// Forward-chaining splits: the series is cut into k+1 contiguous blocks of
// near-equal size (remainder spread over the earliest blocks); fold i trains
// on blocks 0..i and validates on block i+1.
inline FoldPlan forward_chain_splits(std::size_t n, std::size_t k,
                                     std::size_t min_block = 2) {
    if (k < 1) throw std::invalid_argument("forward_chain_splits: k < 1");
    const std::size_t blocks = k + 1;
    if (n < blocks * min_block)
        throw std::invalid_argument(
            "forward_chain_splits: need at least " +
            std::to_string(blocks * min_block) + " samples for k=" +
            std::to_string(k));
    const std::size_t base = n / blocks;
    const std::size_t rem = n % blocks;

    std::vector<std::size_t> bounds(blocks + 1, 0);
    for (std::size_t b = 0; b < blocks; ++b)
        bounds[b + 1] = bounds[b] + base + (b < rem ? 1 : 0);

    FoldPlan plan;
    plan.k = k;
    for (std::size_t i = 0; i < k; ++i)
        plan.folds.push_back(
            {0, bounds[i + 1], bounds[i + 1], bounds[i + 2]});
    return plan;
}

enum class ModelKind { ann, arima, fourier, ppfd_ann, ppfd_arima };

inline std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::ann: return "ann";
        case ModelKind::arima: return "arima";
        case ModelKind::fourier: return "fourier";
        case ModelKind::ppfd_ann: return "ppfd-ann";
        case ModelKind::ppfd_arima: return "ppfd-arima";
    }
    throw std::invalid_argument("unknown model kind");
}

inline ModelKind model_kind_from_string(const std::string& s) {
    if (s == "ann") return ModelKind::ann;
    if (s == "arima") return ModelKind::arima;
    if (s == "fourier") return ModelKind::fourier;
    if (s == "ppfd-ann") return ModelKind::ppfd_ann;
    if (s == "ppfd-arima") return ModelKind::ppfd_arima;
    throw std::invalid_argument("unknown model kind: " + s);
}

struct ExperimentConfig {
    ModelKind kind = ModelKind::ppfd_ann;
    std::size_t c = 3;           // seasonal components (ppfd kinds only)
    std::size_t window = 7;
    double alpha = 0.2;
    std::size_t k = 5;
    std::size_t arima_p_max = 5; // grid bounds when orders are not fixed
    std::size_t arima_q_max = 5;
    std::optional<std::size_t> arima_p; // fixed orders, skip selection
    std::optional<std::size_t> arima_q;
    double ann_learning_rate = 0.05;
    int ann_epochs = 2000;
    std::uint32_t seed = 1;
};

struct EvaluationReport {
    std::vector<MetricReport> per_fold;
    MetricReport averaged;
    // config echo of values resolved at run time
    std::size_t resolved_arima_p = 0;
    std::size_t resolved_arima_q = 0;
    std::size_t resolved_c = 0;
    // per-index trace of the final fold, for plot emission
    std::vector<std::size_t> last_fold_indices;
    std::vector<double> last_fold_actual;
    std::vector<double> last_fold_forecast;
    std::vector<std::size_t> last_fold_peaks;
};

inline MetricReport average_reports(const std::vector<MetricReport>& folds) {
    MetricReport avg;
    if (folds.empty()) return avg;
    for (const auto& f : folds) {
        avg.rmse += f.rmse;
        avg.rwse += f.rwse;
        avg.peak_rmse += f.peak_rmse;
        avg.peak_rwse += f.peak_rwse;
        avg.under_predicted += f.under_predicted; // counts are summed
        avg.over_predicted += f.over_predicted;
        avg.n_total += f.n_total;
        avg.n_peaks += f.n_peaks;
    }
    const auto k = static_cast<double>(folds.size());
    avg.rmse /= k;
    avg.rwse /= k;
    avg.peak_rmse /= k;
    avg.peak_rwse /= k;
    avg.alpha = folds.front().alpha;
    return avg;
}

namespace detail {

inline std::unique_ptr<Forecaster> make_forecaster(const ExperimentConfig& cfg,
                                                   std::size_t fold_index,
                                                   std::size_t arima_p,
                                                   std::size_t arima_q) {
    PpfdConfig pc;
    pc.window = cfg.window;
    pc.ann.learning_rate = cfg.ann_learning_rate;
    pc.ann.epochs = cfg.ann_epochs;
    pc.ann.seed = cfg.seed + static_cast<std::uint32_t>(fold_index);
    pc.arima_p = arima_p;
    pc.arima_q = arima_q;
    switch (cfg.kind) {
        case ModelKind::ann:
            return std::make_unique<PipelineForecaster>(0, BaseKind::ann, pc);
        case ModelKind::arima:
            return std::make_unique<PipelineForecaster>(0, BaseKind::arima, pc);
        case ModelKind::fourier:
            return std::make_unique<FourierForecaster>();
        case ModelKind::ppfd_ann:
            return std::make_unique<PipelineForecaster>(cfg.c, BaseKind::ann, pc);
        case ModelKind::ppfd_arima:
            return std::make_unique<PipelineForecaster>(cfg.c, BaseKind::arima, pc);
    }
    throw std::invalid_argument("unknown model kind");
}

inline TimeSeries slice(const TimeSeries& s, std::size_t begin, std::size_t end) {
    return TimeSeries{s.time_at(begin), s.step,
                      std::vector<double>(s.values.begin() + static_cast<long>(begin),
                                          s.values.begin() + static_cast<long>(end))};
}

} // namespace detail

using ForecasterFactory = std::function<std::unique_ptr<Forecaster>(
    const ExperimentConfig&, std::size_t fold_index, std::size_t arima_p,
    std::size_t arima_q)>;

// Runs forward-chaining cross-validation: refit the configured model from
// scratch on each fold's training prefix, forecast its validation block
// one step ahead, score against peaks detected on the validation actuals.
// The factory hook exists so tests can inject a stand-in model.
inline EvaluationReport run_experiment(
    const TimeSeries& series, const ExperimentConfig& cfg,
    const ForecasterFactory& factory = detail::make_forecaster) {
    const FoldPlan plan =
        forward_chain_splits(series.size(), cfg.k, cfg.window + 2);

    // ARIMA orders are selected once per dataset, on the first training fold.
    std::size_t arima_p = cfg.arima_p.value_or(0);
    std::size_t arima_q = cfg.arima_q.value_or(0);
    const bool needs_arima = cfg.kind == ModelKind::arima ||
                             cfg.kind == ModelKind::ppfd_arima;
    if (needs_arima && (!cfg.arima_p || !cfg.arima_q)) {
        TimeSeries train0 = detail::slice(series, 0, plan.folds[0].train_end);
        PpfdConfig pc;
        pc.window = cfg.window;
        const std::size_t c0 = cfg.kind == ModelKind::ppfd_arima ? cfg.c : 0;
        // select on the same normalized residual space the fit will see
        TimeSeries residual = train0;
        if (c0 > 0) {
            const Spectrum spec = dft(train0);
            residual = idft(remove_components(spec, top_components(spec, c0)));
        }
        auto [y, state] = fit_forward(residual);
        (void)state;
        std::tie(arima_p, arima_q) =
            arima_select(y, cfg.arima_p_max, cfg.arima_q_max);
    }

    EvaluationReport report;
    report.resolved_arima_p = arima_p;
    report.resolved_arima_q = arima_q;
    report.resolved_c = cfg.kind == ModelKind::fourier
                            ? (plan.folds[0].train_end + 1) / 2
                            : cfg.c;

    for (std::size_t i = 0; i < plan.folds.size(); ++i) {
        const auto& fold = plan.folds[i];
        try {
            auto model = factory(cfg, i, arima_p, arima_q);
            model->fit(detail::slice(series, 0, fold.train_end));

            std::vector<double> actual, forecast;
            actual.reserve(fold.validate_end - fold.validate_begin);
            forecast.reserve(actual.capacity());
            for (std::size_t t = fold.validate_begin; t < fold.validate_end; ++t) {
                forecast.push_back(model->predict_next());
                actual.push_back(series.values[t]);
                model->observe(series.values[t]);
            }

            const PeakSet peaks = find_peaks(actual);
            report.per_fold.push_back(
                ppfd::report(actual, forecast, peaks, cfg.alpha));

            if (i + 1 == plan.folds.size()) {
                report.last_fold_actual = actual;
                report.last_fold_forecast = forecast;
                report.last_fold_peaks = peaks.indices;
                for (std::size_t t = fold.validate_begin; t < fold.validate_end; ++t)
                    report.last_fold_indices.push_back(t);
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("fold " + std::to_string(i) + ": " +
                                     e.what());
        }
    }
    report.averaged = average_reports(report.per_fold);
    return report;
}

} // namespace ppfd
