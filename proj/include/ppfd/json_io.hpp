#pragma once

// JSON (de)serialization for fitted models and evaluation reports. Kept out
// of the core headers so the library itself has no vendor dependency; users
// of this header need nlohmann/json on the include path.

#include <string>
#include <variant>

#include <json.hpp>

#include "ppfd/evaluation.hpp"
#include "ppfd/forecast.hpp"

namespace ppfd {

inline constexpr int kModelSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

inline Json to_json(const Sinusoid& s) {
    return Json{{"bin", s.bin},
                {"frequency", s.frequency},
                {"amplitude", s.amplitude},
                {"phase", s.phase}};
}

inline Sinusoid sinusoid_from_json(const Json& j) {
    return Sinusoid{j.at("bin").get<std::size_t>(),
                    j.at("frequency").get<double>(),
                    j.at("amplitude").get<double>(),
                    j.at("phase").get<double>()};
}

inline Json to_json(const ScalingState& s) {
    return Json{{"x_min", s.x_min},
                {"x_max", s.x_max},
                {"l_max_abs", s.l_max_abs},
                {"s_prev", s.s_prev}};
}

inline ScalingState scaling_from_json(const Json& j) {
    ScalingState s;
    s.x_min = j.at("x_min").get<double>();
    s.x_max = j.at("x_max").get<double>();
    s.l_max_abs = j.at("l_max_abs").get<double>();
    s.s_prev = j.at("s_prev").get<double>();
    return s;
}

inline Json to_json(const AnnModel& m) {
    return Json{{"kind", "ann"},       {"window", m.window},
                {"w1", m.w1},          {"b1", m.b1},
                {"w2", m.w2},          {"b2", m.b2},
                {"learning_rate", m.config.learning_rate},
                {"epochs", m.config.epochs},
                {"seed", m.config.seed}};
}

inline AnnModel ann_from_json(const Json& j) {
    AnnModel m;
    m.window = j.at("window").get<std::size_t>();
    m.w1 = j.at("w1").get<std::vector<double>>();
    m.b1 = j.at("b1").get<std::vector<double>>();
    m.w2 = j.at("w2").get<std::vector<double>>();
    m.b2 = j.at("b2").get<double>();
    m.config.learning_rate = j.at("learning_rate").get<double>();
    m.config.epochs = j.at("epochs").get<int>();
    m.config.seed = j.at("seed").get<std::uint32_t>();
    return m;
}

inline Json to_json(const ArimaModel& m) {
    return Json{{"kind", "arima"},
                {"p", m.p},
                {"d", m.d},
                {"q", m.q},
                {"ar", m.ar},
                {"ma", m.ma},
                {"intercept", m.intercept},
                {"residual_history", m.residual_history},
                {"stationary", m.stationary}};
}

inline ArimaModel arima_from_json(const Json& j) {
    ArimaModel m;
    m.p = j.at("p").get<std::size_t>();
    m.d = j.at("d").get<std::size_t>();
    m.q = j.at("q").get<std::size_t>();
    m.ar = j.at("ar").get<std::vector<double>>();
    m.ma = j.at("ma").get<std::vector<double>>();
    m.intercept = j.at("intercept").get<double>();
    m.residual_history = j.at("residual_history").get<std::vector<double>>();
    m.stationary = j.at("stationary").get<bool>();
    return m;
}

inline Json to_json(const PpfdModel& m) {
    Json sins = Json::array();
    for (const auto& s : m.sinusoids) sins.push_back(to_json(s));
    Json base = std::holds_alternative<AnnModel>(m.base)
                    ? to_json(std::get<AnnModel>(m.base))
                    : to_json(std::get<ArimaModel>(m.base));
    return Json{{"schema_version", kModelSchemaVersion},
                {"sinusoids", sins},
                {"scaling", to_json(m.scaling)},
                {"base", base},
                {"window", m.window},
                {"training_length", m.training_length},
                {"y_history", m.y_history},
                {"next_index", m.next_index}};
}

inline PpfdModel ppfd_model_from_json(const Json& j) {
    if (j.at("schema_version").get<int>() != kModelSchemaVersion)
        throw std::runtime_error("model schema version mismatch");
    PpfdModel m;
    for (const auto& s : j.at("sinusoids")) m.sinusoids.push_back(sinusoid_from_json(s));
    m.scaling = scaling_from_json(j.at("scaling"));
    const auto& base = j.at("base");
    if (base.at("kind").get<std::string>() == "ann")
        m.base = ann_from_json(base);
    else
        m.base = arima_from_json(base);
    m.window = j.at("window").get<std::size_t>();
    m.training_length = j.at("training_length").get<std::size_t>();
    m.y_history = j.at("y_history").get<std::vector<double>>();
    m.next_index = j.at("next_index").get<std::size_t>();
    return m;
}

inline Json to_json(const MetricReport& r) {
    return Json{{"rmse", r.rmse},
                {"rwse", r.rwse},
                {"peak_rmse", r.peak_rmse},
                {"peak_rwse", r.peak_rwse},
                {"under_predicted", r.under_predicted},
                {"over_predicted", r.over_predicted},
                {"n_total", r.n_total},
                {"n_peaks", r.n_peaks},
                {"alpha", r.alpha}};
}

inline MetricReport metric_report_from_json(const Json& j) {
    MetricReport r;
    r.rmse = j.at("rmse").get<double>();
    r.rwse = j.at("rwse").get<double>();
    r.peak_rmse = j.at("peak_rmse").get<double>();
    r.peak_rwse = j.at("peak_rwse").get<double>();
    r.under_predicted = j.at("under_predicted").get<std::size_t>();
    r.over_predicted = j.at("over_predicted").get<std::size_t>();
    r.n_total = j.at("n_total").get<std::size_t>();
    r.n_peaks = j.at("n_peaks").get<std::size_t>();
    r.alpha = j.at("alpha").get<double>();
    return r;
}

inline Json to_json(const ExperimentConfig& c) {
    Json j{{"model", to_string(c.kind)},
           {"c", c.c},
           {"window", c.window},
           {"alpha", c.alpha},
           {"folds", c.k},
           {"arima_p_max", c.arima_p_max},
           {"arima_q_max", c.arima_q_max},
           {"ann_learning_rate", c.ann_learning_rate},
           {"ann_epochs", c.ann_epochs},
           {"seed", c.seed}};
    if (c.arima_p) j["arima_p"] = *c.arima_p;
    if (c.arima_q) j["arima_q"] = *c.arima_q;
    return j;
}

} // namespace ppfd
