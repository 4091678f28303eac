// ppfd — seasonal-decomposition peak forecasting over univariate CSV series.
//
// Subcommands:
//   synth     generate the benchmark trend-plus-sines series as CSV
//   evaluate  run a model under forward-chaining CV, emit a JSON report
//   compare   tabulate one or more report JSONs side by side

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppfd/csv.hpp"
#include "ppfd/evaluation.hpp"
#include "ppfd/json_io.hpp"
#include "ppfd/synth.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(h));
    return h;
}

std::string hex64(std::uint64_t h) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(h));
    return hex;
}

std::string default_out(const std::string& name) {
    if (const char* dir = std::getenv("PPFD_OUT_DIR"))
        return std::string(dir) + "/" + name;
    return name;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_synth(const std::string& out_path, std::size_t n, double slope,
              double intercept, const std::vector<std::string>& component_flags,
              bool iso) {
    ppfd::SynthSpec spec;
    spec.n = n;
    spec.slope = slope;
    spec.intercept = intercept;
    if (!component_flags.empty()) {
        spec.components.clear();
        for (const auto& f : component_flags) {
            const auto colon = f.find(':');
            if (colon == std::string::npos) {
                std::cerr << "malformed --component (want period:amplitude): "
                          << f << "\n";
                return kExitNumeric;
            }
            spec.components.emplace_back(std::stod(f.substr(0, colon)),
                                         std::stod(f.substr(colon + 1)));
        }
    }

    try {
        const ppfd::TimeSeries series = ppfd::generate(spec);
        ppfd::write_csv(out_path, series, iso);
        double mn = series.values[0], mx = series.values[0], sum = 0.0;
        for (double v : series.values) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            sum += v;
        }
        std::printf("wrote %s: n=%zu mean=%.1f min=%.1f median=%.1f max=%.1f\n",
                    out_path.c_str(), series.size(),
                    sum / static_cast<double>(series.size()), mn,
                    median_of(series.values), mx);
    } catch (const std::exception& e) {
        std::cerr << "synth: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}

struct EvaluateFlags {
    std::string input;
    std::string out = default_out("report.json");
    std::string model = "ppfd-ann";
    std::string step;
    std::string truncate_after;
    std::string plot_data;
    std::string spectrum_dump;
    bool no_interpolate = false;
    ppfd::ExperimentConfig config;
    long long arima_p = -1;
    long long arima_q = -1;
};

int cmd_evaluate(EvaluateFlags& f) {
    ppfd::TimeSeries series;
    std::uint64_t input_hash = 0;
    try {
        std::optional<ppfd::Duration> step;
        if (!f.step.empty()) step = ppfd::parse_step(f.step);
        const ppfd::CsvData csv = ppfd::read_csv(f.input, step);
        input_hash = fnv1a_file(f.input);

        ppfd::Duration grid_step;
        if (step) {
            grid_step = *step;
        } else {
            if (csv.timestamps.size() < 2)
                throw std::runtime_error("need at least 2 samples");
            grid_step = csv.timestamps[1] - csv.timestamps[0];
            for (std::size_t i = 2; i < csv.timestamps.size(); ++i)
                grid_step = std::min(grid_step,
                                     csv.timestamps[i] - csv.timestamps[i - 1]);
        }
        auto [raw, gaps] = ppfd::from_samples(csv.timestamps, csv.values, grid_step);
        series = f.no_interpolate ? raw : ppfd::linear_interpolate(raw, gaps);
        if (f.no_interpolate && !gaps.empty())
            throw std::runtime_error("series has gaps and --no-interpolate given");
        if (!f.truncate_after.empty())
            series = ppfd::truncate_after(
                series, ppfd::parse_instant(f.truncate_after, grid_step));
    } catch (const std::exception& e) {
        std::cerr << "evaluate: " << e.what() << "\n";
        return kExitIo;
    }

    f.config.kind = ppfd::model_kind_from_string(f.model);
    if (f.arima_p >= 0) f.config.arima_p = static_cast<std::size_t>(f.arima_p);
    if (f.arima_q >= 0) f.config.arima_q = static_cast<std::size_t>(f.arima_q);

    ppfd::EvaluationReport report;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        report = ppfd::run_experiment(series, f.config);
    } catch (const std::exception& e) {
        std::cerr << "evaluate: " << e.what() << "\n";
        return kExitNumeric;
    }
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    try {
        ppfd::Json j;
        j["schema_version"] = ppfd::kReportSchemaVersion;
        j["config"] = ppfd::to_json(f.config);
        j["config"]["resolved_c"] = report.resolved_c;
        j["config"]["resolved_arima_p"] = report.resolved_arima_p;
        j["config"]["resolved_arima_q"] = report.resolved_arima_q;
        j["manifest"] = ppfd::Json{{"tool_version", kVersion},
                                   {"input_path", f.input},
                                   {"input_fnv1a64", hex64(input_hash)},
                                   {"report_path", f.out},
                                   {"plot_data_path", f.plot_data}};
        ppfd::Json folds = ppfd::Json::array();
        for (const auto& fr : report.per_fold) folds.push_back(ppfd::to_json(fr));
        j["folds"] = folds;
        j["averaged"] = ppfd::to_json(report.averaged);
        j["runtime_seconds"] = runtime;

        std::ofstream out(f.out);
        if (!out) throw std::runtime_error("cannot open output file: " + f.out);
        out << j.dump(2) << "\n";
        if (!out) throw std::runtime_error("write failed: " + f.out);

        if (!f.plot_data.empty()) {
            std::ofstream plot(f.plot_data);
            if (!plot)
                throw std::runtime_error("cannot open output file: " + f.plot_data);
            plot << "index,actual,forecast,is_peak\n";
            plot.precision(17);
            for (std::size_t i = 0; i < report.last_fold_indices.size(); ++i) {
                const bool is_peak =
                    std::binary_search(report.last_fold_peaks.begin(),
                                       report.last_fold_peaks.end(), i);
                plot << report.last_fold_indices[i] << ','
                     << report.last_fold_actual[i] << ','
                     << report.last_fold_forecast[i] << ',' << (is_peak ? 1 : 0)
                     << '\n';
            }
        }

        if (!f.spectrum_dump.empty()) {
            const ppfd::Spectrum spec = ppfd::dft(series);
            std::ofstream sd(f.spectrum_dump);
            if (!sd)
                throw std::runtime_error("cannot open output file: " +
                                         f.spectrum_dump);
            sd << "bin,frequency,amplitude,phase\n";
            sd.precision(17);
            for (std::size_t k = 1; k <= spec.n / 2; ++k)
                sd << k << ',' << static_cast<double>(k) / static_cast<double>(spec.n)
                   << ',' << ppfd::bin_amplitude(spec, k) << ','
                   << std::arg(spec.coeffs[k]) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "evaluate: " << e.what() << "\n";
        return kExitIo;
    }

    std::printf("report written to %s (%.1fs)\n", f.out.c_str(), runtime);
    return 0;
}

int cmd_compare(const std::vector<std::string>& report_paths,
                const std::string& out_path) {
    std::vector<ppfd::Json> reports;
    try {
        for (const auto& path : report_paths) {
            std::ifstream in(path);
            if (!in) throw std::runtime_error("cannot open report: " + path);
            ppfd::Json j;
            in >> j;
            if (j.at("schema_version").get<int>() != ppfd::kReportSchemaVersion)
                throw std::runtime_error("schema version mismatch in " + path);
            reports.push_back(std::move(j));
        }
    } catch (const std::exception& e) {
        std::cerr << "compare: " << e.what() << "\n";
        return kExitIo;
    }

    std::ostringstream table;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %6s %9s %9s %10s %10s %16s %15s\n",
                  "Model", "c", "RMSE", "RWSE", "Peak RMSE", "Peak RWSE",
                  "Under Predicted", "Over Predicted");
    table << line;
    bool alpha_conflict = false;
    double alpha0 = 0.0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& j = reports[i];
        const auto& avg = j.at("averaged");
        const double alpha = avg.at("alpha").get<double>();
        if (i == 0)
            alpha0 = alpha;
        else if (alpha != alpha0)
            alpha_conflict = true;
        const std::string model = j.at("config").at("model").get<std::string>();
        const auto c = j.at("config").at("resolved_c").get<std::size_t>();
        std::snprintf(line, sizeof line,
                      "%-12s %6zu %9.5f %9.5f %10.5f %10.5f %16zu %15zu\n",
                      model.c_str(), c, avg.at("rmse").get<double>(),
                      avg.at("rwse").get<double>(),
                      avg.at("peak_rmse").get<double>(),
                      avg.at("peak_rwse").get<double>(),
                      avg.at("under_predicted").get<std::size_t>(),
                      avg.at("over_predicted").get<std::size_t>());
        table << line;
    }
    if (alpha_conflict)
        table << "note: reports were produced with differing alpha values\n";

    if (out_path.empty() || out_path == "-") {
        std::cout << table.str();
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "compare: cannot open output file: " << out_path << "\n";
            return kExitIo;
        }
        out << table.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Peak-aware time-series forecasting via Fourier decomposition"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate the synthetic series");
    std::string synth_out = default_out("synthetic.csv");
    std::size_t synth_n = 7500;
    double synth_slope = 100000.0;
    double synth_intercept = 1e9;
    std::vector<std::string> synth_components;
    bool synth_iso = false;
    synth->add_option("--out", synth_out, "output CSV path");
    synth->add_option("--n", synth_n, "sample count");
    synth->add_option("--slope", synth_slope, "trend slope per sample");
    synth->add_option("--intercept", synth_intercept, "trend intercept");
    synth->add_option("--component", synth_components,
                      "period:amplitude, repeatable; overrides defaults");
    synth->add_flag("--iso", synth_iso, "write ISO-8601 timestamps");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "run one model under CV");
    EvaluateFlags ef;
    evaluate->add_option("--input", ef.input, "input CSV")->required();
    evaluate->add_option("--out", ef.out, "report JSON path");
    evaluate->add_option("--model", ef.model,
                         "ann|arima|fourier|ppfd-ann|ppfd-arima");
    evaluate->add_option("-c,--components", ef.config.c,
                         "seasonal components (ppfd models)");
    evaluate->add_option("--window", ef.config.window, "input window size");
    evaluate->add_option("--folds", ef.config.k, "CV rounds");
    evaluate->add_option("--alpha", ef.config.alpha, "over-prediction weight");
    evaluate->add_option("--seed", ef.config.seed, "RNG seed");
    evaluate->add_option("--step", ef.step,
                         "grid step (e.g. 1d); required for integer timestamps");
    evaluate->add_option("--arima-p", ef.arima_p, "fix AR order");
    evaluate->add_option("--arima-q", ef.arima_q, "fix MA order");
    evaluate->add_option("--arima-p-max", ef.config.arima_p_max,
                         "AR order grid bound");
    evaluate->add_option("--arima-q-max", ef.config.arima_q_max,
                         "MA order grid bound");
    evaluate->add_option("--ann-epochs", ef.config.ann_epochs, "ANN epochs");
    evaluate->add_option("--ann-lr", ef.config.ann_learning_rate,
                         "ANN learning rate");
    evaluate->add_flag("--no-interpolate", ef.no_interpolate,
                       "fail on gaps instead of interpolating");
    evaluate->add_option("--truncate-after", ef.truncate_after,
                         "drop samples after this instant (ISO or index)");
    evaluate->add_option("--plot-data", ef.plot_data,
                         "write index,actual,forecast,is_peak CSV of final fold");
    evaluate->add_option("--spectrum-dump", ef.spectrum_dump,
                         "write bin,frequency,amplitude,phase CSV");

    // compare
    auto* compare = app.add_subcommand("compare", "tabulate report JSONs");
    std::vector<std::string> compare_reports;
    std::string compare_out = "-";
    compare->add_option("reports", compare_reports, "report JSON files")
        ->required();
    compare->add_option("--out", compare_out, "table path ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    if (synth->parsed())
        return cmd_synth(synth_out, synth_n, synth_slope, synth_intercept,
                         synth_components, synth_iso);
    if (evaluate->parsed()) return cmd_evaluate(ef);
    return cmd_compare(compare_reports, compare_out);
}
