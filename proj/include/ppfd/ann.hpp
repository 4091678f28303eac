#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ppfd/window.hpp"

namespace ppfd {

struct AnnConfig {
    double learning_rate = 0.05;
    int epochs = 2000;
    std::uint32_t seed = 1;
};

// Shallow feed-forward net: w inputs, one hidden layer of five sigmoid
// units, a single linear output. Trained full-batch on mean squared error.
struct AnnModel {
    static constexpr std::size_t kHidden = 5;

    std::size_t window = 0;
    std::vector<double> w1; // kHidden x window, row-major per hidden unit
    std::vector<double> b1; // kHidden
    std::vector<double> w2; // kHidden
    double b2 = 0.0;
    AnnConfig config;
};

// Flat parameter layout used by training and the gradient check:
// [w1 | b1 | w2 | b2].
struct AnnGradient {
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;
};

namespace detail {
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}

inline double ann_predict(const AnnModel& m, const std::vector<double>& window) {
    if (window.size() != m.window)
        throw std::invalid_argument("ann_predict: wrong window length");
    double out = m.b2;
    for (std::size_t j = 0; j < AnnModel::kHidden; ++j) {
        double z = m.b1[j];
        const double* row = m.w1.data() + j * m.window;
        for (std::size_t i = 0; i < m.window; ++i) z += row[i] * window[i];
        out += m.w2[j] * detail::sigmoid(z);
    }
    return out;
}

// Mean-squared-error loss over the dataset and its analytic gradient.
inline double ann_loss_gradient(const AnnModel& m, const WindowDataset& data,
                                AnnGradient& grad) {
    const std::size_t w = m.window;
    grad.w1.assign(AnnModel::kHidden * w, 0.0);
    grad.b1.assign(AnnModel::kHidden, 0.0);
    grad.w2.assign(AnnModel::kHidden, 0.0);
    grad.b2 = 0.0;

    const double inv_m = 1.0 / static_cast<double>(data.inputs.size());
    double loss = 0.0;
    std::vector<double> h(AnnModel::kHidden);
    for (std::size_t s = 0; s < data.inputs.size(); ++s) {
        const auto& x = data.inputs[s];
        double out = m.b2;
        for (std::size_t j = 0; j < AnnModel::kHidden; ++j) {
            double z = m.b1[j];
            const double* row = m.w1.data() + j * w;
            for (std::size_t i = 0; i < w; ++i) z += row[i] * x[i];
            h[j] = detail::sigmoid(z);
            out += m.w2[j] * h[j];
        }
        const double err = out - data.targets[s];
        loss += err * err;

        const double dout = 2.0 * err * inv_m;
        grad.b2 += dout;
        for (std::size_t j = 0; j < AnnModel::kHidden; ++j) {
            grad.w2[j] += dout * h[j];
            const double dz = dout * m.w2[j] * h[j] * (1.0 - h[j]);
            grad.b1[j] += dz;
            double* grow = grad.w1.data() + j * w;
            for (std::size_t i = 0; i < w; ++i) grow[i] += dz * x[i];
        }
    }
    return loss * inv_m;
}

inline AnnModel ann_init(std::size_t window, const AnnConfig& config) {
    AnnModel m;
    m.window = window;
    m.config = config;
    std::mt19937 rng(config.seed);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    m.w1.resize(AnnModel::kHidden * window);
    m.b1.resize(AnnModel::kHidden);
    m.w2.resize(AnnModel::kHidden);
    for (auto& v : m.w1) v = dist(rng);
    for (auto& v : m.b1) v = dist(rng);
    for (auto& v : m.w2) v = dist(rng);
    m.b2 = dist(rng);
    return m;
}

inline AnnModel ann_fit(const WindowDataset& data, const AnnConfig& config) {
    if (data.inputs.empty())
        throw std::invalid_argument("ann_fit: empty dataset");
    AnnModel m = ann_init(data.window_size, config);
    AnnGradient g;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const double loss = ann_loss_gradient(m, data, g);
        if (!std::isfinite(loss))
            throw std::runtime_error("ann_fit: non-finite loss at epoch " +
                                     std::to_string(epoch));
        const double lr = config.learning_rate;
        for (std::size_t i = 0; i < m.w1.size(); ++i) m.w1[i] -= lr * g.w1[i];
        for (std::size_t j = 0; j < AnnModel::kHidden; ++j) {
            m.b1[j] -= lr * g.b1[j];
            m.w2[j] -= lr * g.w2[j];
        }
        m.b2 -= lr * g.b2;
    }
    return m;
}

} // namespace ppfd
