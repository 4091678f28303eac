#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppfd/time_series.hpp"

namespace ppfd {

// ARIMA(p,1,q): the series is differenced once, then
//   d_t = mu + sum_i ar[i]*d_{t-1-i} + sum_j ma[j]*e_{t-1-j} + e_t.
// Coefficients are estimated by minimizing the conditional sum of squared
// residuals (pre-sample residuals fixed at zero, first p diffs conditioned on).
struct ArimaModel {
    std::size_t p = 0;
    std::size_t d = 1;
    std::size_t q = 0;
    std::vector<double> ar;
    std::vector<double> ma;
    double intercept = 0.0;
    std::vector<double> residual_history; // chronological, most recent last
    double sse = 0.0;                     // fit diagnostics
    std::size_t n_resid = 0;
    bool stationary = true;
};

namespace detail {

// Numerical-gradient BFGS with Armijo backtracking. Small dense problems
// only (here at most 11 parameters).
inline std::vector<double> bfgs_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, int max_iter, const char* what) {
    const std::size_t k = x.size();
    if (k == 0) return x;

    auto gradient = [&](const std::vector<double>& p) {
        std::vector<double> g(k);
        std::vector<double> q = p;
        for (std::size_t i = 0; i < k; ++i) {
            const double h = 1e-6 * (1.0 + std::abs(p[i]));
            q[i] = p[i] + h;
            const double fp = f(q);
            q[i] = p[i] - h;
            const double fm = f(q);
            q[i] = p[i];
            g[i] = (fp - fm) / (2.0 * h);
        }
        return g;
    };

    std::vector<double> hinv(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) hinv[i * k + i] = 1.0;

    double fx = f(x);
    if (!std::isfinite(fx))
        throw std::runtime_error(std::string(what) + ": non-finite objective");
    std::vector<double> g = gradient(x);

    for (int iter = 0; iter < max_iter; ++iter) {
        double gnorm = 0.0;
        for (double v : g) gnorm = std::max(gnorm, std::abs(v));
        if (gnorm < 1e-8 * (1.0 + std::abs(fx))) return x;

        std::vector<double> dir(k, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                dir[i] -= hinv[i * k + j] * g[j];

        double slope = 0.0;
        for (std::size_t i = 0; i < k; ++i) slope += dir[i] * g[i];
        if (slope >= 0.0) { // reset to steepest descent
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    hinv[i * k + j] = (i == j) ? 1.0 : 0.0;
            for (std::size_t i = 0; i < k; ++i) dir[i] = -g[i];
            slope = 0.0;
            for (std::size_t i = 0; i < k; ++i) slope += dir[i] * g[i];
        }

        double step = 1.0;
        std::vector<double> xn(k);
        double fn = fx;
        bool moved = false;
        while (step > 1e-14) {
            for (std::size_t i = 0; i < k; ++i) xn[i] = x[i] + step * dir[i];
            fn = f(xn);
            if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) return x; // stalled: accept current point

        std::vector<double> gn = gradient(xn);
        std::vector<double> s(k), ydiff(k);
        double sy = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            s[i] = xn[i] - x[i];
            ydiff[i] = gn[i] - g[i];
            sy += s[i] * ydiff[i];
        }
        if (sy > 1e-12) {
            // BFGS inverse-Hessian update
            std::vector<double> hy(k, 0.0);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    hy[i] += hinv[i * k + j] * ydiff[j];
            double yhy = 0.0;
            for (std::size_t i = 0; i < k; ++i) yhy += ydiff[i] * hy[i];
            const double c1 = (sy + yhy) / (sy * sy);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    hinv[i * k + j] += c1 * s[i] * s[j] -
                                       (hy[i] * s[j] + s[i] * hy[j]) / sy;
        }
        x = std::move(xn);
        fx = fn;
        g = std::move(gn);
    }
    return x;
}

// CSS residuals of a differenced series for a given parameter set; residuals
// before index p are conditioned out (treated as zero).
inline double css_sse(const std::vector<double>& diffs, std::size_t p,
                      std::size_t q, double mu, const double* ar,
                      const double* ma, std::vector<double>* resid_out) {
    const std::size_t m = diffs.size();
    std::vector<double> e(m, 0.0);
    double sse = 0.0;
    for (std::size_t t = p; t < m; ++t) {
        double pred = mu;
        for (std::size_t i = 0; i < p; ++i) pred += ar[i] * diffs[t - 1 - i];
        for (std::size_t j = 0; j < q && t >= j + 1; ++j)
            pred += ma[j] * e[t - 1 - j];
        e[t] = diffs[t] - pred;
        sse += e[t] * e[t];
    }
    if (resid_out) *resid_out = std::move(e);
    return sse;
}

// Stationarity of the AR polynomial via the step-down (inverse
// Levinson-Durbin) recursion: stationary iff every reflection coefficient
// has magnitude below one.
inline bool ar_stationary(std::vector<double> a) {
    for (std::size_t m = a.size(); m > 0; --m) {
        const double k = a[m - 1];
        if (std::abs(k) >= 1.0) return false;
        if (m == 1) break;
        std::vector<double> b(m - 1);
        const double denom = 1.0 - k * k;
        for (std::size_t i = 0; i < m - 1; ++i)
            b[i] = (a[i] + k * a[m - 2 - i]) / denom;
        a = std::move(b);
    }
    return true;
}

} // namespace detail

inline std::vector<double> difference_once(const std::vector<double>& x) {
    if (x.size() < 2)
        throw std::invalid_argument("difference_once: need at least 2 points");
    std::vector<double> d(x.size() - 1);
    for (std::size_t t = 1; t < x.size(); ++t) d[t - 1] = x[t] - x[t - 1];
    return d;
}

inline ArimaModel arima_fit(const TimeSeries& series, std::size_t p,
                            std::size_t q) {
    const std::size_t n = series.size();
    if (n <= p + q + 2)
        throw std::invalid_argument("arima_fit: series too short for (p,q)");
    std::vector<double> diffs = difference_once(series.values);

    // Optimize on unit-scaled diffs; AR/MA coefficients are scale-invariant
    // and only the intercept needs mapping back.
    double sd = 0.0;
    for (double v : diffs) sd += v * v;
    sd = std::sqrt(sd / static_cast<double>(diffs.size()));
    if (sd <= 0.0) sd = 1.0;
    std::vector<double> z(diffs.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = diffs[i] / sd;

    const std::size_t k = 1 + p + q;
    std::vector<double> theta(k, 0.0);
    double zmean = 0.0;
    for (double v : z) zmean += v;
    theta[0] = zmean / static_cast<double>(z.size());

    auto objective = [&](const std::vector<double>& t) {
        return detail::css_sse(z, p, q, t[0], t.data() + 1, t.data() + 1 + p,
                               nullptr);
    };
    theta = detail::bfgs_minimize(objective, std::move(theta), 500, "arima_fit");

    ArimaModel m;
    m.p = p;
    m.q = q;
    m.intercept = theta[0] * sd;
    m.ar.assign(theta.begin() + 1, theta.begin() + 1 + static_cast<long>(p));
    m.ma.assign(theta.begin() + 1 + static_cast<long>(p), theta.end());
    m.stationary = detail::ar_stationary(m.ar);

    std::vector<double> resid;
    m.sse = detail::css_sse(z, p, q, theta[0], theta.data() + 1,
                            theta.data() + 1 + p, &resid) * sd * sd;
    m.n_resid = diffs.size() - p;
    if (!std::isfinite(m.sse))
        throw std::runtime_error("arima_fit: optimizer failed to converge");
    m.residual_history.assign(resid.end() - static_cast<long>(std::min(q, resid.size())),
                              resid.end());
    for (auto& e : m.residual_history) e *= sd;
    return m;
}

// One-step forecast: last observed value plus the predicted difference.
inline double arima_predict(const ArimaModel& model,
                            const std::vector<double>& history) {
    if (history.size() < model.p + 1)
        throw std::invalid_argument("arima_predict: insufficient history");
    double delta = model.intercept;
    const std::size_t last = history.size() - 1;
    for (std::size_t i = 0; i < model.p; ++i)
        delta += model.ar[i] * (history[last - i] - history[last - i - 1]);
    for (std::size_t j = 0; j < model.q && j < model.residual_history.size(); ++j)
        delta += model.ma[j] *
                 model.residual_history[model.residual_history.size() - 1 - j];
    return history.back() + delta;
}

// Advances the residual history after the true next value arrives.
inline void arima_observe(ArimaModel& model, double predicted, double observed) {
    if (model.q == 0) return;
    model.residual_history.push_back(observed - predicted);
    if (model.residual_history.size() > model.q)
        model.residual_history.erase(model.residual_history.begin());
}

inline double arima_aic(const ArimaModel& m) {
    const double n = static_cast<double>(m.n_resid);
    const double mean_sse = std::max(m.sse / n, 1e-300);
    return n * std::log(mean_sse) +
           2.0 * static_cast<double>(m.p + m.q + 1);
}

// Grid search over (p,q) minimizing AIC; ties resolved toward the smaller
// model (p+q, then p).
inline std::pair<std::size_t, std::size_t> arima_select(
    const TimeSeries& series, std::size_t p_max, std::size_t q_max) {
    double best_aic = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best{0, 0};
    bool any = false;
    for (std::size_t p = 0; p <= p_max; ++p) {
        for (std::size_t q = 0; q <= q_max; ++q) {
            double aic;
            try {
                aic = arima_aic(arima_fit(series, p, q));
            } catch (const std::exception&) {
                continue;
            }
            const bool better =
                aic < best_aic - 1e-12 ||
                (std::abs(aic - best_aic) <= 1e-12 &&
                 (p + q < best.first + best.second ||
                  (p + q == best.first + best.second && p < best.first)));
            if (!any || better) {
                best_aic = aic;
                best = {p, q};
                any = true;
            }
        }
    }
    if (!any) throw std::runtime_error("arima_select: every candidate fit failed");
    return best;
}

} // namespace ppfd
