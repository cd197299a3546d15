#include "riss/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "riss/errors.hpp"
#include "riss/evaluator.hpp"
#include "riss/format.hpp"

namespace riss {

ErrorReport run_eval_experiment(const SchemeConfig& config, const TestFunction& fn,
                                std::ostream* csv) {
    const bool exact = config.deriv_mode == DerivMode::ExactDerivative;
    const DerivativeSeries series = eval_derivative_callable(
        config, [&](double t) { return fn.value(t); },
        exact ? std::function<double(double)>([&](double t) { return fn.derivative(t); })
              : std::function<double(double)>{});

    ErrorReport report;
    report.steps = series.values.size();
    if (csv) *csv << "t,approx,exact,abs_error\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        const double t = series.time(i);
        const double ref = fn.caputo(config.order, t);
        const double err = std::abs(series.values[i] - ref);
        if (err > report.max_abs_error) {
            report.max_abs_error = err;
            report.t_at_max = t;
        }
        if (csv) {
            *csv << format_real(t) << ',' << format_real(series.values[i]) << ','
                 << format_real(ref) << ',' << format_real(err) << '\n';
        }
    }
    if (!series.values.empty()) {
        report.final_abs_error =
            std::abs(series.values.back() - fn.caputo(config.order, series.time(report.steps - 1)));
    }
    return report;
}

double estimate_order(ConvergenceTable& table, double ratio) {
    auto& rows = table.rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].error(table.metric) < 0.0) throw ConfigError("errors must be non-negative");
        if (i > 0 && !(rows[i].h < rows[i - 1].h)) {
            throw ConfigError("step sizes must be strictly decreasing");
        }
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    double log_sat = 0.0;
    std::size_t n_sat = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double e = rows[i].error(table.metric);
        rows[i].saturated = i > 0 && e > ratio * rows[i - 1].error(table.metric);
        if (rows[i].saturated) {
            if (e > 0.0) {
                log_sat += std::log(e);
                ++n_sat;
            }
            continue;
        }
        if (!(e > 0.0)) continue;
        const double x = std::log(rows[i].h);
        const double y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    table.saturation_level.reset();
    if (n_sat > 0) table.saturation_level = std::exp(log_sat / static_cast<double>(n_sat));
    if (used < 2) {
        throw NumericalError("fewer than two unsaturated rows; no convergence order available");
    }
    const double n = static_cast<double>(used);
    table.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return table.slope;
}

void write_sweep_csv(std::ostream& os, const ConvergenceTable& table) {
    os << "h,max_abs_error,final_abs_error,saturated\n";
    for (const auto& r : table.rows) {
        os << format_real(r.h) << ',' << format_real(r.max_abs_error) << ','
           << format_real(r.final_abs_error) << ',' << (r.saturated ? 1 : 0) << '\n';
    }
}

SchemeConfig with_step(const SchemeConfig& base, double h) {
    SchemeConfig c = base;
    c.h = h;
    c.validate();
    return c;
}

ConvergenceTable run_sweep(const SchemeConfig& base, std::span<const double> h_list,
                           const TestFunction& fn, ErrorMetric metric, double ratio,
                           std::ostream* csv) {
    if (h_list.size() < 3) throw ConfigError("a sweep needs at least three step sizes");
    ConvergenceTable table;
    table.metric = metric;
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        if (i > 0 && !(h_list[i] < h_list[i - 1])) {
            throw ConfigError("sweep step sizes must be strictly decreasing");
        }
        const ErrorReport r = run_eval_experiment(with_step(base, h_list[i]), fn);
        table.rows.push_back({h_list[i], r.max_abs_error, r.final_abs_error, false});
    }
    estimate_order(table, ratio);
    if (csv) write_sweep_csv(*csv, table);
    return table;
}

std::vector<double> log_spaced_steps(double T, double h_max, double h_min, std::size_t per_decade) {
    if (!(h_min > 0.0 && h_min < h_max) || per_decade == 0) {
        throw ConfigError("need 0 < h_min < h_max and per_decade > 0");
    }
    const double decades = std::log10(h_max / h_min);
    const auto count = static_cast<std::size_t>(std::llround(decades * static_cast<double>(per_decade)));
    std::vector<double> out;
    double last_n = 0.0;
    for (std::size_t i = 0; i <= count; ++i) {
        const double h = h_max * std::pow(10.0, -static_cast<double>(i) / static_cast<double>(per_decade));
        const double n = std::max(1.0, std::round(T / h));
        if (n > last_n) {
            out.push_back(T / n);
            last_n = n;
        }
    }
    return out;
}

TimingReport run_timing(std::span<const SchemeConfig> configs, const TestFunction& fn,
                        int repetitions, std::ostream* csv) {
    using clock = std::chrono::steady_clock;
    repetitions = std::max(repetitions, 3);
    TimingReport report;
    auto y = [&](double t) { return fn.value(t); };
    auto yp = [&](double t) { return fn.derivative(t); };
    for (const SchemeConfig& c : configs) {
        const bool exact = c.deriv_mode == DerivMode::ExactDerivative;
        auto once = [&] {
            const auto start = clock::now();
            const DerivativeSeries s = eval_derivative_callable(
                c, y, exact ? std::function<double(double)>(yp) : std::function<double(double)>{});
            const auto stop = clock::now();
            // keep the result observable
            if (s.values.empty()) throw NumericalError("empty series");
            return std::chrono::duration<double>(stop - start).count();
        };
        (void)once();
        std::vector<double> times;
        for (int r = 0; r < repetitions; ++r) times.push_back(once());
        std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
        const double median = times[times.size() / 2];
        report.rows.push_back({c.J, c.eta.K, c.h, c.stepper_kind, c.quad_kind,
                               std::max(median, std::numeric_limits<double>::min())});
    }
    if (csv) {
        *csv << "J,K,h,stepper,quad,seconds\n";
        for (const auto& r : report.rows) {
            *csv << r.J << ',' << r.K << ',' << format_real(r.h) << ',' << to_string(r.stepper)
                 << ',' << to_string(r.quad) << ',' << format_real(r.seconds) << '\n';
        }
    }
    return report;
}

}  // namespace riss
