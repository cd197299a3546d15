#pragma once

// Experiment harness: error reports against closed-form derivatives,
// step-size sweeps with order estimation, and wall-clock timing.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "riss/oracles.hpp"
#include "riss/repr_core.hpp"

namespace riss {

/// y(t) = offset + scale * t^p.
struct TestFunction {
    PowerFunction power;
    double offset = 0.0;

    [[nodiscard]] double value(double t) const { return offset + power.value(t); }
    [[nodiscard]] double derivative(double t) const { return power.derivative(t); }
    [[nodiscard]] double caputo(FractionalOrder order, double t) const {
        return caputo_power(order, power, t);
    }
};

struct ErrorReport {
    double max_abs_error = 0.0;    // over t_1..t_N
    double final_abs_error = 0.0;  // at t_N = T
    double t_at_max = 0.0;
    std::size_t steps = 0;
};

/// Which error a sweep tracks: the value at t = T or the maximum over (0, T].
enum class ErrorMetric { Final, Max };

/// Evaluates the scheme on the test function and compares pointwise with the
/// closed form. Writes `t,approx,exact,abs_error` rows when csv is given.
ErrorReport run_eval_experiment(const SchemeConfig& config, const TestFunction& fn,
                                std::ostream* csv = nullptr);

struct ConvergenceRow {
    double h = 0.0;
    double max_abs_error = 0.0;
    double final_abs_error = 0.0;
    bool saturated = false;

    [[nodiscard]] double error(ErrorMetric m) const {
        return m == ErrorMetric::Final ? final_abs_error : max_abs_error;
    }
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;  // h strictly decreasing
    ErrorMetric metric = ErrorMetric::Final;
    double slope = 0.0;
    std::optional<double> saturation_level;
};

/// Least-squares slope of log(error) against log(h) over rows that are not
/// saturated. A row is saturated when its error exceeds `ratio` times the
/// error of the next-coarser row. Sets the flags, the slope and the
/// saturation level (geometric mean of saturated errors) on the table.
/// Throws NumericalError when fewer than two usable rows remain.
double estimate_order(ConvergenceTable& table, double ratio = 0.8);

ConvergenceTable run_sweep(const SchemeConfig& base, std::span<const double> h_list,
                           const TestFunction& fn, ErrorMetric metric = ErrorMetric::Final,
                           double ratio = 0.8, std::ostream* csv = nullptr);

void write_sweep_csv(std::ostream& os, const ConvergenceTable& table);

/// Step sizes T/N, N an integer, approximately log-spaced from h_max down to
/// h_min with `per_decade` points per decade.
std::vector<double> log_spaced_steps(double T, double h_max, double h_min, std::size_t per_decade);

/// Copy of `base` with step size h (validated).
SchemeConfig with_step(const SchemeConfig& base, double h);

struct TimingRow {
    std::size_t J = 0;
    std::size_t K = 0;
    double h = 0.0;
    StepperKind stepper = StepperKind::BackwardEuler;
    QuadKind quad = QuadKind::CompoundGauss;
    double seconds = 0.0;
};

struct TimingReport {
    std::vector<TimingRow> rows;
};

/// Median wall time of `repetitions` full evaluations per config, after one
/// warm-up run. Runs sequentially. Writes `J,K,h,stepper,quad,seconds`.
TimingReport run_timing(std::span<const SchemeConfig> configs, const TestFunction& fn,
                        int repetitions = 3, std::ostream* csv = nullptr);

}  // namespace riss
