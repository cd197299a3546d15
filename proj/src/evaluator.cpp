#include "riss/evaluator.hpp"

#include <cmath>
#include <numbers>

#include "riss/errors.hpp"

namespace riss {

SampledFunction SampledFunction::sample(const std::function<double(double)>& fn, double h,
                                        std::size_t N, const std::function<double(double)>& dfn) {
    SampledFunction s;
    s.h = h;
    s.y.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) s.y[n] = fn(static_cast<double>(n) * h);
    if (dfn) {
        s.yp.emplace(N + 1);
        for (std::size_t n = 0; n <= N; ++n) (*s.yp)[n] = dfn(static_cast<double>(n) * h);
    }
    return s;
}

Discretization::Discretization(const SchemeConfig& config)
    : rule(assemble_compound(config)),
      W(kernel_weights(rule, config.order)),
      advancer(config.stepper_kind, config.h, rule.nodes) {
    const double a = config.order.value();
    const double w = omega(config.order);
    deriv_coef = std::sin(a * std::numbers::pi / 2.0) * std::pow(w, a - 1.0);
    value_coef = std::cos(a * std::numbers::pi / 2.0) * std::pow(w, a);
    omega_sq = w * w;
}

DriveWindow make_window(std::span<const double> ys, std::span<const double> yp, std::size_t n) {
    const std::size_t N = ys.size() - 1;
    DriveWindow d;
    d.n = n;
    d.N = N;
    d.y_n = ys[n];
    d.y_prev = ys[n - 1];
    if (n + 1 <= N) d.y_next = ys[n + 1];
    if (n >= 2) d.y_prev2 = ys[n - 2];
    if (!yp.empty()) {
        d.yp_n = yp[n];
        d.yp_prev = yp[n - 1];
    }
    return d;
}

DerivativeSeries eval_derivative_series(const SchemeConfig& config, const SampledFunction& y) {
    config.validate();
    const std::size_t N = config.steps();
    if (y.y.size() != N + 1) {
        throw ConfigError("sample count must be T/h + 1");
    }
    if (std::abs(y.h - config.h) > 1e-12 * config.h) {
        throw ConfigError("sample spacing differs from the configured step size");
    }
    const bool exact = config.deriv_mode == DerivMode::ExactDerivative;
    if (exact) {
        if (!y.yp || y.yp->size() != N + 1) {
            throw ConfigError("exact-derivative mode needs y' samples");
        }
        if (config.stepper_kind == StepperKind::Trapezoidal && !std::isfinite(y.yp->front())) {
            throw NumericalError(
                "trapezoidal exact-derivative mode needs y'(0), which does not exist for this "
                "function; use --deriv mod1 or mod2");
        }
    }

    // shift by y(0): the representation is exact for the Caputo derivative of y - y(0)
    const double y0 = y.y0();
    std::vector<double> ys(N + 1);
    for (std::size_t n = 0; n <= N; ++n) ys[n] = y.y[n] - y0;

    const Discretization disc(config);
    const std::size_t M = disc.rule.size();
    const double* lambda = disc.rule.nodes.data();
    const double* W = disc.W.data();

    InfiniteState state(M);
    DerivativeSeries out;
    out.config = config;
    out.values.resize(N);

    const std::span<const double> yp = exact ? std::span<const double>(*y.yp) : std::span<const double>{};
    for (std::size_t n = 1; n <= N; ++n) {
        const DriveWindow d = make_window(ys, yp, n);
        const double z_inc = z_increment(config.stepper_kind, config.deriv_mode, d, config.h);
        const double Z_inc = disc.advancer.Z_increment(d.y_n, d.y_prev);
        disc.advancer.advance(state, z_inc, Z_inc);

        const double s = derivative_surrogate(config.deriv_mode, config.stencil, d, config.h);
        double sum_zdot = 0.0;
        double sum_Z = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            sum_zdot += W[i] * zdot(lambda[i], state.z[i], s);
            sum_Z += W[i] * state.Zc[i];
        }
        out.values[n - 1] = disc.deriv_coef * s - sum_zdot + disc.value_coef * d.y_n -
                            disc.omega_sq * sum_Z;
    }
    return out;
}

DerivativeSeries eval_derivative_callable(const SchemeConfig& config,
                                          const std::function<double(double)>& y_fn,
                                          const std::function<double(double)>& yprime_fn) {
    const std::size_t N = config.steps();
    return eval_derivative_series(config, SampledFunction::sample(y_fn, config.h, N, yprime_fn));
}

}  // namespace riss
