#include "riss/steppers.hpp"

#include <cmath>
#include <string>

#include "riss/errors.hpp"

namespace riss {
namespace {

double need(const std::optional<double>& v, const char* what) {
    if (!v) throw ConfigError(std::string("missing drive sample: ") + what);
    return *v;
}

double need_finite(const std::optional<double>& v, const char* what) {
    const double x = need(v, what);
    if (!std::isfinite(x)) {
        throw NumericalError(std::string("derivative sample ") + what +
                             " is not finite; the derivative does not exist there "
                             "(use mod1 or mod2)");
    }
    return x;
}

void check_step(double h, double lambda) {
    if (!(h > 0.0)) throw ConfigError("step size must be positive");
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
}

}  // namespace

double z_increment(StepperKind kind, DerivMode mode, const DriveWindow& d, double h) {
    if (kind == StepperKind::BackwardEuler) {
        switch (mode) {
            case DerivMode::ExactDerivative: return h * need_finite(d.yp_n, "y'(t_n)");
            case DerivMode::Mod1: return d.y_n - d.y_prev;
            case DerivMode::Mod2:
                if (d.n < d.N) return 0.5 * (need(d.y_next, "y(t_{n+1})") - d.y_prev);
                // no sample beyond t_N: one-sided second-order difference
                return 0.5 * (3.0 * d.y_n - 4.0 * d.y_prev + need(d.y_prev2, "y(t_{n-2})"));
        }
    } else {
        switch (mode) {
            case DerivMode::ExactDerivative:
                return 0.5 * h * (need_finite(d.yp_n, "y'(t_n)") + need_finite(d.yp_prev, "y'(t_{n-1})"));
            case DerivMode::Mod1:
                if (d.n == 1 || d.n == d.N) return d.y_n - d.y_prev;
                return 0.25 * (need(d.y_next, "y(t_{n+1})") + d.y_n - d.y_prev -
                               need(d.y_prev2, "y(t_{n-2})"));
            case DerivMode::Mod2: return d.y_n - d.y_prev;
        }
    }
    throw ConfigError("unknown stepper/mode combination");
}

double step_z_backward_euler(double lambda, double z_prev, double h, const DriveWindow& drive,
                             DerivMode mode) {
    check_step(h, lambda);
    const double inc = z_increment(StepperKind::BackwardEuler, mode, drive, h);
    return (z_prev + inc) / (1.0 + h * lambda);
}

double step_z_trapezoidal(double lambda, double z_prev, double h, const DriveWindow& drive,
                          DerivMode mode) {
    check_step(h, lambda);
    const double inc = z_increment(StepperKind::Trapezoidal, mode, drive, h);
    const double half = 0.5 * h * lambda;
    return (z_prev * (1.0 - half) + inc) / (1.0 + half);
}

double step_Z(StepperKind kind, double lambda, double Z_prev, double h, double y_n, double y_prev) {
    check_step(h, lambda);
    if (kind == StepperKind::BackwardEuler) {
        return (Z_prev + h * y_n) / (1.0 + h * lambda);
    }
    const double half = 0.5 * h * lambda;
    return (Z_prev * (1.0 - half) + 0.5 * h * (y_n + y_prev)) / (1.0 + half);
}

double derivative_surrogate(DerivMode mode, Stencil stencil, const DriveWindow& d, double h) {
    if (mode == DerivMode::ExactDerivative) return need_finite(d.yp_n, "y'(t_n)");
    if (stencil == Stencil::Centered) {
        if (d.n < d.N) return (need(d.y_next, "y(t_{n+1})") - d.y_prev) / (2.0 * h);
        return (3.0 * d.y_n - 4.0 * d.y_prev + need(d.y_prev2, "y(t_{n-2})")) / (2.0 * h);
    }
    if (d.n <= 1) return (d.y_n - d.y_prev) / h;
    return (3.0 * d.y_n - 4.0 * d.y_prev + need(d.y_prev2, "y(t_{n-2})")) / (2.0 * h);
}

double centered_difference(std::span<const double> y, std::size_t n, double h) {
    const std::size_t N = y.size() - 1;
    if (y.size() < 3 || n > N) throw ConfigError("centered difference needs >= 3 samples");
    if (n == 0) return (-y[2] + 4.0 * y[1] - 3.0 * y[0]) / (2.0 * h);
    if (n == N) return (3.0 * y[N] - 4.0 * y[N - 1] + y[N - 2]) / (2.0 * h);
    return (y[n + 1] - y[n - 1]) / (2.0 * h);
}

double backward_difference(std::span<const double> y, std::size_t n, double h) {
    if (n == 0 || n >= y.size()) throw ConfigError("backward difference needs 1 <= n <= N");
    if (n == 1) return (y[1] - y[0]) / h;
    return (3.0 * y[n] - 4.0 * y[n - 1] + y[n - 2]) / (2.0 * h);
}

double amplification(StepperKind kind, double h_lambda) noexcept {
    if (kind == StepperKind::BackwardEuler) return 1.0 / (1.0 + h_lambda);
    return (1.0 - 0.5 * h_lambda) / (1.0 + 0.5 * h_lambda);
}

StateAdvancer::StateAdvancer(StepperKind kind, double h, std::span<const double> nodes)
    : kind_(kind), h_(h), carry_(nodes.size()), inv_d_(nodes.size()) {
    if (!(h > 0.0)) throw ConfigError("step size must be positive");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double hl = h * nodes[i];
        if (kind == StepperKind::BackwardEuler) {
            carry_[i] = 1.0;
            inv_d_[i] = 1.0 / (1.0 + hl);
        } else {
            carry_[i] = 1.0 - 0.5 * hl;
            inv_d_[i] = 1.0 / (1.0 + 0.5 * hl);
        }
    }
}

void StateAdvancer::advance(InfiniteState& s, double z_inc, double Z_inc) const noexcept {
    const std::size_t m = carry_.size();
    double* z = s.z.data();
    double* Z = s.Zc.data();
    if (kind_ == StepperKind::BackwardEuler) {
        for (std::size_t i = 0; i < m; ++i) {
            z[i] = (z[i] + z_inc) * inv_d_[i];
            Z[i] = (Z[i] + Z_inc) * inv_d_[i];
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            z[i] = (carry_[i] * z[i] + z_inc) * inv_d_[i];
            Z[i] = (carry_[i] * Z[i] + Z_inc) * inv_d_[i];
        }
    }
    ++s.n;
}

double StateAdvancer::Z_increment(double y_n, double y_prev) const noexcept {
    if (kind_ == StepperKind::BackwardEuler) return h_ * y_n;
    return 0.5 * h_ * (y_n + y_prev);
}

}  // namespace riss
