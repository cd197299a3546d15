#include "riss/fde_solver.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "riss/errors.hpp"
#include "riss/evaluator.hpp"

namespace riss {
namespace {

double central_slope(const std::function<double(double, double)>& f, double t, double y) {
    const double d = 1e-7 * std::max(1.0, std::abs(y));
    return (f(t, y + d) - f(t, y - d)) / (2.0 * d);
}

}  // namespace

void check_solver_config(const SchemeConfig& config) {
    config.validate();
    const bool be_mod1 = config.stepper_kind == StepperKind::BackwardEuler &&
                         config.deriv_mode == DerivMode::Mod1;
    const bool trap_mod2 = config.stepper_kind == StepperKind::Trapezoidal &&
                           config.deriv_mode == DerivMode::Mod2;
    if (!(be_mod1 || trap_mod2)) {
        throw ConfigError("the solver supports be+mod1 and trap+mod2 only; other combinations "
                          "need y at future times or y' of the unknown");
    }
    if (config.stencil != Stencil::Causal) {
        throw ConfigError("the solver needs the causal difference stencil");
    }
}

Trajectory solve_fde(const SchemeConfig& config, const Rhs& rhs, double y0,
                     const SolverOptions& options) {
    check_solver_config(config);
    if (!rhs.f) throw ConfigError("right-hand side is empty");
    const std::size_t N = config.steps();
    const double h = config.h;

    const Discretization disc(config);
    const std::size_t M = disc.rule.size();
    const double* lambda = disc.rule.nodes.data();
    const double* W = disc.W.data();
    const auto carry = disc.advancer.carry();
    const auto inv_d = disc.advancer.inv_denominator();
    const bool trap = config.stepper_kind == StepperKind::Trapezoidal;
    // Z drive: h (beta y_n + gamma y_{n-1})
    const double beta = trap ? 0.5 : 1.0;
    const double gamma = trap ? 0.5 : 0.0;

    double sum_W = 0.0;
    double sum_W_lambda_invd = 0.0;
    double sum_W_invd = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        sum_W += W[i];
        sum_W_lambda_invd += W[i] * lambda[i] * inv_d[i];
        sum_W_invd += W[i] * inv_d[i];
    }
    const double explicit_coef = disc.deriv_coef - sum_W;

    Trajectory out;
    out.config = config;
    out.y.assign(N + 1, y0);
    out.residuals.assign(N, 0.0);
    out.iterations.assign(N, 0);

    std::vector<double> u(N + 1, 0.0);  // y - y0
    InfiniteState state(M);
    std::vector<double> z0(M);
    std::vector<double> Z0(M);

    for (std::size_t n = 1; n <= N; ++n) {
        const double t = static_cast<double>(n) * h;
        // states with the unknown set to zero: z = z0 + u_n/d, Z = Z0 + h beta u_n/d
        double sum_lz0 = 0.0;
        double sum_Z0 = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            z0[i] = (carry[i] * state.z[i] - u[n - 1]) * inv_d[i];
            Z0[i] = (carry[i] * state.Zc[i] + h * gamma * u[n - 1]) * inv_d[i];
            sum_lz0 += W[i] * lambda[i] * z0[i];
            sum_Z0 += W[i] * Z0[i];
        }
        // derivative surrogate s = sigma u_n + s0
        const double sigma = n == 1 ? 1.0 / h : 1.5 / h;
        const double s0 = n == 1 ? -u[0] / h : (-4.0 * u[n - 1] + u[n - 2]) / (2.0 * h);

        const double A = explicit_coef * sigma + sum_W_lambda_invd + disc.value_coef -
                         disc.omega_sq * h * beta * sum_W_invd;
        const double B = explicit_coef * s0 + sum_lz0 - disc.omega_sq * sum_Z0;

        auto residual = [&](double un) { return A * un + B - rhs.f(t, y0 + un); };
        auto fixed_point = [&](double un) { return (rhs.f(t, y0 + un) - B) / A; };

        double un = u[n - 1];
        double r = residual(un);
        int iter = 0;
        bool stalled = false;
        while (std::abs(r) > options.abs_tol && iter < options.max_iter) {
            const double dfdy = rhs.dfdy ? rhs.dfdy(t, y0 + un) : central_slope(rhs.f, t, y0 + un);
            const double slope = A - dfdy;
            double next;
            double r_next;
            if (slope != 0.0 && std::isfinite(slope)) {
                const double step = r / slope;
                next = un - step;
                r_next = residual(next);
                double damping = 1.0;
                for (int k = 0; k < 30 && !(std::abs(r_next) <= std::abs(r)); ++k) {
                    damping *= 0.5;
                    next = un - damping * step;
                    r_next = residual(next);
                }
            } else {
                next = fixed_point(un);
                r_next = residual(next);
            }
            if (!(std::abs(r_next) <= std::abs(r))) {
                const double fp = fixed_point(un);
                const double r_fp = residual(fp);
                if (std::abs(r_fp) < std::abs(r_next)) {
                    next = fp;
                    r_next = r_fp;
                }
            }
            ++iter;
            stalled = std::abs(next - un) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                 std::max(1.0, std::abs(un));
            un = next;
            r = r_next;
            if (stalled) break;
        }
        const bool converged =
            std::abs(r) <= options.abs_tol ||
            (stalled && std::abs(r) <= 1e-9 * std::max(1.0, std::abs(rhs.f(t, y0 + un))));
        if (!converged || !std::isfinite(un)) {
            throw NumericalError("root-find did not converge at step " + std::to_string(n) +
                                 " (residual " + std::to_string(std::abs(r)) + ")");
        }

        u[n] = un;
        for (std::size_t i = 0; i < M; ++i) {
            state.z[i] = z0[i] + un * inv_d[i];
            state.Zc[i] = Z0[i] + h * beta * un * inv_d[i];
        }
        ++state.n;
        out.y[n] = y0 + un;
        out.residuals[n - 1] = std::abs(r);
        out.iterations[n - 1] = iter;
    }
    return out;
}

Rhs zener_rhs(const ZenerParams& p, const Forcing& forcing, SolveFor solve_for,
              const SchemeConfig& config) {
    if (!forcing.value) throw ConfigError("forcing function is empty");
    if (std::abs(p.alpha.value() - config.order.value()) > 0.0) {
        throw ConfigError("Zener order differs from the scheme order");
    }
    const double divisor = solve_for == SolveFor::Strain ? p.b1 : p.a1;
    if (divisor == 0.0) {
        throw ConfigError(solve_for == SolveFor::Strain
                              ? "solving for strain needs b1 != 0"
                              : "solving for stress needs a1 != 0");
    }
    const auto series = std::make_shared<const DerivativeSeries>(
        eval_derivative_callable(config, forcing.value, forcing.derivative));
    const double h = config.h;
    const std::size_t N = config.steps();
    auto forcing_derivative = [series, h, N](double t) {
        const double x = t / h;
        const double n = std::round(x);
        if (std::abs(x - n) > 1e-6 || n < 0.0 || n > static_cast<double>(N)) {
            throw ConfigError("Zener right-hand side evaluated off the time grid");
        }
        const auto idx = static_cast<std::size_t>(n);
        return idx == 0 ? 0.0 : series->values[idx - 1];
    };
    const auto value = forcing.value;

    Rhs rhs;
    if (solve_for == SolveFor::Strain) {
        rhs.f = [=](double t, double eps) {
            return (p.a0 * value(t) + p.a1 * forcing_derivative(t) - p.m * eps) / p.b1;
        };
        rhs.dfdy = [=](double, double) { return -p.m / p.b1; };
    } else {
        rhs.f = [=](double t, double sig) {
            return (p.m * value(t) + p.b1 * forcing_derivative(t) - p.a0 * sig) / p.a1;
        };
        rhs.dfdy = [=](double, double) { return -p.a0 / p.a1; };
    }
    return rhs;
}

}  // namespace riss
