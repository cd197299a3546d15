#include "riss/repr_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "riss/errors.hpp"

namespace riss {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("fractional order must lie in (0, 1), got " + std::to_string(alpha));
    }
}

double omega(FractionalOrder order) noexcept {
    const double a = order.value();
    return std::sqrt((2.0 - a) / a);
}

double deweighted_kernel(FractionalOrder order, double lambda) {
    const double a = order.value();
    const double w = omega(order);
    return std::sin(a * std::numbers::pi) / std::numbers::pi / (lambda * lambda + w * w);
}

double kernel(FractionalOrder order, double lambda) {
    if (!(lambda > 0.0)) {
        throw ConfigError("kernel requires lambda > 0");
    }
    // lambda^alpha via exp/log keeps subnormal arguments out of pow's edge cases.
    return std::exp(order.value() * std::log(lambda)) * deweighted_kernel(order, lambda);
}

EtaGrid eta_grid(std::size_t K, double min_exp, double max_exp) {
    if (K < 2) {
        throw ConfigError("eta grid needs K >= 2");
    }
    if (!(min_exp < max_exp)) {
        throw ConfigError("eta grid needs min_exp < max_exp");
    }
    EtaGrid g;
    g.K = K;
    g.min_exp = min_exp;
    g.max_exp = max_exp;
    g.points.resize(K + 1);
    g.points[0] = 0.0;
    const double span = max_exp - min_exp;
    for (std::size_t k = 1; k <= K; ++k) {
        const double e = min_exp + span * static_cast<double>(k - 1) / static_cast<double>(K - 1);
        g.points[k] = std::pow(10.0, e);
    }
    return g;
}

std::size_t SchemeConfig::steps() const {
    if (!(h > 0.0) || !(T > 0.0) || !std::isfinite(h) || !std::isfinite(T)) {
        throw ConfigError("step size and horizon must be positive");
    }
    const double ratio = T / h;
    const double n = std::round(ratio);
    if (std::abs(ratio - n) > 1e-9 * ratio) {
        throw ConfigError("T/h must be an integer (T=" + std::to_string(T) +
                          ", h=" + std::to_string(h) + ")");
    }
    return static_cast<std::size_t>(n);
}

void SchemeConfig::validate() const {
    const std::size_t n = steps();
    if (n < 2) {
        throw ConfigError("at least two time steps are required");
    }
    if (deriv_mode == DerivMode::Mod1 && n < 4) {
        throw ConfigError("mod1 needs at least four time steps");
    }
    if (J < 1) {
        throw ConfigError("J must be positive");
    }
    if (quad_kind == QuadKind::CompoundCC && J < 2) {
        throw ConfigError("Clenshaw-Curtis rules need J >= 2");
    }
    if (eta.K < 2 || eta.points.size() != eta.K + 1) {
        throw ConfigError("eta grid is not initialised");
    }
}

SchemeConfig make_config(double alpha, std::size_t J, std::size_t K, QuadKind quad,
                         StepperKind stepper, DerivMode mode, double h, double T,
                         double min_exp, double max_exp) {
    SchemeConfig c;
    c.order = FractionalOrder(alpha);
    c.J = J;
    c.eta = eta_grid(K, min_exp, max_exp);
    c.quad_kind = quad;
    c.stepper_kind = stepper;
    c.deriv_mode = mode;
    c.h = h;
    c.T = T;
    c.validate();
    return c;
}

const char* to_string(QuadKind k) noexcept {
    return k == QuadKind::CompoundGauss ? "gauss" : "cc";
}

const char* to_string(StepperKind k) noexcept {
    return k == StepperKind::BackwardEuler ? "be" : "trap";
}

const char* to_string(DerivMode m) noexcept {
    switch (m) {
        case DerivMode::ExactDerivative: return "exact";
        case DerivMode::Mod1: return "mod1";
        case DerivMode::Mod2: return "mod2";
    }
    return "?";
}

const char* to_string(Stencil s) noexcept {
    return s == Stencil::Centered ? "centered" : "causal";
}

}  // namespace riss
