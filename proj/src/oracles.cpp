#include "riss/oracles.hpp"

#include <cmath>
#include <limits>

#include "riss/errors.hpp"

namespace riss {

PowerFunction::PowerFunction(double exponent, double coefficient) : p(exponent), scale(coefficient) {
    if (!(p > 0.0)) throw ConfigError("power function exponent must be positive");
}

double PowerFunction::value(double t) const { return scale * std::pow(t, p); }

double PowerFunction::derivative(double t) const {
    if (t == 0.0) {
        if (p < 1.0) return scale == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return p == 1.0 ? scale : 0.0;
    }
    return scale * p * std::pow(t, p - 1.0);
}

double caputo_power(FractionalOrder order, const PowerFunction& pf, double t) {
    if (!(pf.p > 0.0)) throw ConfigError("caputo_power needs p > 0");
    if (t < 0.0) throw ConfigError("caputo_power needs t >= 0");
    const double a = order.value();
    const double e = pf.p - a;
    const double c = pf.scale * std::tgamma(pf.p + 1.0) / std::tgamma(pf.p + 1.0 - a);
    if (t == 0.0) {
        if (e > 0.0) return 0.0;
        if (e == 0.0) return c;
        return c == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c);
    }
    return c * std::pow(t, e);
}

namespace {

double l1_coefficient(double one_minus_alpha, std::size_t m) {
    const double dm = static_cast<double>(m);
    return std::pow(dm, one_minus_alpha) - std::pow(dm - 1.0, one_minus_alpha);
}

}  // namespace

double naive_caputo(FractionalOrder order, const SampledFunction& y, std::size_t n) {
    if (n < 1 || n >= y.y.size()) throw ConfigError("naive_caputo needs 1 <= n <= N");
    const double a = order.value();
    const double scale = std::pow(y.h, -a) / std::tgamma(2.0 - a);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sum += l1_coefficient(1.0 - a, n - j) * (y.y[j + 1] - y.y[j]);
    }
    return scale * sum;
}

std::vector<double> naive_caputo_series(FractionalOrder order, const SampledFunction& y) {
    const std::size_t N = y.steps();
    const double a = order.value();
    std::vector<double> b(N + 1, 0.0);
    for (std::size_t m = 1; m <= N; ++m) b[m] = l1_coefficient(1.0 - a, m);
    std::vector<double> dy(N);
    for (std::size_t j = 0; j < N; ++j) dy[j] = y.y[j + 1] - y.y[j];
    const double scale = std::pow(y.h, -a) / std::tgamma(2.0 - a);
    std::vector<double> out(N);
    for (std::size_t n = 1; n <= N; ++n) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += b[n - j] * dy[j];
        out[n - 1] = scale * sum;
    }
    return out;
}

}  // namespace riss
