#pragma once

// Approximation of the Caputo derivative D^alpha y(t_n), n = 1..N, by the
// infinite state representation
//   D y(t) = sin(a pi/2) w^(a-1) y'(t) - int K(l) dz/dt dl
//          + cos(a pi/2) w^a y(t)    - w^2 int K(l) Z dl
// with the lambda integrals replaced by a compound rule and z, Z stepped in time.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "riss/quadrature.hpp"
#include "riss/repr_core.hpp"
#include "riss/steppers.hpp"

namespace riss {

/// Samples y(t_0..t_N) on t_n = n h, optionally with y'(t_n).
struct SampledFunction {
    double h = 0.0;
    std::vector<double> y;
    std::optional<std::vector<double>> yp;

    [[nodiscard]] double y0() const { return y.front(); }
    [[nodiscard]] std::size_t steps() const { return y.empty() ? 0 : y.size() - 1; }

    static SampledFunction sample(const std::function<double(double)>& fn, double h, std::size_t N,
                                  const std::function<double(double)>& dfn = {});
};

struct DerivativeSeries {
    std::vector<double> values;  // values[n-1] approximates D^alpha y(t_n)
    SchemeConfig config;

    [[nodiscard]] double time(std::size_t index) const {
        return static_cast<double>(index + 1) * config.h;
    }
};

/// Quadrature data and constants shared by every time step of one scheme.
struct Discretization {
    CompoundRule rule;
    std::vector<double> W;  // w_i K(lambda_i), de-weighted where absorbed
    double deriv_coef = 0.0;  // sin(a pi/2) w^(a-1)
    double value_coef = 0.0;  // cos(a pi/2) w^a
    double omega_sq = 0.0;
    StateAdvancer advancer;

    explicit Discretization(const SchemeConfig& config);
};

/// Builds the drive window of step n from samples of the shifted function.
/// An empty `yp` leaves the derivative entries unset.
[[nodiscard]] DriveWindow make_window(std::span<const double> y_shifted, std::span<const double> yp,
                                      std::size_t n);

[[nodiscard]] DerivativeSeries eval_derivative_series(const SchemeConfig& config,
                                                      const SampledFunction& y);

[[nodiscard]] DerivativeSeries eval_derivative_callable(
    const SchemeConfig& config, const std::function<double(double)>& y_fn,
    const std::function<double(double)>& yprime_fn = {});

}  // namespace riss
