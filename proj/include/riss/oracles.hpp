#pragma once

// Reference values for checking the fast scheme: closed-form Caputo
// derivatives of power functions and a direct O(N^2) product-integration
// discretization.

#include <cstddef>
#include <vector>

#include "riss/evaluator.hpp"
#include "riss/repr_core.hpp"

namespace riss {

/// y(t) = scale * t^p with p > 0.
struct PowerFunction {
    double p = 1.0;
    double scale = 1.0;

    PowerFunction() = default;
    PowerFunction(double exponent, double coefficient = 1.0);

    [[nodiscard]] double value(double t) const;
    /// y'(t); +inf at t = 0 when p < 1.
    [[nodiscard]] double derivative(double t) const;
};

/// scale * Gamma(p+1) / Gamma(p+1-alpha) * t^(p-alpha)
[[nodiscard]] double caputo_power(FractionalOrder order, const PowerFunction& pf, double t);

/// L1 scheme at t_n: h^-alpha / Gamma(2-alpha) * sum_j b_{n-j} (y_{j+1} - y_j),
/// b_m = m^(1-alpha) - (m-1)^(1-alpha). O(n) per point.
[[nodiscard]] double naive_caputo(FractionalOrder order, const SampledFunction& y, std::size_t n);

/// The L1 scheme at every t_1..t_N (O(N^2) total).
[[nodiscard]] std::vector<double> naive_caputo_series(FractionalOrder order, const SampledFunction& y);

}  // namespace riss
