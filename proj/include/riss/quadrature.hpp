#pragma once

// Per-subinterval quadrature rules and their assembly into a compound rule
// over (0, eta_K].

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "riss/repr_core.hpp"

namespace riss {

struct SubintervalRule {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> nodes;    // ascending, inside [a, b]
    std::vector<double> weights;
    bool weighted = false;        // weight function lambda^alpha absorbed into weights
};

struct CompoundRule {
    std::vector<double> nodes;           // globally ascending
    std::vector<double> weights;
    std::vector<char> weighted;          // per node: weight carries lambda^alpha
    std::vector<std::size_t> subinterval;  // per node: 1-based subinterval index k
    bool absorbs_weight = false;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// J-point Gauss-Legendre rule on [a, b].
[[nodiscard]] SubintervalRule gauss_legendre(std::size_t J, double a, double b);

/// J-point Clenshaw-Curtis rule (Chebyshev-Lobatto abscissae) on [a, b].
[[nodiscard]] SubintervalRule clenshaw_curtis(std::size_t J, double a, double b);

/// Clenshaw-Curtis abscissae on [a, b] with weights integrating
/// lambda^alpha p(lambda) exactly for deg p <= J - 1. Requires a >= 0.
[[nodiscard]] SubintervalRule weighted_cc(std::size_t J, double a, double b, FractionalOrder order);

/// Chebyshev moments  int_{-1}^{1} (x + beta)^alpha T_m(x) dx, m = 0..count-1,
/// for the interval [a, b] mapped onto [-1, 1] (beta = (a+b)/(b-a)).
[[nodiscard]] std::vector<double> shifted_power_moments(std::size_t count, double a, double b,
                                                        double alpha);

[[nodiscard]] CompoundRule assemble_compound(const SchemeConfig& config);

/// Products w_i * K(lambda_i), de-weighted at nodes whose weights absorb lambda^alpha.
[[nodiscard]] std::vector<double> kernel_weights(const CompoundRule& rule, FractionalOrder order);

/// CSV with header `k,j,lambda,weight,weighted_flag`.
void write_rule_csv(std::ostream& os, const CompoundRule& rule);

}  // namespace riss
