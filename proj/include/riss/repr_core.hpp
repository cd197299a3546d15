#pragma once

// Scalar ingredients of the infinite state representation:
// the fractional order, the frequency parameter omega, the kernel K(lambda)
// and the graded subdivision of the lambda half-line.

#include <cstddef>
#include <vector>

namespace riss {

/// Order of the Caputo derivative, restricted to the open interval (0, 1).
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    [[nodiscard]] double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Subdivision points 0 = eta_0 < eta_1 < ... < eta_K with eta_1..eta_K
/// log-equispaced between 10^min_exp and 10^max_exp.
struct EtaGrid {
    std::size_t K = 0;
    double min_exp = -5.0;
    double max_exp = 5.0;
    std::vector<double> points;  // K + 1 entries

    [[nodiscard]] double upper() const { return points.back(); }
};

enum class QuadKind { CompoundGauss, CompoundCC };
enum class StepperKind { BackwardEuler, Trapezoidal };
enum class DerivMode { ExactDerivative, Mod1, Mod2 };

/// Finite-difference family used for the explicit y'(t_n) term of the
/// representation when y' is not sampled.
///   Centered: second-order centered difference, one-sided second-order
///             differences at the grid ends.
///   Causal:   second-order backward difference (first-order at n = 1);
///             never reads y(t_{n+1}).
enum class Stencil { Centered, Causal };

struct SchemeConfig {
    FractionalOrder order{0.5};
    std::size_t J = 25;
    EtaGrid eta;
    QuadKind quad_kind = QuadKind::CompoundGauss;
    StepperKind stepper_kind = StepperKind::BackwardEuler;
    DerivMode deriv_mode = DerivMode::ExactDerivative;
    Stencil stencil = Stencil::Centered;
    double h = 1e-2;
    double T = 1.0;
    /// Compound CC uses the standard rule on [eta_{k-1}, eta_k] only when
    /// eta_{k-1} is strictly greater than this point, the weighted rule otherwise.
    double cc_switch = 1.0;

    /// Number of time steps N = T/h; throws ConfigError when invalid.
    [[nodiscard]] std::size_t steps() const;
    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

/// Builds a validated config with the usual defaults (eta exponents -5..5).
SchemeConfig make_config(double alpha, std::size_t J, std::size_t K, QuadKind quad,
                         StepperKind stepper, DerivMode mode, double h, double T,
                         double min_exp = -5.0, double max_exp = 5.0);

[[nodiscard]] double omega(FractionalOrder order) noexcept;

/// K(lambda) = sin(alpha pi)/pi * lambda^alpha / (lambda^2 + omega^2).
[[nodiscard]] double kernel(FractionalOrder order, double lambda);

/// K(lambda) / lambda^alpha, used at nodes of rules that absorb lambda^alpha.
[[nodiscard]] double deweighted_kernel(FractionalOrder order, double lambda);

[[nodiscard]] EtaGrid eta_grid(std::size_t K, double min_exp = -5.0, double max_exp = 5.0);

const char* to_string(QuadKind k) noexcept;
const char* to_string(StepperKind k) noexcept;
const char* to_string(DerivMode m) noexcept;
const char* to_string(Stencil s) noexcept;

}  // namespace riss
