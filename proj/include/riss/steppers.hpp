#pragma once

// One-step updates of the infinite states
//   dz/dt = y'(t) - lambda z,   dZ/dt = y(t) - lambda Z,   z(0) = Z(0) = 0,
// by backward Euler or the trapezoidal rule, optionally with the y' terms
// replaced by differences of y samples.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "riss/repr_core.hpp"

namespace riss {

/// Per-node states at the current time level. Only one level is kept.
struct InfiniteState {
    std::vector<double> z;
    std::vector<double> Zc;
    std::size_t n = 0;

    explicit InfiniteState(std::size_t nodes = 0) : z(nodes, 0.0), Zc(nodes, 0.0) {}
};

/// Samples of y (and y') around the step t_{n-1} -> t_n.
struct DriveWindow {
    std::optional<double> y_next;   // y(t_{n+1})
    double y_n = 0.0;               // y(t_n)
    double y_prev = 0.0;            // y(t_{n-1})
    std::optional<double> y_prev2;  // y(t_{n-2})
    std::optional<double> yp_n;     // y'(t_n)
    std::optional<double> yp_prev;  // y'(t_{n-1})
    std::size_t n = 1;
    std::size_t N = 1;
};

/// The drive term of the z update: the quantity standing in for h y'(t_n)
/// (backward Euler) or (h/2)(y'(t_n) + y'(t_{n-1})) (trapezoidal).
[[nodiscard]] double z_increment(StepperKind kind, DerivMode mode, const DriveWindow& drive,
                                 double h);

[[nodiscard]] double step_z_backward_euler(double lambda, double z_prev, double h,
                                           const DriveWindow& drive, DerivMode mode);
[[nodiscard]] double step_z_trapezoidal(double lambda, double z_prev, double h,
                                        const DriveWindow& drive, DerivMode mode);
[[nodiscard]] double step_Z(StepperKind kind, double lambda, double Z_prev, double h, double y_n,
                            double y_prev);

/// dz/dt at t_n from the post-update state: yprime_surrogate - lambda z_n.
[[nodiscard]] inline double zdot(double lambda, double z_n, double yprime_surrogate) noexcept {
    return yprime_surrogate - lambda * z_n;
}

/// Stand-in for y'(t_n): the exact sample in ExactDerivative mode, otherwise
/// the difference family selected by `stencil`.
[[nodiscard]] double derivative_surrogate(DerivMode mode, Stencil stencil, const DriveWindow& drive,
                                          double h);

/// Second-order differences on a uniform grid: forward at n = 0, backward at
/// n = N, centered otherwise.
[[nodiscard]] double centered_difference(std::span<const double> y, std::size_t n, double h);

/// Second-order backward difference (first-order at n = 1).
[[nodiscard]] double backward_difference(std::span<const double> y, std::size_t n, double h);

/// Amplification factor of the homogeneous update for decay rate lambda.
[[nodiscard]] double amplification(StepperKind kind, double h_lambda) noexcept;

/// Advances all node states of a compound rule by one step. The per-node
/// factors are computed once; each node only touches its own entries.
class StateAdvancer {
public:
    StateAdvancer(StepperKind kind, double h, std::span<const double> nodes);

    /// z <- (a z + z_inc) / d,  Z <- (a Z + Z_inc) / d
    void advance(InfiniteState& state, double z_inc, double Z_inc) const noexcept;

    [[nodiscard]] StepperKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::span<const double> carry() const noexcept { return carry_; }
    [[nodiscard]] std::span<const double> inv_denominator() const noexcept { return inv_d_; }

    /// The Z drive term for the step: h y_n or (h/2)(y_n + y_{n-1}).
    [[nodiscard]] double Z_increment(double y_n, double y_prev) const noexcept;

private:
    StepperKind kind_;
    double h_;
    std::vector<double> carry_;  // a_i
    std::vector<double> inv_d_;  // 1 / d_i
};

}  // namespace riss
