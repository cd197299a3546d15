#pragma once

// Initial value problems  D^alpha y(t) = f(t, y(t)),  y(0) = y0,  solved by
// making the fast derivative approximation at t_n implicit in y_n.

#include <cstddef>
#include <functional>
#include <vector>

#include "riss/repr_core.hpp"

namespace riss {

struct Rhs {
    std::function<double(double, double)> f;
    /// Optional df/dy; a central difference is used when empty.
    std::function<double(double, double)> dfdy;
};

struct SolverOptions {
    double abs_tol = 1e-12;
    int max_iter = 50;
};

struct Trajectory {
    std::vector<double> y;          // y(t_0..t_N), y[0] = y0
    std::vector<double> residuals;  // |D(t_n) - f(t_n, y_n)|, n = 1..N
    std::vector<int> iterations;    // Newton iterations per step
    SchemeConfig config;
};

/// Only the step combinations that never read y beyond t_n are accepted:
/// backward Euler + mod1 and trapezoidal + mod2, both with the causal stencil.
void check_solver_config(const SchemeConfig& config);

[[nodiscard]] Trajectory solve_fde(const SchemeConfig& config, const Rhs& rhs, double y0,
                                   const SolverOptions& options = {});

/// Coefficients of the fractional Zener law
///   a0 sigma + a1 D^alpha sigma = m eps + b1 D^alpha eps.
struct ZenerParams {
    double a0 = 1.0;
    double a1 = 0.0;
    double m = 1.0;
    double b1 = 1.0;
    FractionalOrder alpha{0.5};
};

enum class SolveFor { Stress, Strain };

/// The prescribed one of {sigma, eps}.
struct Forcing {
    std::function<double(double)> value;
    std::function<double(double)> derivative;  // optional
};

/// Right-hand side of D^alpha(unknown) = f(t, unknown). The fractional
/// derivative of the forcing is precomputed on the grid of `config` and f may
/// only be evaluated at grid times.
[[nodiscard]] Rhs zener_rhs(const ZenerParams& params, const Forcing& forcing, SolveFor solve_for,
                            const SchemeConfig& config);

}  // namespace riss
