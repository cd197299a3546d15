#include "riss/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "riss/errors.hpp"
#include "riss/format.hpp"

namespace riss {
namespace {

void require_interval(double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ConfigError("quadrature interval needs a < b");
    }
}

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(std::size_t n, double x) {
    double p0 = 1.0;
    double p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
    }
    const double dn = static_cast<double>(n);
    const double dp = dn * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

// Nodes and weights on [-1, 1], ascending.
void gauss_reference(std::size_t J, std::vector<double>& x, std::vector<double>& w) {
    x.assign(J, 0.0);
    w.assign(J, 0.0);
    if (J == 1) {
        w[0] = 2.0;
        return;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(J));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(J - 1));
    for (std::size_t k = 1; k < J; ++k) {
        const double kk = static_cast<double>(k);
        sub[static_cast<Eigen::Index>(k - 1)] = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    for (std::size_t i = 0; i < J; ++i) {
        double xi = ev[static_cast<Eigen::Index>(i)];
        // Newton polish on P_J.
        for (int it = 0; it < 3; ++it) {
            const auto [p, dp] = legendre_with_derivative(J, xi);
            xi -= p / dp;
        }
        const auto [p, dp] = legendre_with_derivative(J, xi);
        (void)p;
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    // Exact symmetry about 0.
    for (std::size_t i = 0; i < J / 2; ++i) {
        const std::size_t j = J - 1 - i;
        const double xs = 0.5 * (x[j] - x[i]);
        const double ws = 0.5 * (w[i] + w[j]);
        x[i] = -xs;
        x[j] = xs;
        w[i] = w[j] = ws;
    }
    if (J % 2 == 1) x[J / 2] = 0.0;
}

// Interpolatory weights on the Chebyshev-Lobatto points cos(i pi / n),
// i = 0..n, given the Chebyshev moments M_0..M_n of the weight on [-1, 1].
// Output is ordered by ascending abscissa.
std::vector<double> lobatto_weights(const std::vector<double>& moments) {
    const std::size_t n = moments.size() - 1;
    const double dn = static_cast<double>(n);
    std::vector<double> w(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        double s = 0.0;
        for (std::size_t m = 0; m <= n; ++m) {
            const double half = (m == 0 || m == n) ? 0.5 : 1.0;
            // cos(m i pi / n) with the product reduced mod 2n for accuracy.
            const std::size_t r = (m * i) % (2 * n);
            s += half * moments[m] * std::cos(std::numbers::pi * static_cast<double>(r) / dn);
        }
        const double gamma = (i == 0 || i == n) ? 0.5 : 1.0;
        // index n - i is the ascending position of cos(i pi / n)
        w[n - i] = 2.0 / dn * gamma * s;
    }
    return w;
}

std::vector<double> lobatto_nodes(std::size_t J, double a, double b) {
    const std::size_t n = J - 1;
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    std::vector<double> x(J);
    for (std::size_t i = 0; i <= n; ++i) {
        // ascending: position n - i holds cos(i pi / n)
        const double t = std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
        x[n - i] = c + r * t;
    }
    x.front() = a;
    x.back() = b;
    if (J % 2 == 1) x[J / 2] = c;
    return x;
}

}  // namespace

SubintervalRule gauss_legendre(std::size_t J, double a, double b) {
    if (J < 1) throw ConfigError("Gauss-Legendre rule needs J >= 1");
    require_interval(a, b);
    std::vector<double> x;
    std::vector<double> w;
    gauss_reference(J, x, w);
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    SubintervalRule rule{a, b, {}, {}, false};
    rule.nodes.resize(J);
    rule.weights.resize(J);
    for (std::size_t i = 0; i < J; ++i) {
        rule.nodes[i] = c + r * x[i];
        rule.weights[i] = r * w[i];
    }
    return rule;
}

SubintervalRule clenshaw_curtis(std::size_t J, double a, double b) {
    if (J < 2) throw ConfigError("Clenshaw-Curtis rule needs J >= 2");
    require_interval(a, b);
    std::vector<double> moments(J, 0.0);
    for (std::size_t m = 0; m < J; m += 2) {
        const double dm = static_cast<double>(m);
        moments[m] = 2.0 / (1.0 - dm * dm);
    }
    const double r = 0.5 * (b - a);
    SubintervalRule rule{a, b, lobatto_nodes(J, a, b), lobatto_weights(moments), false};
    for (double& w : rule.weights) w *= r;
    return rule;
}

std::vector<double> shifted_power_moments(std::size_t count, double a, double b, double alpha) {
    require_interval(a, b);
    if (a < 0.0) throw ConfigError("weighted moments need a >= 0");
    std::vector<double> M(count, 0.0);
    if (count == 0) return M;

    const double r = 0.5 * (b - a);
    const double beta = (a + b) / (b - a);
    const double bp = 2.0 * b / (b - a);  // beta + 1
    const double bm = 2.0 * a / (b - a);  // beta - 1, free of cancellation
    const double rho = beta + std::sqrt(bp * bm);

    // The forward recurrence amplifies rounding by about rho^m; use it while
    // that stays small, otherwise the integrand is analytic on a wide
    // ellipse and Gauss-Legendre converges like rho^(-2n).
    const double growth = static_cast<double>(count) * std::log(rho);
    if (growth <= std::log(1e4)) {
        const double a1 = alpha + 1.0;
        auto E = [&](std::size_t k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            return std::pow(bp, a1) - sign * std::pow(bm, a1);
        };
        M[0] = (std::pow(bp, a1) - std::pow(bm, a1)) / a1;
        if (count > 1) {
            M[1] = (std::pow(bp, a1 + 1.0) - std::pow(bm, a1 + 1.0)) / (a1 + 1.0) - beta * M[0];
        }
        if (count > 2) {
            M[2] = (0.5 * E(2) - M[0] - 2.0 * beta * M[1]) * 2.0 / (alpha + 3.0);
        }
        for (std::size_t j = 2; j + 1 < count; ++j) {
            const double dj = static_cast<double>(j);
            const double rhs = -2.0 * beta * M[j] - M[j - 1] * (dj - alpha - 2.0) / (dj - 1.0) +
                               E(j + 1) / (dj + 1.0) - E(j - 1) / (dj - 1.0);
            M[j + 1] = rhs * (dj + 1.0) / (dj + alpha + 2.0);
        }
        return M;
    }

    const double n_needed = 18.0 * std::log(10.0) / (2.0 * std::log(rho));
    const std::size_t n = static_cast<std::size_t>(std::ceil(n_needed)) + count + 8;
    std::vector<double> x;
    std::vector<double> w;
    gauss_reference(n, x, w);
    const double c = 0.5 * (a + b);
    for (std::size_t q = 0; q < n; ++q) {
        const double lambda = c + r * x[q];
        const double f = w[q] * std::pow(lambda / r, alpha);
        // Chebyshev recurrence in x
        double t0 = 1.0;
        double t1 = x[q];
        M[0] += f;
        if (count > 1) M[1] += f * t1;
        for (std::size_t m = 2; m < count; ++m) {
            const double t2 = 2.0 * x[q] * t1 - t0;
            M[m] += f * t2;
            t0 = t1;
            t1 = t2;
        }
    }
    return M;
}

SubintervalRule weighted_cc(std::size_t J, double a, double b, FractionalOrder order) {
    if (J < 2) throw ConfigError("weighted Clenshaw-Curtis rule needs J >= 2");
    if (a < 0.0) throw ConfigError("weighted Clenshaw-Curtis rule needs a >= 0");
    require_interval(a, b);
    const double alpha = order.value();
    const std::vector<double> moments = shifted_power_moments(J, a, b, alpha);
    const double r = 0.5 * (b - a);
    const double scale = std::pow(r, 1.0 + alpha);
    SubintervalRule rule{a, b, lobatto_nodes(J, a, b), lobatto_weights(moments), true};
    for (double& w : rule.weights) w *= scale;
    return rule;
}

CompoundRule assemble_compound(const SchemeConfig& config) {
    const auto& eta = config.eta.points;
    if (config.eta.K < 1 || eta.size() != config.eta.K + 1) {
        throw ConfigError("eta grid is not initialised");
    }
    CompoundRule out;
    out.nodes.reserve(config.J * config.eta.K);
    out.weights.reserve(config.J * config.eta.K);
    for (std::size_t k = 1; k <= config.eta.K; ++k) {
        const double a = eta[k - 1];
        const double b = eta[k];
        SubintervalRule rule;
        if (config.quad_kind == QuadKind::CompoundGauss) {
            rule = gauss_legendre(config.J, a, b);
        } else if (a > config.cc_switch) {
            rule = clenshaw_curtis(config.J, a, b);
        } else {
            rule = weighted_cc(config.J, a, b, config.order);
        }
        out.absorbs_weight = out.absorbs_weight || rule.weighted;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            out.nodes.push_back(rule.nodes[i]);
            out.weights.push_back(rule.weights[i]);
            out.weighted.push_back(rule.weighted ? 1 : 0);
            out.subinterval.push_back(k);
        }
    }
    return out;
}

std::vector<double> kernel_weights(const CompoundRule& rule, FractionalOrder order) {
    std::vector<double> W(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double lambda = rule.nodes[i];
        const double k = rule.weighted[i] ? deweighted_kernel(order, lambda) : kernel(order, lambda);
        W[i] = rule.weights[i] * k;
    }
    return W;
}

void write_rule_csv(std::ostream& os, const CompoundRule& rule) {
    os << "k,j,lambda,weight,weighted_flag\n";
    std::size_t j = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        j = (i > 0 && rule.subinterval[i] == rule.subinterval[i - 1]) ? j + 1 : 1;
        os << rule.subinterval[i] << ',' << j << ',' << format_real(rule.nodes[i]) << ','
           << format_real(rule.weights[i]) << ',' << (rule.weighted[i] ? 1 : 0) << '\n';
    }
}

}  // namespace riss
