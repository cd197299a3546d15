// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion, with the
// measured numbers on indented lines underneath. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "riss/bench.hpp"
#include "riss/errors.hpp"
#include "riss/evaluator.hpp"
#include "riss/fde_solver.hpp"
#include "riss/oracles.hpp"
#include "riss/quadrature.hpp"
#include "riss/steppers.hpp"

using namespace riss;

namespace {

struct Criterion {
    int id;
    std::string title;
    bool ok = true;
    std::vector<std::string> notes;

    void check(bool cond, const std::string& what) {
        notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
        ok = ok && cond;
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool within_rel(double x, double ref, double tol) { return std::abs(x - ref) <= tol * std::abs(ref); }

const FractionalOrder kAlpha(0.4);
const TestFunction kSmooth{PowerFunction(1.6), 0.0};
const TestFunction kRough{PowerFunction(0.6), 0.0};

SchemeConfig cfg(QuadKind q, std::size_t J, std::size_t K, StepperKind s, DerivMode m, double h) {
    return make_config(0.4, J, K, q, s, m, h, 3.0);
}

double final_error(const SchemeConfig& c, const TestFunction& f) { return run_eval_experiment(c, f).final_abs_error; }

std::vector<double> sweep_steps() { return log_spaced_steps(3.0, 1e-1, 1e-4, 2); }

std::string table_note(const ConvergenceTable& t) {
    std::string s;
    for (const auto& r : t.rows) s += fmt("%.2e:%.3e%s ", r.h, r.final_abs_error, r.saturated ? "*" : "");
    return s;
}

double local_slope(const ConvergenceRow& a, const ConvergenceRow& b) {
    return std::log(a.final_abs_error / b.final_abs_error) / std::log(a.h / b.h);
}

// ---------------------------------------------------------------------------

Criterion reference_errors_backward_euler() {
    Criterion c{1, "reference errors, backward euler with exact y'"};
    struct Q { QuadKind q; std::size_t J, K; const char* name; };
    for (Q q : {Q{QuadKind::CompoundGauss, 25, 10, "gauss 25/10"}, Q{QuadKind::CompoundGauss, 10, 25, "gauss 10/25"},
                Q{QuadKind::CompoundCC, 25, 10, "cc 25/10"}, Q{QuadKind::CompoundCC, 10, 25, "cc 10/25"}}) {
        for (auto [h, ref] : {std::pair{1e-2, 2.63e-3}, std::pair{1e-4, 2.63e-5}}) {
            const double e = final_error(cfg(q.q, q.J, q.K, StepperKind::BackwardEuler, DerivMode::ExactDerivative, h), kSmooth);
            c.check(within_rel(e, ref, 0.05), fmt("%s h=%.0e error %.4e (reference %.2e, +-5%%)", q.name, h, e, ref));
        }
    }
    return c;
}

Criterion reference_errors_trapezoidal() {
    Criterion c{2, "reference errors, trapezoidal with exact y'"};
    const auto tr = [](QuadKind q, std::size_t J, std::size_t K, double h) {
        return final_error(cfg(q, J, K, StepperKind::Trapezoidal, DerivMode::ExactDerivative, h), kSmooth);
    };
    const double e1 = tr(QuadKind::CompoundGauss, 25, 10, 1e-2);
    c.check(within_rel(e1, 1.65e-6, 0.10), fmt("gauss 25/10 h=1e-2 error %.4e (reference 1.65e-06, +-10%%)", e1));
    const double e2 = tr(QuadKind::CompoundGauss, 25, 10, 1e-4);
    c.check(e2 >= 4.96e-8 / 3 && e2 <= 4.96e-8 * 3, fmt("gauss 25/10 h=1e-4 error %.4e (reference 4.96e-08, factor 3)", e2));
    const double e3 = tr(QuadKind::CompoundCC, 15, 7, 1e-4);
    c.check(within_rel(e3, 1.99e-4, 0.15), fmt("cc 15/7 h=1e-4 error %.4e (reference 1.99e-04, +-15%%)", e3));
    return c;
}

Criterion slopes() {
    Criterion c{3, "convergence slopes"};
    const auto hs = sweep_steps();
    struct S { StepperKind s; DerivMode m; const TestFunction* f; double target, tol; const char* name; };
    for (S s : {S{StepperKind::BackwardEuler, DerivMode::ExactDerivative, &kSmooth, 1.0, 0.1, "be exact t^1.6"},
                S{StepperKind::Trapezoidal, DerivMode::ExactDerivative, &kSmooth, 1.6, 0.15, "trap exact t^1.6"},
                S{StepperKind::BackwardEuler, DerivMode::Mod2, &kRough, 0.6, 0.1, "be mod2 t^0.6"}}) {
        const SchemeConfig base = cfg(QuadKind::CompoundGauss, 25, 10, s.s, s.m, hs.front());
        const ConvergenceTable t = run_sweep(base, hs, *s.f);
        c.check(std::abs(t.slope - s.target) <= s.tol,
                fmt("%s slope %.3f (expected %.2f +- %.2f)", s.name, t.slope, s.target, s.tol));
        c.notes.push_back("       " + table_note(t));
    }
    return c;
}

Criterion plateau() {
    Criterion c{4, "trapezoidal saturation plateau"};
    const auto hs = sweep_steps();
    const ConvergenceTable t = run_sweep(
        cfg(QuadKind::CompoundGauss, 25, 10, StepperKind::Trapezoidal, DerivMode::ExactDerivative, hs.front()), hs, kSmooth);
    const bool found = t.saturation_level.has_value();
    const double level = found ? *t.saturation_level : 0.0;
    c.check(found && level >= 5e-9 && level <= 5e-7, fmt("plateau level %.3e (expected in [5e-9, 5e-7])", level));
    c.notes.push_back("       " + table_note(t));
    return c;
}

Criterion rough_function() {
    Criterion c{5, "t^0.6: exact trapezoidal rejected, mod1/mod2 converge with a kink"};
    bool raised = false;
    try {
        (void)run_eval_experiment(cfg(QuadKind::CompoundGauss, 25, 10, StepperKind::Trapezoidal, DerivMode::ExactDerivative, 1e-2), kRough);
    } catch (const NumericalError&) {
        raised = true;
    }
    c.check(raised, "trapezoidal exact mode raises the nonexistent y'(0) error");
    const auto hs = sweep_steps();
    for (auto [m, name] : {std::pair{DerivMode::Mod1, "mod1"}, std::pair{DerivMode::Mod2, "mod2"}}) {
        try {
            const ConvergenceTable t = run_sweep(
                cfg(QuadKind::CompoundGauss, 25, 10, StepperKind::Trapezoidal, m, hs.front()), hs, kRough);
            const double first = local_slope(t.rows[0], t.rows[1]);
            // last pair of rows before saturation
            std::size_t last = 1;
            for (std::size_t i = 1; i < t.rows.size(); ++i) {
                if (!t.rows[i].saturated) last = i;
            }
            const double final_slope = local_slope(t.rows[last - 1], t.rows[last]);
            c.check(t.slope >= 0.5 && t.slope <= 1.7, fmt("trap %s slope %.3f (expected in [0.5, 1.7])", name, t.slope));
            c.check(final_slope < first, fmt("trap %s local slope falls from %.3f to %.3f", name, first, final_slope));
            c.notes.push_back("       " + table_note(t));
        } catch (const std::exception& e) {
            c.check(false, fmt("trap %s failed: %s", name, e.what()));
        }
    }
    return c;
}

Criterion modification_insensitivity() {
    Criterion c{6, "mod1/mod2 close to exact-derivative series on t^1.6 at h = 1e-3"};
    for (auto s : {StepperKind::BackwardEuler, StepperKind::Trapezoidal}) {
        const SchemeConfig ec = cfg(QuadKind::CompoundGauss, 25, 10, s, DerivMode::ExactDerivative, 1e-3);
        const ErrorReport exact = run_eval_experiment(ec, kSmooth);
        for (auto m : {DerivMode::Mod1, DerivMode::Mod2}) {
            SchemeConfig mc = ec;
            mc.deriv_mode = m;
            const ErrorReport mod = run_eval_experiment(mc, kSmooth);
            // both series share the closed-form reference, so compare the signed values at T
            const auto de = eval_derivative_callable(ec, [](double t) { return kSmooth.value(t); },
                                                     [](double t) { return kSmooth.derivative(t); });
            const auto dm = eval_derivative_callable(mc, [](double t) { return kSmooth.value(t); });
            const double diff = std::abs(dm.values.back() - de.values.back());
            c.check(diff <= 0.1 * exact.final_abs_error,
                    fmt("%s %s: |mod - exact| %.3e vs 10%% of error %.3e (mod error %.3e)", to_string(s),
                        to_string(m), diff, 0.1 * exact.final_abs_error, mod.final_abs_error));
        }
    }
    return c;
}

Criterion timing() {
    Criterion c{7, "timing proportionality"};
    const auto t = [](std::size_t J, std::size_t K, double h, StepperKind s) {
        const std::vector<SchemeConfig> one{cfg(QuadKind::CompoundGauss, J, K, s, DerivMode::ExactDerivative, h)};
        return run_timing(one, kSmooth, 9).rows.front().seconds;
    };
    const double coarse = t(25, 10, 1e-4, StepperKind::BackwardEuler);
    const double fine = t(25, 10, 1e-5, StepperKind::BackwardEuler);
    c.check(within_rel(fine / coarse, 10.0, 0.3), fmt("1/h x10: time ratio %.2f (expected 10 +- 30%%)", fine / coarse));
    const double small = t(10, 10, 1e-5, StepperKind::BackwardEuler);
    const double large = t(25, 40, 1e-5, StepperKind::BackwardEuler);
    c.check(within_rel(large / small, 10.0, 0.3), fmt("J*K 100 -> 1000: time ratio %.2f (expected 10 +- 30%%)", large / small));
    const double swapped = t(10, 25, 1e-5, StepperKind::BackwardEuler);
    c.check(within_rel(swapped, fine, 0.3), fmt("(25,10) %.3fs vs (10,25) %.3fs (within 30%%)", fine, swapped));
    const double trap = t(25, 10, 1e-5, StepperKind::Trapezoidal);
    c.check(trap / fine >= 1.0 && trap / fine <= 3.0, fmt("trap/be time ratio %.2f (expected in [1, 3])", trap / fine));
    return c;
}

// ---------------------------------------------------------------------------

double apply(const SubintervalRule& r, const std::function<double(double)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

double z_error(StepperKind kind, double lambda, std::size_t N) {
    const double h = 1.0 / static_cast<double>(N);
    double z = 0.0, err = 0.0;
    DriveWindow d;
    d.yp_n = 1.0;
    d.yp_prev = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        z = kind == StepperKind::BackwardEuler ? step_z_backward_euler(lambda, z, h, d, DerivMode::ExactDerivative)
                                               : step_z_trapezoidal(lambda, z, h, d, DerivMode::ExactDerivative);
        err = std::max(err, std::abs(z - (1 - std::exp(-lambda * n * h)) / lambda));
    }
    return err;
}

Criterion properties() {
    Criterion c{8, "property suites"};

    // quadrature exactness
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    double worst_gauss = 0.0, worst_cc = 0.0, worst_wcc = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        double a = u(gen), b = u(gen);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-2) continue;
        for (std::size_t J = 2; J <= 12; ++J) {
            const auto g = gauss_legendre(J, a, b);
            const auto cc = clenshaw_curtis(J, a, b);
            const auto w = weighted_cc(J, a, b, kAlpha);
            for (int m = 0; m <= static_cast<int>(2 * J - 1); ++m) {
                const double exact = (std::pow(b, m + 1) - std::pow(a, m + 1)) / (m + 1);
                auto pw = [m](double x) { return std::pow(x, m); };
                worst_gauss = std::max(worst_gauss, std::abs(apply(g, pw) - exact) / exact);
                if (m <= static_cast<int>(J - 1)) {
                    worst_cc = std::max(worst_cc, std::abs(apply(cc, pw) - exact) / exact);
                    const double wexact = (std::pow(b, m + 1.4) - std::pow(a, m + 1.4)) / (m + 1.4);
                    worst_wcc = std::max(worst_wcc, std::abs(apply(w, pw) - wexact) / wexact);
                }
            }
        }
    }
    c.check(worst_gauss <= 1e-12, fmt("gauss exactness worst relative error %.2e (<= 1e-12)", worst_gauss));
    c.check(worst_cc <= 1e-12, fmt("cc exactness worst relative error %.2e (<= 1e-12)", worst_cc));
    c.check(worst_wcc <= 1e-9, fmt("weighted cc moments worst relative error %.2e (<= 1e-9)", worst_wcc));

    // A-stability
    bool stable = true;
    for (int i = 0; i <= 160; ++i) {
        const double hl = std::pow(10.0, -8.0 + i / 10.0);
        stable = stable && std::abs(amplification(StepperKind::BackwardEuler, hl)) < 1.0 &&
                 std::abs(amplification(StepperKind::Trapezoidal, hl)) <= 1.0;
    }
    c.check(stable, "amplification factors bounded by 1 for h*lambda in [1e-8, 1e8]");

    // constants, linearity, shift
    double worst_const = 0.0, worst_lin = 0.0, worst_shift = 0.0;
    for (auto q : {QuadKind::CompoundGauss, QuadKind::CompoundCC}) {
        for (auto s : {StepperKind::BackwardEuler, StepperKind::Trapezoidal}) {
            for (auto m : {DerivMode::ExactDerivative, DerivMode::Mod1, DerivMode::Mod2}) {
                const SchemeConfig sc = cfg(q, 25, 10, s, m, 1e-2);
                auto zero = [](double) { return 0.0; };
                const auto dc = eval_derivative_callable(sc, [](double) { return -4.5; }, zero);
                for (double v : dc.values) worst_const = std::max(worst_const, std::abs(v));
                auto y1 = [](double t) { return std::pow(t, 1.6); };
                auto y1p = [](double t) { return 1.6 * std::pow(t, 0.6); };
                auto y2 = [](double t) { return std::cos(2 * t); };
                auto y2p = [](double t) { return -2 * std::sin(2 * t); };
                const auto d1 = eval_derivative_callable(sc, y1, y1p);
                const auto d2 = eval_derivative_callable(sc, y2, y2p);
                const auto d12 = eval_derivative_callable(sc, [&](double t) { return 3 * y1(t) + 0.5 * y2(t); },
                                                          [&](double t) { return 3 * y1p(t) + 0.5 * y2p(t); });
                const auto ds = eval_derivative_callable(sc, [&](double t) { return y1(t) + 100.0; }, y1p);
                for (std::size_t i = 0; i < d1.values.size(); ++i) {
                    const double lin = 3 * d1.values[i] + 0.5 * d2.values[i];
                    worst_lin = std::max(worst_lin, std::abs(d12.values[i] - lin) / std::max(1.0, std::abs(lin)));
                    worst_shift = std::max(worst_shift, std::abs(ds.values[i] - d1.values[i]));
                }
            }
        }
    }
    c.check(worst_const <= 1e-14, fmt("constant function worst |D| %.2e (<= 1e-14)", worst_const));
    c.check(worst_lin <= 1e-12, fmt("linearity worst relative deviation %.2e (<= 1e-12)", worst_lin));
    c.check(worst_shift <= 1e-12, fmt("shift invariance worst deviation %.2e (<= 1e-12)", worst_shift));

    // stepper orders against closed-form states
    for (double lambda : {0.5, 2.0, 10.0}) {
        const double be = std::log10(z_error(StepperKind::BackwardEuler, lambda, 1000) / z_error(StepperKind::BackwardEuler, lambda, 10000));
        const double tr = std::log10(z_error(StepperKind::Trapezoidal, lambda, 1000) / z_error(StepperKind::Trapezoidal, lambda, 10000));
        c.check(std::abs(be - 1.0) <= 0.1 && std::abs(tr - 2.0) <= 0.1,
                fmt("lambda=%g stepper orders be %.3f trap %.3f", lambda, be, tr));
    }

    // naive oracle triangulation: |riss - L1| within the sum of the two
    // independently estimated errors. Time discretization: 2|X_h - X_h/2|
    // (first order or better). Quadrature: distance to a refined rule
    // (J = 25, K = 40, exponents -8..8) at the same h.
    struct Ref { QuadKind q; std::size_t J, K; StepperKind s; const char* name; };
    const std::vector<Ref> configs{
        {QuadKind::CompoundGauss, 25, 10, StepperKind::BackwardEuler, "gauss 25/10 be"},
        {QuadKind::CompoundGauss, 10, 25, StepperKind::BackwardEuler, "gauss 10/25 be"},
        {QuadKind::CompoundCC, 25, 10, StepperKind::BackwardEuler, "cc 25/10 be"},
        {QuadKind::CompoundCC, 10, 25, StepperKind::BackwardEuler, "cc 10/25 be"},
        {QuadKind::CompoundGauss, 25, 10, StepperKind::Trapezoidal, "gauss 25/10 trap"},
        {QuadKind::CompoundGauss, 15, 7, StepperKind::Trapezoidal, "gauss 15/7 trap"},
        {QuadKind::CompoundCC, 15, 7, StepperKind::Trapezoidal, "cc 15/7 trap"},
    };
    const double h = 1e-3;
    auto riss_at_T = [](const SchemeConfig& sc) {
        return eval_derivative_callable(sc, [](double t) { return kSmooth.value(t); },
                                        [](double t) { return kSmooth.derivative(t); })
            .values.back();
    };
    auto naive_at_T = [](double hh) {
        const auto s = SampledFunction::sample([](double t) { return kSmooth.value(t); }, hh,
                                               static_cast<std::size_t>(std::llround(3.0 / hh)));
        return naive_caputo(kAlpha, s, s.steps());
    };
    const double n1 = naive_at_T(h);
    const double naive_bound = 2.0 * std::abs(n1 - naive_at_T(h / 2));
    for (const auto& t : configs) {
        const SchemeConfig sc = cfg(t.q, t.J, t.K, t.s, DerivMode::ExactDerivative, h);
        const double r1 = riss_at_T(sc);
        SchemeConfig fine = make_config(0.4, 25, 40, t.q, t.s, DerivMode::ExactDerivative, h, 3.0, -8.0, 8.0);
        const double time_bound = 2.0 * std::abs(r1 - riss_at_T(with_step(sc, h / 2)));
        const double quad_bound = std::abs(r1 - riss_at_T(fine));
        const double gap = std::abs(r1 - n1);
        c.check(gap <= time_bound + quad_bound + naive_bound,
                fmt("%s: |riss - L1| %.3e vs bounds %.3e (time) + %.3e (quadrature) + %.3e (L1)", t.name, gap,
                    time_bound, quad_bound, naive_bound));
    }
    return c;
}

// ---------------------------------------------------------------------------

Criterion solver() {
    Criterion c{9, "fde solver properties"};
    const PowerFunction pf(1.6);
    const Rhs rhs{[&](double t, double y) { return caputo_power(kAlpha, pf, t) + pf.value(t) - y; },
                  [](double, double) { return -1.0; }};
    struct S { StepperKind s; DerivMode m; double min_order; const char* name; };
    for (S s : {S{StepperKind::BackwardEuler, DerivMode::Mod1, 0.9, "be+mod1"},
                S{StepperKind::Trapezoidal, DerivMode::Mod2, 1.4, "trap+mod2"}}) {
        ConvergenceTable t;
        double worst_consistency = 0.0;
        for (double h : {1e-2, 1e-3, 1e-4}) {
            SchemeConfig sc = make_config(0.4, 20, 40, QuadKind::CompoundGauss, s.s, s.m, h, 3.0, -8.0, 8.0);
            sc.stencil = Stencil::Causal;
            const Trajectory tr = solve_fde(sc, rhs, 0.0);
            double err = 0.0;
            for (std::size_t n = 0; n < tr.y.size(); ++n) err = std::max(err, std::abs(tr.y[n] - pf.value(n * h)));
            t.rows.push_back({h, err, std::abs(tr.y.back() - pf.value(3.0)), false});

            SampledFunction y;
            y.h = h;
            y.y = tr.y;
            const auto d = eval_derivative_series(sc, y);
            for (std::size_t n = 1; n < tr.y.size(); ++n) {
                worst_consistency = std::max(worst_consistency, std::abs(d.values[n - 1] - rhs.f(n * h, tr.y[n])));
            }
        }
        t.metric = ErrorMetric::Max;
        double order = 0.0;
        try {
            order = estimate_order(t);
        } catch (const NumericalError&) {
        }
        c.check(order >= s.min_order, fmt("%s manufactured order %.3f (>= %.1f); max errors %.3e %.3e %.3e", s.name,
                                          order, s.min_order, t.rows[0].max_abs_error, t.rows[1].max_abs_error,
                                          t.rows[2].max_abs_error));
        c.check(worst_consistency <= 1e-10, fmt("%s evaluator/solver consistency %.2e (<= 1e-10)", s.name, worst_consistency));
    }

    // constant-stress creep
    double prev_gap = INFINITY;
    bool monotone = true, bounded = true, shrinking = true;
    for (double T : {1.0, 10.0, 100.0}) {
        SchemeConfig sc = make_config(0.4, 25, 10, QuadKind::CompoundGauss, StepperKind::BackwardEuler, DerivMode::Mod1, 1e-2, T);
        sc.stencil = Stencil::Causal;
        const Rhs z = zener_rhs(ZenerParams{1, 0.5, 1, 1, kAlpha}, Forcing{[](double) { return 1.0; }, {}}, SolveFor::Strain, sc);
        const Trajectory tr = solve_fde(sc, z, 0.0);
        for (std::size_t n = 1; n < tr.y.size(); ++n) {
            monotone = monotone && tr.y[n] >= tr.y[n - 1];
            bounded = bounded && tr.y[n] <= 1.0;
        }
        const double gap = 1.0 - tr.y.back();
        shrinking = shrinking && gap < prev_gap;
        c.notes.push_back(fmt("       creep T=%g strain %.6f", T, tr.y.back()));
        prev_gap = gap;
    }
    c.check(monotone && bounded && shrinking, "zener creep increases monotonically towards the equilibrium strain 1");
    return c;
}

}  // namespace

int main() {
    std::vector<std::function<Criterion()>> all{reference_errors_backward_euler, reference_errors_trapezoidal, slopes, plateau,
                                                rough_function, modification_insensitivity, timing, properties, solver};
    int failed = 0;
    for (auto& run : all) {
        Criterion c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes.push_back(std::string("FAIL exception: ") + e.what());
        }
        std::printf("%s criterion %d: %s\n", c.ok ? "PASS" : "FAIL", c.id, c.title.c_str());
        for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        failed += c.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed;
}
