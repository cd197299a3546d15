#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "riss/bench.hpp"
#include "riss/errors.hpp"
#include "riss/fde_solver.hpp"
#include "riss/format.hpp"

namespace riss::cli {
namespace {

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// pow:<p> or const:<c>
TestFunction parse_fn(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("--fn expects pow:<p> or const:<c>");
    const std::string kind = spec.substr(0, colon);
    const double v = parse_real(spec.substr(colon + 1));
    if (kind == "pow") return TestFunction{PowerFunction(v), 0.0};
    if (kind == "const") return TestFunction{PowerFunction(1.0, 0.0), v};
    throw ConfigError("unknown function kind '" + kind + "'");
}

QuadKind parse_quad(const std::string& s) {
    if (s == "gauss") return QuadKind::CompoundGauss;
    if (s == "cc") return QuadKind::CompoundCC;
    throw ConfigError("--quad expects gauss or cc");
}

StepperKind parse_stepper(const std::string& s) {
    if (s == "be") return StepperKind::BackwardEuler;
    if (s == "trap") return StepperKind::Trapezoidal;
    throw ConfigError("--stepper expects be or trap");
}

DerivMode parse_deriv(const std::string& s) {
    if (s == "exact") return DerivMode::ExactDerivative;
    if (s == "mod1") return DerivMode::Mod1;
    if (s == "mod2") return DerivMode::Mod2;
    throw ConfigError("--deriv expects exact, mod1 or mod2");
}

Stencil parse_stencil(const std::string& s) {
    if (s == "centered") return Stencil::Centered;
    if (s == "causal") return Stencil::Causal;
    throw ConfigError("--stencil expects centered or causal");
}

struct Options {
    double alpha = 0.4;
    std::string fn = "pow:1.6";
    double t_end = 3.0;
    double h = 1e-2;
    std::string h_list;
    std::string quad = "gauss";
    std::size_t J = 25;
    std::size_t K = 10;
    std::string eta_exps = "-5,5";
    std::string stepper = "be";
    std::string deriv;
    std::string stencil;
    double cc_switch = 1.0;
    std::string out = "-";
    // sweep
    std::string metric = "final";
    double saturation = 0.8;
    // timing
    std::string jk_list;
    std::string steppers;
    int reps = 3;
    // solve
    double y0 = 0.0;
    std::string zener;
    std::string solve_for = "strain";
    std::string manufactured;
};

void add_shared(CLI::App* app, Options& o) {
    app->add_option("--alpha", o.alpha, "fractional order in (0,1)");
    app->add_option("--fn", o.fn, "test function / forcing: pow:<p> or const:<c>");
    app->add_option("--t-end", o.t_end, "final time T");
    app->add_option("--h", o.h, "step size (T/h must be an integer)");
    app->add_option("--quad", o.quad, "gauss or cc");
    app->add_option("--J", o.J, "nodes per subinterval");
    app->add_option("--K", o.K, "number of subintervals");
    app->add_option("--eta-exps", o.eta_exps, "min,max decimal exponents of the eta grid");
    app->add_option("--stepper", o.stepper, "be or trap");
    app->add_option("--deriv", o.deriv, "exact, mod1 or mod2");
    app->add_option("--stencil", o.stencil, "centered or causal");
    app->add_option("--cc-switch", o.cc_switch, "standard CC only where eta_{k-1} exceeds this");
    app->add_option("--out", o.out, "CSV destination, - for standard output");
}

SchemeConfig build_config(const Options& o, DerivMode fallback_mode, Stencil fallback_stencil) {
    const auto exps = parse_reals(o.eta_exps);
    if (exps.size() != 2) throw ConfigError("--eta-exps expects two values");
    SchemeConfig c;
    c.order = FractionalOrder(o.alpha);
    c.J = o.J;
    c.eta = eta_grid(o.K, exps[0], exps[1]);
    c.quad_kind = parse_quad(o.quad);
    c.stepper_kind = parse_stepper(o.stepper);
    c.deriv_mode = o.deriv.empty() ? fallback_mode : parse_deriv(o.deriv);
    c.stencil = o.stencil.empty() ? fallback_stencil : parse_stencil(o.stencil);
    c.h = o.h;
    c.T = o.t_end;
    c.cc_switch = o.cc_switch;
    c.validate();
    return c;
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& stdout_stream) {
        if (path == "-") {
            os_ = &stdout_stream;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot open " + path);
            os_ = file_.get();
        }
    }
    std::ostream& get() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
    const SchemeConfig c = build_config(o, DerivMode::ExactDerivative, Stencil::Centered);
    const TestFunction fn = parse_fn(o.fn);
    Sink sink(o.out, out);
    const ErrorReport r = run_eval_experiment(c, fn, &sink.get());
    err << "max_abs_error=" << format_real(r.max_abs_error)
        << " final_abs_error=" << format_real(r.final_abs_error)
        << " t_at_max=" << format_real(r.t_at_max) << '\n';
    return 0;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.h_list.empty()) throw ConfigError("sweep needs --h-list");
    const auto hs = parse_reals(o.h_list);
    Options first = o;
    first.h = hs.front();
    const SchemeConfig c = build_config(first, DerivMode::ExactDerivative, Stencil::Centered);
    const TestFunction fn = parse_fn(o.fn);
    ErrorMetric metric;
    if (o.metric == "final") {
        metric = ErrorMetric::Final;
    } else if (o.metric == "max") {
        metric = ErrorMetric::Max;
    } else {
        throw ConfigError("--metric expects final or max");
    }
    Sink sink(o.out, out);
    const ConvergenceTable t = run_sweep(c, hs, fn, metric, o.saturation, &sink.get());
    err << "slope=" << format_real(t.slope);
    if (t.saturation_level) err << " saturation_level=" << format_real(*t.saturation_level);
    err << '\n';
    return 0;
}

int cmd_timing(const Options& o, std::ostream& out, std::ostream&) {
    const TestFunction fn = parse_fn(o.fn);
    std::vector<std::pair<std::size_t, std::size_t>> jk;
    if (o.jk_list.empty()) {
        jk.emplace_back(o.J, o.K);
    } else {
        for (const auto& item : split(o.jk_list, ',')) {
            const auto parts = split(item, 'x');
            if (parts.size() != 2) throw ConfigError("--jk-list expects JxK,JxK,...");
            const double J = parse_real(parts[0]);
            const double K = parse_real(parts[1]);
            if (J < 1 || K < 1 || J != std::floor(J) || K != std::floor(K)) {
                throw ConfigError("J and K must be positive integers");
            }
            jk.emplace_back(static_cast<std::size_t>(J), static_cast<std::size_t>(K));
        }
    }
    const std::vector<double> hs = o.h_list.empty() ? std::vector<double>{o.h} : parse_reals(o.h_list);
    const std::vector<std::string> steppers =
        o.steppers.empty() ? std::vector<std::string>{o.stepper} : split(o.steppers, ',');

    std::vector<SchemeConfig> configs;
    for (const auto& [J, K] : jk) {
        for (double h : hs) {
            for (const auto& s : steppers) {
                Options v = o;
                v.J = J;
                v.K = K;
                v.h = h;
                v.stepper = s;
                configs.push_back(build_config(v, DerivMode::ExactDerivative, Stencil::Centered));
            }
        }
    }
    Sink sink(o.out, out);
    run_timing(configs, fn, o.reps, &sink.get());
    return 0;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.zener.empty() == o.manufactured.empty()) {
        throw ConfigError("solve needs exactly one of --zener or --manufactured");
    }
    Options v = o;
    const bool trap = parse_stepper(o.stepper) == StepperKind::Trapezoidal;
    const SchemeConfig c = build_config(v, trap ? DerivMode::Mod2 : DerivMode::Mod1, Stencil::Causal);
    check_solver_config(c);

    Rhs rhs;
    std::optional<TestFunction> exact;
    if (!o.zener.empty()) {
        const auto coef = parse_reals(o.zener);
        if (coef.size() != 4) throw ConfigError("--zener expects a0,a1,m,b1");
        ZenerParams p{coef[0], coef[1], coef[2], coef[3], c.order};
        SolveFor target;
        if (o.solve_for == "strain") {
            target = SolveFor::Strain;
        } else if (o.solve_for == "stress") {
            target = SolveFor::Stress;
        } else {
            throw ConfigError("--solve-for expects strain or stress");
        }
        const TestFunction forcing = parse_fn(o.fn);
        rhs = zener_rhs(p, Forcing{[forcing](double t) { return forcing.value(t); }, {}}, target, c);
    } else {
        const TestFunction target = parse_fn(o.manufactured);
        if (target.power.scale == 0.0) throw ConfigError("--manufactured expects pow:<p>");
        exact = target;
        const FractionalOrder order = c.order;
        // D y = g(t) + t^p - y with g the exact derivative of t^p
        rhs.f = [order, target](double t, double y) {
            return target.caputo(order, t) + target.value(t) - y;
        };
        rhs.dfdy = [](double, double) { return -1.0; };
    }

    const Trajectory tr = solve_fde(c, rhs, o.y0);
    Sink sink(o.out, out);
    std::ostream& os = sink.get();
    os << "t,y,residual,iterations";
    if (exact) os << ",exact,abs_error";
    os << '\n';
    double max_err = 0.0;
    for (std::size_t n = 0; n < tr.y.size(); ++n) {
        const double t = static_cast<double>(n) * c.h;
        os << format_real(t) << ',' << format_real(tr.y[n]) << ','
           << format_real(n == 0 ? 0.0 : tr.residuals[n - 1]) << ','
           << (n == 0 ? 0 : tr.iterations[n - 1]);
        if (exact) {
            const double e = std::abs(tr.y[n] - exact->value(t));
            max_err = std::max(max_err, e);
            os << ',' << format_real(exact->value(t)) << ',' << format_real(e);
        }
        os << '\n';
    }
    err << "final_y=" << format_real(tr.y.back());
    if (exact) {
        err << " final_abs_error=" << format_real(std::abs(tr.y.back() - exact->value(c.T)))
            << " max_abs_error=" << format_real(max_err);
    }
    err << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fast Caputo derivatives by an infinite state representation", "riss"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "error of one configuration on a test function");
    add_shared(eval, o);

    auto* sweep = app.add_subcommand("sweep", "errors over a list of step sizes, fitted order");
    add_shared(sweep, o);
    sweep->add_option("--h-list", o.h_list, "strictly decreasing step sizes h1,h2,...");
    sweep->add_option("--metric", o.metric, "final (error at T) or max (over (0,T])");
    sweep->add_option("--saturation", o.saturation, "saturation ratio");

    auto* timing = app.add_subcommand("timing", "wall-clock time of series evaluations");
    add_shared(timing, o);
    timing->add_option("--h-list", o.h_list, "step sizes");
    timing->add_option("--jk-list", o.jk_list, "JxK,JxK,...");
    timing->add_option("--steppers", o.steppers, "be,trap");
    timing->add_option("--reps", o.reps, "repetitions per configuration (>= 3)");

    auto* solve = app.add_subcommand("solve", "solve D^alpha y = f(t, y)");
    add_shared(solve, o);
    solve->add_option("--y0", o.y0, "initial value");
    solve->add_option("--zener", o.zener, "a0,a1,m,b1; forcing from --fn");
    solve->add_option("--solve-for", o.solve_for, "strain or stress");
    solve->add_option("--manufactured", o.manufactured, "pow:<p>; exact solution t^p");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(o, out, err);
        if (*sweep) return cmd_sweep(o, out, err);
        if (*timing) return cmd_timing(o, out, err);
        if (*solve) return cmd_solve(o, out, err);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

}  // namespace riss::cli
