#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = riss::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("eval writes csv and a summary") {
    const Result r = run({"eval", "--alpha", "0.4", "--fn", "pow:1.6", "--t-end", "3", "--h", "0.1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,approx,exact,abs_error\n", 0) == 0);
    CHECK(lines(r.out) == 31);
    CHECK(r.err.find("max_abs_error=") != std::string::npos);
}

TEST_CASE("eval of a constant is exact") {
    const Result r = run({"eval", "--fn", "const:3", "--stepper", "trap", "--h", "0.1"});
    CHECK(r.code == 0);
    CHECK(r.err.find("max_abs_error=0 ") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2") {
    CHECK(run({"eval", "--alpha", "1.5"}).code == 2);
    CHECK(run({"eval", "--h", "0.7"}).code == 2);
    CHECK(run({"eval", "--quad", "simpson"}).code == 2);
    CHECK(run({"eval", "--fn", "exp:1"}).code == 2);
    CHECK(run({"eval", "--eta-exps", "5,-5"}).code == 2);
    CHECK(run({"eval", "--bogus"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"sweep", "--h-list", "0.1,0.01"}).code == 2);
    CHECK(run({"solve", "--zener", "1,0,1,1", "--solve-for", "stress", "--h", "0.1"}).code == 2);
    CHECK(run({"solve", "--stepper", "be", "--deriv", "mod2", "--manufactured", "pow:1.6"}).code == 2);
    CHECK(run({"eval", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}

TEST_CASE("nonexistent derivative exits with 3") {
    const Result r = run({"eval", "--fn", "pow:0.6", "--stepper", "trap", "--deriv", "exact"});
    CHECK(r.code == 3);
    CHECK(r.err.find("mod1") != std::string::npos);
    CHECK(run({"eval", "--fn", "pow:0.6", "--stepper", "trap", "--deriv", "mod2"}).code == 0);
}

TEST_CASE("help exits with 0") {
    const Result r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("sweep reports a slope") {
    const Result r = run({"sweep", "--h-list", "0.1,0.03,0.01", "--stepper", "be"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("h,max_abs_error,final_abs_error,saturated\n", 0) == 0);
    CHECK(lines(r.out) == 4);
    CHECK(r.err.find("slope=") != std::string::npos);
    CHECK(run({"sweep", "--h-list", "0.1,0.03,0.01", "--metric", "median"}).code == 2);
}

TEST_CASE("timing rows") {
    const Result r = run({"timing", "--jk-list", "5x4,4x5", "--h-list", "0.1", "--steppers", "be,trap", "--reps", "3"});
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 5);
    CHECK(r.out.find("\n5,4,0.10000000000000001,be,gauss,") != std::string::npos);
    CHECK(run({"timing", "--jk-list", "5by4"}).code == 2);
}

TEST_CASE("solve manufactured and zener problems") {
    const Result m = run({"solve", "--manufactured", "pow:1.6", "--stepper", "trap", "--h", "0.01"});
    CHECK(m.code == 0);
    CHECK(m.out.rfind("t,y,residual,iterations,exact,abs_error\n", 0) == 0);
    CHECK(lines(m.out) == 302);
    CHECK(m.err.find("max_abs_error=") != std::string::npos);

    const Result z = run({"solve", "--zener", "1,0.5,1,1", "--fn", "const:1", "--h", "0.1", "--t-end", "10"});
    CHECK(z.code == 0);
    CHECK(z.out.rfind("t,y,residual,iterations\n", 0) == 0);

    CHECK(run({"solve", "--h", "0.1"}).code == 2);
    CHECK(run({"solve", "--manufactured", "pow:1.6", "--zener", "1,1,1,1"}).code == 2);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::string> args{"eval", "--quad", "cc", "--stepper", "trap", "--h", "0.05"};
    CHECK(run(args).out == run(args).out);
}
