#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "qtkit/errors.hpp"
#include "qtkit/io.hpp"
#include "qtkit/presets.hpp"
#include "qtkit/problem.hpp"
#include "qtkit/qt.hpp"
#include "test_support.hpp"

using namespace qtkit;
using testsupport::Rng;

namespace {

const VarContext X5 = VarContext::xs(5);

Poly P(const char* text, const VarContext& ctx) { return parse_poly(text, ctx); }

} // namespace

TEST_CASE("grammar examples") {
    const Poly b = P("x1*x3 - x2^2 + x4*x5", X5);
    CHECK(b == Poly::variable(X5, 0) * Poly::variable(X5, 2) -
                   Poly::variable(X5, 1).pow(2) + Poly::variable(X5, 3) * Poly::variable(X5, 4));

    CHECK(P("0", X5).is_zero());

    const Poly mixed = P("1/2*x1 + i*x2", X5);
    CHECK(mixed == Poly::variable(X5, 0).scaled(Scalar::rational(1, 2)) +
                       Poly::variable(X5, 1).scaled(Scalar::i()));

    CHECK(P("(1-2*i)*x1^3", X5) ==
          Poly::variable(X5, 0).pow(3).scaled(Scalar(1) - Scalar::i() * Scalar(2)));
    CHECK(P("2^3", X5) == Poly::constant(X5, Scalar(8)));
    CHECK(P("x1^0", X5) == Poly::one(X5));
    CHECK(P("- x1 + x2", X5) == P("x2 - x1", X5)); // leading sign
}

TEST_CASE("parse errors carry line and column") {
    auto expect_error = [&](const char* text, std::size_t line, std::size_t col) {
        try {
            parse_poly(text, X5);
            FAIL_CHECK("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(e.line() == line);
            CHECK(e.column() == col);
        }
    };
    expect_error("x1 + + x2", 1, 6);
    expect_error("x1 x2", 1, 4);      // implicit multiplication is not allowed
    expect_error("x7 + x1", 1, 1);    // index exceeds the dimension
    expect_error("1/0", 1, 3);
    expect_error("x1 +\n  * x2", 2, 3);
    expect_error("", 1, 1);
}

TEST_CASE("format/parse round-trip on the corpus") {
    for (const char* name : {"a1", "a2", "b"}) {
        const PolyMap m = *preset_map(name);
        for (const auto& c : m.components())
            CHECK(parse_poly(format_poly(c), X5) == c);
    }
    const Poly h = *preset_poly("perazzo");
    CHECK(parse_poly(format_poly(h), X5) == h);

    Rng rng(0xBADA55);
    const VarContext X3 = VarContext::xs(3);
    for (int it = 0; it < 60; ++it) {
        const Poly p = testsupport::random_poly(rng, X3, 5, 3);
        CAPTURE(format_poly(p));
        CHECK(parse_poly(format_poly(p), X3) == p);
    }
    // mixed complex coefficients
    const Poly z = Poly::variable(X5, 0).scaled(Scalar(mpq_class(-1, 2), mpq_class(3)));
    CHECK(parse_poly(format_poly(z), X5) == z);
}

TEST_CASE("problem files parse and execute") {
    const std::string text = R"(
# the first worked example
dim 5
def b = x1*x3 - x2^2 + x4*x5
map H = [x4^2, x4*x5, x1*x5 - x2*x4, 0, 0]
map K = [x5^5, b*x5^3, 0, 0, 0]   # parse error would be here if names were allowed
task qt-check H
task linear-invariants H
task relations H dmax=2
)";
    // 'map' components may not reference defs; expect a parse error pointing
    // at the unknown identifier.
    CHECK_THROWS_AS(parse_problem(text), parse_error);

    const std::string good = R"(
dim 5
def b = x1*x3 - x2^2 + x4*x5
map H = [x4^2, x4*x5, x1*x5 - x2*x4, 0, 0]
task qt-check H
task invariants H b
task relations H dmax=2
)";
    const ProblemFile file = parse_problem(good);
    CHECK(file.dim == 5);
    CHECK(file.defs.count("b") == 1);
    CHECK(file.maps.count("H") == 1);
    REQUIRE(file.tasks.size() == 3);

    RunOptions options;
    options.include_timing = false;
    const RunResult result = run_problem(file, options);
    CHECK(result.exit_code == 1); // b is not an invariant of H -> one fail
    CHECK(result.report["tasks"][0]["verdict"] == "pass");
    CHECK(result.report["tasks"][1]["verdict"] == "fail");
    CHECK(result.report["tasks"][2]["verdict"] == "pass");
}

TEST_CASE("empty task list gives an empty passing report") {
    const ProblemFile file = parse_problem("dim 2\n");
    const RunResult result = run_problem(file, RunOptions{});
    CHECK(result.exit_code == 0);
    CHECK(result.report["verdict"] == "pass");
    CHECK(result.report["tasks"].empty());
}

TEST_CASE("multi-line map literals") {
    const std::string text = R"(
dim 5
map B = [x5^5,
         (x1*x3 - x2^2 + x4*x5)*x5^3,
         (x1*x3 - x2^2 + x4*x5)^2*x5,
         -(x1*x3 - x2^2 + x4*x5)^2*x1 + 2*(x1*x3 - x2^2 + x4*x5)*x2*x5^2 - x3*x5^4,
         0]
task qt-check B
)";
    const ProblemFile file = parse_problem(text);
    CHECK(file.maps.at("B") == *preset_map("b"));
    const RunResult result = run_problem(file, RunOptions{});
    CHECK(result.exit_code == 0);
}

TEST_CASE("exit codes for error classes") {
    // precondition failure: homogeneous checks on a non-homogeneous map
    {
        const ProblemFile file = parse_problem(
            "dim 2\nmap H = [x2 + x2^2, 0]\ntask homogeneous-checks H\n");
        const RunResult result = run_problem(file, RunOptions{});
        CHECK(result.exit_code == 3);
        CHECK(result.report["tasks"][0]["verdict"] == "error");
    }
    // unknown names are precondition failures too
    {
        const ProblemFile file = parse_problem("dim 2\ntask qt-check nosuch\n");
        CHECK(run_problem(file, RunOptions{}).exit_code == 3);
    }
    // file-level parse errors throw
    CHECK_THROWS_AS(parse_problem("dim 2\nmap H = [x1, x9]\ntask qt-check H\n"),
                    parse_error);
    CHECK_THROWS_AS(parse_problem("map H = [x1]\n"), parse_error); // dim must come first
}

TEST_CASE("problem-file parse errors are anchored to file positions") {
    try {
        parse_problem("dim 2\nmap H = [x1 +* x2, 0]\ntask qt-check H\n");
        FAIL_CHECK("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 14);
    }
    try {
        parse_problem("dim 5\nmap B = [x5^5,\n  (x1*x3 @ x2), 0, 0, 0]\ntask t B\n");
        FAIL_CHECK("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 10);
    }
    try {
        parse_problem("dim 2\ndef f = x1 ^ q\n");
        FAIL_CHECK("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 14);
    }
}

TEST_CASE("reports are deterministic modulo timing") {
    const std::string text =
        "dim 5\nmap H = [x4^2, x4*x5, x1*x5 - x2*x4, 0, 0]\n"
        "task qt-equivalences H\ntask relations H dmax=2\ntask degree-report H\n";
    RunOptions options;
    options.include_timing = false;
    const std::string once = run_problem(parse_problem(text), options).report.dump();
    const std::string twice = run_problem(parse_problem(text), options).report.dump();
    CHECK(once == twice);
}

TEST_CASE("report witnesses re-verify from the report alone") {
    const ProblemFile file = parse_problem(
        "dim 5\nmap H = [x4^2, x4*x5, x1*x5 - x2*x4, 0, 0]\ntask qt-check H\n");
    const RunResult result = run_problem(file, RunOptions{});
    const auto& task = result.report["tasks"][0];
    REQUIRE(task["verdict"] == "pass");
    std::vector<Poly> comps;
    for (const auto& s : task["witnesses"]["map"])
        comps.push_back(parse_poly(s.get<std::string>(), X5));
    const PolyMap reparsed(X5, comps);
    CHECK(is_quasi_translation(reparsed));
    for (const auto& s : task["witnesses"]["jacobian_times_map"])
        CHECK(parse_poly(s.get<std::string>(), X5).is_zero());
}

TEST_CASE("y variables are available to defs for witness polynomials") {
    const std::string text = R"(
dim 5
def b = x1*x3 - x2^2 + x4*x5
def g = 1
def pp = x5
def h1 = y1^5
def h2 = y2*y1^3
def h3 = y2^2*y1
def h4 = 0
map B = [x5^5,
         (x1*x3 - x2^2 + x4*x5)*x5^3,
         (x1*x3 - x2^2 + x4*x5)^2*x5,
         -(x1*x3 - x2^2 + x4*x5)^2*x1 + 2*(x1*x3 - x2^2 + x4*x5)*x2*x5^2 - x3*x5^4,
         0]
task fallb-verify B g pp b h1 h2 h3 h4 dist=4
)";
    const RunResult result = run_problem(parse_problem(text), RunOptions{});
    CHECK(result.exit_code == 0);
    CHECK(result.report["tasks"][0]["verdict"] == "pass");
}

TEST_CASE("the parser never crashes on garbage input") {
    Rng rng(0xF422);
    const char alphabet[] = "xy0123456789 +-*/^()i_,.";
    for (int it = 0; it < 300; ++it) {
        std::string text;
        const int len = std::uniform_int_distribution<int>(0, 24)(rng);
        for (int k = 0; k < len; ++k)
            text += alphabet[std::uniform_int_distribution<std::size_t>(
                0, sizeof(alphabet) - 2)(rng)];
        try {
            const Poly p = parse_poly(text, X5);
            // accepted input must round-trip
            CHECK(parse_poly(format_poly(p), X5) == p);
        } catch (const parse_error&) {
            // rejected with a position, never a crash
        }
    }
}

TEST_CASE("vector and matrix task arguments are validated") {
    // non-constant vector argument for gn-plane
    {
        const ProblemFile file = parse_problem(
            "dim 3\nmap H = [x2^2, 0, 0]\nmap u = [x1, 0, 0]\nmap v = [0, 1, 0]\n"
            "task gn-plane H u v\n");
        CHECK(run_problem(file, RunOptions{}).exit_code == 3);
    }
    // matrix argument with a constant part
    {
        const ProblemFile file = parse_problem(
            "dim 2\nmap H = [x2^2, 0]\nmap T = [x1 + 1, x2]\ntask conjugate H T\n");
        CHECK(run_problem(file, RunOptions{}).exit_code == 3);
    }
    // matrix argument of degree two
    {
        const ProblemFile file = parse_problem(
            "dim 2\nmap H = [x2^2, 0]\nmap T = [x1^2, x2]\ntask conjugate H T\n");
        CHECK(run_problem(file, RunOptions{}).exit_code == 3);
    }
}

TEST_CASE("conjugation criterion through the task engine") {
    const std::string text = R"(
dim 2
map H1 = [x2^2, 0]
map H2 = [0, x1]
map F = [x1 + x2^2, x2]
map G = [x1 - x2^2, x2]
task conjugation-criterion H1 F G
task conjugation-criterion H2 F G
)";
    const RunResult result = run_problem(parse_problem(text), RunOptions{});
    CHECK(result.report["tasks"][0]["verdict"] == "pass");
    CHECK(result.report["tasks"][1]["verdict"] == "fail");
    CHECK(result.exit_code == 1);
}

TEST_CASE("hessian pipeline through the task engine") {
    const std::string text =
        "dim 5\ndef h = x1*x4^2 + x2*x4*x5 + x3*x5^2\ntask hessian-pipeline h dmax=2\n";
    const RunResult result = run_problem(parse_problem(text), RunOptions{});
    CHECK(result.exit_code == 0);
    const auto& task = result.report["tasks"][0];
    CHECK(task["verdict"] == "pass");
    CHECK(task["witnesses"]["relation"]["poly"] == "y1*y3 - y2^2");
    CHECK(task["witnesses"]["map"][0] == "x5^2");
    CHECK(task["bounds"]["dmax"] == 2);
}
