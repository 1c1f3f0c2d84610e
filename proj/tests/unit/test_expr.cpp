#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include <hadamard_cq/expr.hpp>
#include <hadamard_cq/taylor_jet.hpp>

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
double ev(const std::string& s, double x = 0.0, double lt = 0.0) {
    return hcq::eval(hcq::parse(s), x, lt);
}
} // namespace

TEST_CASE("arithmetic and precedence", "[expr][eval]") {
    REQUIRE(ev("1+2*3") == 7.0);
    REQUIRE(ev("(1+2)*3") == 9.0);
    REQUIRE(ev("2^3^2") == 512.0);          // right associative
    REQUIRE(ev("(2^3)^2") == 64.0);
    REQUIRE(ev("-2^2") == -4.0);            // unary minus binds looser than ^
    REQUIRE(ev("2^-3") == 0.125);           // and tighter as an exponent
    REQUIRE(ev("2+3*4^2") == 50.0);
    REQUIRE(ev("-3-4") == -7.0);
    REQUIRE(ev("2--3") == 5.0);
    REQUIRE(ev("12/4/3") == 1.0);           // left associative
    REQUIRE_THAT(ev("pi"), WithinRel(3.14159265358979323846, 1e-16));
    REQUIRE(ev("1e2+1.5") == 101.5);
    REQUIRE(ev("2.5e-1") == 0.25);
}

TEST_CASE("variables and functions", "[expr][eval]") {
    REQUIRE_THAT(ev("sin(x)", 3.14159265358979323846 / 2.0), WithinRel(1.0, 1e-15));
    REQUIRE_THAT(ev("cos(x)*exp(lt)", 0.0, 1.0), WithinRel(std::exp(1.0), 1e-15));
    REQUIRE_THAT(ev("gamma(1.5)"), WithinRel(0.88622692545275801365, 1e-15));
    REQUIRE(ev("pow(lt,0.5)", 0.0, 4.0) == 2.0);
    REQUIRE(ev("sqrt(lt)", 0.0, 9.0) == 3.0);
    REQUIRE_THAT(ev("log(x)", std::exp(2.0)), WithinRel(2.0, 1e-15));
    REQUIRE_THAT(ev("(1+gamma(1.5))*sin(x)", 3.14159265358979323846 / 2.0),
                 WithinRel(1.88622692545275801, 1e-15));
}

TEST_CASE("evaluation failures name the offending subexpression", "[expr][eval]") {
    REQUIRE_THROWS_AS(ev("1/0"), hcq::EvalError);
    REQUIRE_THROWS_AS(ev("log(0)"), hcq::EvalError);
    REQUIRE_THROWS_AS(ev("log(x-1)", 0.5), hcq::EvalError);
    REQUIRE_THROWS_AS(ev("sqrt(-1)"), hcq::EvalError);
    REQUIRE_THROWS_AS(ev("gamma(0)"), hcq::EvalError);
    REQUIRE_THROWS_AS(ev("pow(0,-1)"), hcq::EvalError);
    REQUIRE_THROWS_AS(ev("(0-2)^0.5"), hcq::EvalError);
    REQUIRE_THROWS_WITH(ev("1/(x-2)", 2.0), ContainsSubstring("x-2"));
}

TEST_CASE("parse errors carry a byte offset", "[expr][parse]") {
    auto offset_of = [](const std::string& src) {
        try {
            hcq::parse(src);
        } catch (const hcq::ParseError& e) {
            REQUIRE_THAT(e.what(), ContainsSubstring("syntax error at byte"));
            return e.offset;
        }
        FAIL("expected a ParseError for: " << src);
        return static_cast<std::size_t>(0);
    };
    REQUIRE(offset_of("1+") == 2);
    REQUIRE(offset_of("2 @ 3") == 2);
    REQUIRE(offset_of("(1+2") == 4);
    REQUIRE(offset_of("sin x") == 4);
    REQUIRE(offset_of("foo(3)") == 0);
    REQUIRE(offset_of("pow(1)") == 5);
    REQUIRE(offset_of("") == 0);
    REQUIRE(offset_of("1 2") == 2);
}

TEST_CASE("pretty printing round-trips", "[expr][print]") {
    const std::vector<std::string> sources = {
        "x",
        "lt",
        "pi",
        "-x",
        "1+2*3",
        "(1+2)*3",
        "2^3^2",
        "(2^3)^2",
        "-2^2",
        "2^-3",
        "2-(3-4)",
        "2-3-4",
        "12/(4/3)",
        "x*-3",
        "-(x+1)*lt",
        "sin(cos(exp(log(sqrt(x+1)))))",
        "pow(x,lt+1)",
        "gamma(x+2.5)",
        "(1+pow(lt,0.5))*sin(x)",
        "x/lt^2",
        "1e2+2.5e-1*x",
        "-(-x)",
        "x^-(lt+1)",
    };
    for (const std::string& src : sources) {
        INFO("source: " << src);
        hcq::Expression e1 = hcq::parse(src);
        std::string p1 = hcq::pretty_print(e1);
        hcq::Expression e2 = hcq::parse(p1);
        std::string p2 = hcq::pretty_print(e2);
        REQUIRE(p1 == p2); // printing is a fixed point of parse-print
        // and the reparsed tree evaluates identically
        double x = 0.7, lt = 1.3;
        double v1 = hcq::eval(e1, x, lt), v2 = hcq::eval(e2, x, lt);
        REQUIRE_THAT(v2, WithinRel(v1, 1e-15));
    }
}

TEST_CASE("Taylor jets of elementary series", "[expr][jet]") {
    hcq::TaylorJet j1 = hcq::taylor_in_lt(hcq::parse("exp(lt)"), 0.0, 3);
    REQUIRE(j1.coeffs.size() == 4);
    REQUIRE_THAT(j1.coeffs[0], WithinRel(1.0, 1e-15));
    REQUIRE_THAT(j1.coeffs[1], WithinRel(1.0, 1e-15));
    REQUIRE_THAT(j1.coeffs[2], WithinRel(0.5, 1e-15));
    REQUIRE_THAT(j1.coeffs[3], WithinRel(1.0 / 6.0, 1e-15));

    hcq::TaylorJet j2 = hcq::taylor_in_lt(hcq::parse("lt^2"), 0.0, 4);
    REQUIRE(j2.coeffs == std::vector<double>{0.0, 0.0, 1.0, 0.0, 0.0});

    hcq::TaylorJet j3 = hcq::taylor_in_lt(hcq::parse("sin(lt)"), 0.0, 5);
    REQUIRE_THAT(j3.coeffs[1], WithinRel(1.0, 1e-15));
    REQUIRE_THAT(j3.coeffs[3], WithinRel(-1.0 / 6.0, 1e-14));
    REQUIRE_THAT(j3.coeffs[5], WithinRel(1.0 / 120.0, 1e-13));
    REQUIRE_THAT(j3.coeffs[0], WithinAbs(0.0, 1e-16));
    REQUIRE_THAT(j3.coeffs[2], WithinAbs(0.0, 1e-16));

    // binomial series of (1+lt)^(1/2)
    hcq::TaylorJet j4 = hcq::taylor_in_lt(hcq::parse("pow(1+lt,0.5)"), 0.0, 3);
    REQUIRE_THAT(j4.coeffs[0], WithinRel(1.0, 1e-15));
    REQUIRE_THAT(j4.coeffs[1], WithinRel(0.5, 1e-15));
    REQUIRE_THAT(j4.coeffs[2], WithinRel(-0.125, 1e-14));
    REQUIRE_THAT(j4.coeffs[3], WithinRel(0.0625, 1e-14));

    hcq::TaylorJet j5 = hcq::taylor_in_lt(hcq::parse("log(1+lt)"), 0.0, 3);
    REQUIRE_THAT(j5.coeffs[0], WithinAbs(0.0, 1e-16));
    REQUIRE_THAT(j5.coeffs[1], WithinRel(1.0, 1e-15));
    REQUIRE_THAT(j5.coeffs[2], WithinRel(-0.5, 1e-14));
    REQUIRE_THAT(j5.coeffs[3], WithinRel(1.0 / 3.0, 1e-14));

    // x^lt = exp(lt log x)
    hcq::TaylorJet j6 = hcq::taylor_in_lt(hcq::parse("x^lt"), 2.0, 2);
    REQUIRE_THAT(j6.coeffs[0], WithinRel(1.0, 1e-15));
    REQUIRE_THAT(j6.coeffs[1], WithinRel(std::log(2.0), 1e-15));
    REQUIRE_THAT(j6.coeffs[2], WithinRel(0.5 * std::log(2.0) * std::log(2.0), 1e-14));
}

TEST_CASE("jet order zero equals pointwise evaluation at lt = 0", "[expr][jet]") {
    for (const char* src : {"exp(sin(lt))*cos(x)", "(1+lt)^3", "gamma(2.5)+x*lt",
                            "pow(x,2)+lt/(1+lt)"}) {
        hcq::Expression e = hcq::parse(src);
        double x = 1.4;
        hcq::TaylorJet j = hcq::taylor_in_lt(e, x, 0);
        INFO("source: " << src);
        REQUIRE_THAT(j.coeffs[0], WithinRel(hcq::eval(e, x, 0.0), 1e-15));
    }
}

TEST_CASE("jets agree with finite differences", "[expr][jet]") {
    hcq::Expression e = hcq::parse("exp(sin(lt))*pow(1+lt,2.5)/(2+lt)");
    const double x = 0.0;
    const int J = 2;
    hcq::TaylorJet jet = hcq::taylor_in_lt(e, x, J);
    // residual after removing the order-2 jet must shrink like h^3
    auto residual = [&](double h) {
        double truth = hcq::eval(e, x, h);
        double model = jet.coeffs[0] + jet.coeffs[1] * h + jet.coeffs[2] * h * h;
        return std::fabs(truth - model);
    };
    double r1 = residual(1e-1), r2 = residual(5e-2), r3 = residual(2.5e-2);
    REQUIRE(r2 / r1 > 1.0 / 16.0);
    REQUIRE(r2 / r1 < 1.0 / 4.0);
    REQUIRE(r3 / r2 > 1.0 / 16.0);
    REQUIRE(r3 / r2 < 1.0 / 4.0);
}

TEST_CASE("non-analytic expressions are rejected in Taylor mode", "[expr][jet]") {
    REQUIRE_THROWS_AS(hcq::taylor_in_lt(hcq::parse("sqrt(lt)"), 0.0, 2),
                      hcq::NonAnalyticError);
    REQUIRE_THROWS_AS(hcq::taylor_in_lt(hcq::parse("log(lt)"), 0.0, 2),
                      hcq::NonAnalyticError);
    REQUIRE_THROWS_AS(hcq::taylor_in_lt(hcq::parse("1/lt"), 0.0, 2), hcq::NonAnalyticError);
    REQUIRE_THROWS_AS(hcq::taylor_in_lt(hcq::parse("pow(lt,0.5)"), 0.0, 2),
                      hcq::NonAnalyticError);
    REQUIRE_THROWS_AS(hcq::taylor_in_lt(hcq::parse("gamma(lt+1)"), 0.0, 2),
                      hcq::NonAnalyticError);
    // but constants in lt are fine even when rough in x
    REQUIRE_NOTHROW(hcq::taylor_in_lt(hcq::parse("sqrt(x)+lt"), 2.0, 2));
    REQUIRE_NOTHROW(hcq::taylor_in_lt(hcq::parse("gamma(x)+lt"), 2.5, 2));
}

TEST_CASE("jet request validates order", "[expr][jet]") {
    REQUIRE_THROWS_AS(hcq::taylor_in_lt(hcq::parse("lt"), 0.0, -1), std::domain_error);
}
