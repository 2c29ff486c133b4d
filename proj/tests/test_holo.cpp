#include <doctest.h>

#include <string>
#include <vector>

#include "skgeo/holo.hpp"
#include "testutil.hpp"

using namespace skgeo;
using holo::Complex;
using holo::Expr;
using holo::ExprPtr;

namespace {

const std::vector<std::string> kXY = {"X0", "X1"};

Complex ev(const ExprPtr& e, std::initializer_list<Complex> pt) {
    std::vector<Complex> p(pt);
    return holo::eval(e, p);
}

ExprPtr parse_xy(const std::string& text) { return holo::parse(text, kXY); }

}  // namespace

TEST_CASE("parse builds the expected node kinds") {
    auto prod = parse_xy("-i*X0*X1");
    // ((-i)*X0)*X1 after the unary sign folds into the constant
    CHECK(prod->kind() == Expr::Kind::Product);
    CHECK(prod->rhs()->kind() == Expr::Kind::Variable);

    auto var = parse_xy("X0");
    CHECK(var->kind() == Expr::Kind::Variable);
    CHECK(var->var() == 0);

    auto quot = parse_xy("X1^3/X0");
    CHECK(quot->kind() == Expr::Kind::Quotient);
    CHECK(quot->lhs()->kind() == Expr::Kind::Power);
    CHECK(quot->lhs()->exponent() == 3);
}

TEST_CASE("evaluation matches direct complex arithmetic") {
    auto f = parse_xy("-i*X0*X1");
    CHECK(ev(f, {Complex(1, 0), Complex(2, 0)}) == Complex(0, -2));

    auto x0 = parse_xy("X0");
    CHECK(ev(x0, {Complex(7, 1), Complex(0, 0)}) == Complex(7, 1));

    auto q = parse_xy("X1^3/X0");
    const Complex z1(1, 1);
    CHECK(std::abs(ev(q, {Complex(2, 0), z1}) - z1 * z1 * z1 / Complex(2, 0)) == 0.0);
    CHECK(ev(q, {Complex(2, 0), z1}) == Complex(-1, 1));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_xy("X0 + * X1"), ParseError);
    try {
        parse_xy("X0*Y1");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
        CHECK(std::string(e.what()).find("Y1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_xy("(X0"), ParseError);
    CHECK_THROWS_AS(parse_xy("X0^X1"), ParseError);
    CHECK_THROWS_AS(holo::parse("x", std::vector<std::string>{"i"}), ParseError);
    CHECK_THROWS_AS(holo::parse("x", std::vector<std::string>{"x", "x"}), ParseError);
}

TEST_CASE("division by zero reports the subexpression") {
    auto q = parse_xy("X1/X0");
    try {
        ev(q, {Complex(0, 0), Complex(1, 0)});
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.subexpression() == "$0");
    }
    // negative powers are quotients too
    auto p = parse_xy("X0^-2");
    CHECK_THROWS_AS(ev(p, {Complex(0, 0), Complex(0, 0)}), EvalError);
    CHECK(ev(p, {Complex(2, 0), Complex(0, 0)}) == Complex(0.25, 0));
}

TEST_CASE("dimension errors") {
    auto f = parse_xy("X0*X1");
    std::vector<Complex> short_point = {Complex(1, 0)};
    CHECK_THROWS_AS(holo::eval(f, short_point), DimensionError);
}

TEST_CASE("differentiation of the bilinear prepotential") {
    auto f = parse_xy("-i*X0*X1");
    auto f0 = holo::diff(f, 0);
    auto expected = parse_xy("-i*X1");
    testutil::Rng rng(7);
    for (int k = 0; k < 20; ++k) {
        std::vector<Complex> p = {rng.box(2.0), rng.box(2.0)};
        CHECK(std::abs(holo::eval(f0, p) - holo::eval(expected, p)) < 1e-15);
    }

    CHECK(holo::diff(parse_xy("X0"), 1)->is_zero());

    auto f01 = holo::diff(holo::diff(f, 0), 1);
    REQUIRE(f01->kind() == Expr::Kind::Constant);
    CHECK(f01->value() == Complex(0, -1));
}

namespace {

// Expressions exercising every rule; denominators stay away from zero on the
// sample box below.
const std::vector<std::string> kSamples = {
    "X0^2*X1 + (3-2i)*X0 - X1^3",
    "X0*X1/(X0*X0 + 4)",
    "(X0 - X1)^4/(X1 + 5)",
    "1/(X0 + 3) + X1^2*(X0 + 1i)",
    "-X0^3/(X1 - 4)^2",
};

std::vector<Complex> sample_point(testutil::Rng& rng) {
    return {rng.box(1.0), rng.box(1.0)};
}

}  // namespace

TEST_CASE("derivatives agree with central finite differences") {
    testutil::Rng rng(11);
    for (const auto& text : kSamples) {
        auto e = parse_xy(text);
        std::vector<ExprPtr> grads = {holo::diff(e, 0), holo::diff(e, 1)};
        for (int trial = 0; trial < 100; ++trial) {
            auto p = sample_point(rng);
            const double h = testutil::fd_step(p);
            for (int k = 0; k < 2; ++k) {
                auto f = [&](const std::vector<Complex>& q) { return holo::eval(e, q); };
                const Complex numeric = testutil::holomorphic_fd(f, p, k, h);
                const Complex symbolic = holo::eval(grads[static_cast<std::size_t>(k)], p);
                const double scale = std::max(1.0, std::abs(symbolic));
                CHECK(std::abs(numeric - symbolic) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("derivative linearity and product rule hold exactly") {
    testutil::Rng rng(13);
    auto a = parse_xy(kSamples[0]);
    auto b = parse_xy(kSamples[3]);
    auto sum_rule = holo::diff(a + b, 0);
    auto split = holo::diff(a, 0) + holo::diff(b, 0);
    auto prod_rule = holo::diff(a * b, 1);
    auto leibniz = holo::diff(a, 1) * b + a * holo::diff(b, 1);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = sample_point(rng);
        CHECK(std::abs(holo::eval(sum_rule, p) - holo::eval(split, p)) < 1e-12);
        const double scale = std::max(1.0, std::abs(holo::eval(prod_rule, p)));
        CHECK(std::abs(holo::eval(prod_rule, p) - holo::eval(leibniz, p)) / scale < 1e-12);
    }
}

TEST_CASE("mixed second partials commute") {
    testutil::Rng rng(17);
    for (const auto& text : kSamples) {
        auto e = parse_xy(text);
        auto d01 = holo::diff(holo::diff(e, 0), 1);
        auto d10 = holo::diff(holo::diff(e, 1), 0);
        for (int trial = 0; trial < 25; ++trial) {
            auto p = sample_point(rng);
            const double scale = std::max(1.0, std::abs(holo::eval(d01, p)));
            CHECK(std::abs(holo::eval(d01, p) - holo::eval(d10, p)) / scale < 1e-12);
        }
    }
}

namespace {

ExprPtr random_tree(testutil::Rng& rng, int depth) {
    if (depth == 0) {
        switch (rng.index(3)) {
            case 0: return Expr::variable(rng.index(2));
            case 1: return Expr::constant(rng.box(2.0));
            default: return Expr::constant(Complex(rng.uniform(-3, 3), 0));
        }
    }
    auto l = random_tree(rng, depth - 1);
    auto r = random_tree(rng, depth - 1);
    switch (rng.index(6)) {
        case 0: return l + r;
        case 1: return l - r;
        case 2: return l * r;
        case 3: return l / r;
        case 4: return Expr::power(l, rng.index(5) - 1);
        default: return -l;
    }
}

}  // namespace

TEST_CASE("print then reparse evaluates bit-identically") {
    testutil::Rng rng(19);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        auto e = random_tree(rng, 4);
        const std::string text = holo::to_string(e, kXY);
        ExprPtr back;
        REQUIRE_NOTHROW(back = holo::parse(text, kXY));
        for (int k = 0; k < 5; ++k) {
            std::vector<Complex> p = {rng.box(2.0), rng.box(2.0)};
            Complex lhs, rhs;
            try {
                lhs = holo::eval(e, p);
                rhs = holo::eval(back, p);
            } catch (const EvalError&) {
                continue;  // denominator vanished at this point
            }
            CHECK(lhs.real() == rhs.real());
            CHECK(lhs.imag() == rhs.imag());
            ++checked;
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("substitution composes expressions") {
    auto f = parse_xy("-i*X0*X1");
    std::vector<std::string> zvar = {"z"};
    std::vector<ExprPtr> repl = {Expr::one(), holo::parse("z", zvar)};
    auto composed = holo::substitute(f, repl);
    CHECK(composed->arity() == 1);
    std::vector<Complex> p = {Complex(2, 1)};
    CHECK(holo::eval(composed, p) == Complex(0, -1) * Complex(2, 1));
}

TEST_CASE("coefficient conjugation with variable remap") {
    auto f = parse_xy("(1+2i)*X0 + X1^2");
    std::vector<int> map = {2, 3};
    auto g = holo::conjugated(f, map);
    CHECK(g->arity() == 4);
    const Complex z0(0.3, -0.7), z1(-1.2, 0.4);
    std::vector<Complex> p = {Complex(0, 0), Complex(0, 0), std::conj(z0), std::conj(z1)};
    std::vector<Complex> q = {z0, z1};
    CHECK(std::abs(holo::eval(g, p) - std::conj(holo::eval(f, q))) < 1e-15);
}

TEST_CASE("complex literal helpers") {
    CHECK(holo::parse_complex("1.5-0.3i") == Complex(1.5, -0.3));
    CHECK(holo::parse_complex("2i") == Complex(0, 2));
    CHECK(holo::parse_complex("-4") == Complex(-4, 0));
    CHECK(holo::format_complex(Complex(1.5, -0.3)) == "1.5-0.29999999999999999i");
    CHECK(holo::format_complex(Complex(1.5, -0.3), 6) == "1.5-0.3i");
    CHECK(holo::format_complex(Complex(0, 1)) == "0+1i");
    const Complex ugly(0.1 + 0.2, -1.0 / 3.0);
    CHECK(holo::parse_complex(holo::format_complex(ugly)) == ugly);
}
