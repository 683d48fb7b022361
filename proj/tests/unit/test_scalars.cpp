#include "linfty/errors.hpp"
#include "linfty/ratfun.hpp"
#include "linfty/scalar_parse.hpp"

#include <doctest.h>

#include <random>

using namespace linfty;

namespace {

RatFun rf(const std::string& s, const ParamList& p) { return parse_ratfun(s, p); }

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    return Rational(num(rng), den(rng));
}

RatFun random_ratfun(std::mt19937& rng, const ParamList& p, bool allow_zero = true) {
    std::uniform_int_distribution<int> nterms(1, 3), exp(0, 2), var(0, static_cast<int>(p->size()) - 1);
    auto poly = [&]() {
        ParamPoly out(p);
        int n = nterms(rng);
        for (int i = 0; i < n; ++i) {
            Exponents e(p->size(), 0);
            e[static_cast<std::size_t>(var(rng))] = exp(rng);
            out += ParamPoly::monomial(p, e, random_rational(rng));
        }
        return out;
    };
    for (;;) {
        ParamPoly n = poly();
        ParamPoly d = poly();
        if (d.is_zero()) continue;
        if (!allow_zero && n.is_zero()) continue;
        return RatFun(n, d);
    }
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(-4, 6) == Rational(-2, 3));
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK_THROWS_AS(Rational(0).inverse(), DivisionByZero);
    CHECK(binomial(5, 2) == Rational(10));
    CHECK(factorial(4) == Rational(24));
}

TEST_CASE("rf_arith examples") {
    auto p = make_params({"r", "s2", "t2", "t3"});
    RatFun x1 = rf("r*(2*s2-t2)/(1+t3)", p);
    CHECK(rf_equals(x1 * rf("1+t3", p), rf("r*(2*s2-t2)", p)));
    CHECK(rf_equals(rf_arith(RatFun(Rational(1, 2)), RatFun(Rational(1, 3)), RfOp::add), RatFun(Rational(5, 6))));
    auto q = make_params({"t1"});
    RatFun t1 = RatFun::variable(q, "t1");
    CHECK(rf_equals(rf_arith(t1, t1, RfOp::inv), rf("1/t1", q)));
    CHECK_THROWS_AS(rf_arith(RatFun(0), RatFun(0), RfOp::inv), DivisionByZero);
}

TEST_CASE("normalization") {
    auto p = make_params({"s", "t"});
    RatFun a = rf("t/t^2", p);
    CHECK(a.num().is_constant());
    CHECK(a.den().leading_coeff() == Rational(1));
    RatFun b = rf("(2*s+2*t)/(4*s+4*t)", p);
    CHECK(b.is_numeric());
    CHECK(b.to_rational() == Rational(1, 2));
    RatFun c = rf("(s^2-t^2)/(s+t)", p);
    CHECK(c.is_polynomial());
    CHECK(rf_equals(c, rf("s-t", p)));
    RatFun d = rf("1/(2*s+4)", p);
    CHECK(d.den().leading_coeff() == Rational(1));
}

TEST_CASE("rf_equals") {
    auto p = make_params({"s2", "t", "t2"});
    CHECK(rf_equals(rf("t/t^2", p), rf("1/t", p)));
    CHECK_FALSE(rf_equals(rf("s2-t2", p), rf("2*s2-t2", p)));
    auto q = make_params({"a"});
    CHECK_THROWS_AS(rf_equals(rf("t", p), rf("a", q)), ParameterMismatch);
    CHECK(rf_equals(RatFun(3), rf("3", p)));
}

TEST_CASE("beta formula equals its cross-multiplied expansion") {
    auto p = make_params({"lambda", "s5", "s6", "t3", "t4", "t5"});
    RatFun beta = rf("(-s5^2*t5+(lambda*t3+s6*t4)*s5-s6^2*t3)/s5^3", p);
    RatFun expanded = rf("-t5/s5 + lambda*t3/s5^2 + s6*t4/s5^2 - s6^2*t3/s5^3", p);
    CHECK(rf_equals(beta, expanded));
    std::map<std::string, Rational> pt = {{"t3", 1}, {"t4", 1}, {"t5", 1}, {"s5", 2}, {"s6", 1}, {"lambda", 1}};
    CHECK(rf_substitute(beta, pt) == Rational(-1, 8));
}

TEST_CASE("rf_substitute") {
    auto p = make_params({"r", "s2", "t2", "t3"});
    RatFun x1 = rf("r*(2*s2-t2)/(1+t3)", p);
    CHECK(rf_substitute(x1, {{"r", 1}, {"s2", 1}, {"t2", 2}, {"t3", 0}}) == Rational(0));
    CHECK_THROWS_AS(rf_substitute(rf("1/(1+t3)", p), {{"t3", -1}}), PoleError);
    CHECK_THROWS_AS(rf_substitute(x1, {{"r", 1}}), ParameterMismatch);
}

TEST_CASE("parser") {
    RatFun a = parse_ratfun("-(a+b)^2/2 + a*b");
    auto p = a.params();
    CHECK(*p == std::vector<std::string>{"a", "b"});
    CHECK(rf_equals(a, parse_ratfun("-(a^2+b^2)/2", p)));
    CHECK(parse_ratfun("2^-1").to_rational() == Rational(1, 2));
    CHECK_THROWS_AS(parse_ratfun("1/0"), ParseError);
    CHECK_THROWS_AS(parse_ratfun("(a+"), ParseError);
    CHECK_THROWS_AS(parse_ratfun("a+c", make_params({"a"})), ParseError);
    std::vector<std::string> names = scan_param_names("s10 + s2*t3 - s2");
    CHECK(names == std::vector<std::string>{"s2", "s10", "t3"});
}

TEST_CASE("printing round trip") {
    auto p = make_params({"a", "b", "c"});
    for (const char* s : {"2*b*(2*a-c)", "(a+1)/(b-1/2)", "-a^3*b/7", "0", "5/6"}) {
        RatFun x = rf(s, p);
        RatFun y = parse_ratfun(x.str(), p);
        CHECK(rf_equals(x, y));
    }
}

TEST_CASE("field axioms on random rational functions") {
    std::mt19937 rng(12345);
    auto p = make_params({"s", "t", "u"});
    for (int i = 0; i < 40; ++i) {
        RatFun a = random_ratfun(rng, p), b = random_ratfun(rng, p), c = random_ratfun(rng, p);
        CHECK(rf_equals((a + b) + c, a + (b + c)));
        CHECK(rf_equals((a * b) * c, a * (b * c)));
        CHECK(rf_equals(a * (b + c), a * b + a * c));
        CHECK(rf_equals(a + (-a), RatFun(0)));
        if (!a.is_zero()) CHECK(rf_equals(a * a.inv(), RatFun(1)));
        RatFun renorm(a.num(), a.den());
        CHECK(renorm.num() == a.num());
        CHECK(renorm.den() == a.den());
    }
}

TEST_CASE("rf_equals is an equivalence relation") {
    std::mt19937 rng(777);
    auto p = make_params({"s", "t"});
    for (int i = 0; i < 30; ++i) {
        RatFun a = random_ratfun(rng, p, false);
        RatFun k = random_ratfun(rng, p, false);
        RatFun b = (a * k) / k;
        RatFun c = (b + k) - k;
        CHECK(rf_equals(a, a));
        CHECK(rf_equals(a, b) == rf_equals(b, a));
        CHECK(rf_equals(a, b));
        CHECK(rf_equals(b, c));
        CHECK(rf_equals(a, c));
    }
}

TEST_CASE("substitution commutes with arithmetic") {
    std::mt19937 rng(99);
    auto p = make_params({"s", "t", "u"});
    int checked = 0;
    for (int i = 0; i < 60 && checked < 30; ++i) {
        RatFun a = random_ratfun(rng, p), b = random_ratfun(rng, p);
        std::map<std::string, Rational> pt = {{"s", random_rational(rng)}, {"t", random_rational(rng)},
                                              {"u", random_rational(rng)}};
        try {
            Rational va = rf_substitute(a, pt), vb = rf_substitute(b, pt);
            CHECK(rf_substitute(a + b, pt) == va + vb);
            CHECK(rf_substitute(a * b, pt) == va * vb);
            CHECK(rf_substitute(-a, pt) == -va);
            ++checked;
        } catch (const PoleError&) {
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("compose substitutes rational functions") {
    auto p = make_params({"r", "s2", "t2", "t3", "x1"});
    RatFun rel = rf("2*r*s2 + x1*(s2-t2)", p);
    RatFun x1 = rf("r*(2*s2-t2)/(1+t3)", p);
    RatFun sub = rel.compose({{"x1", x1}});
    RatFun want = rf("2*r*s2 + r*(2*s2-t2)*(s2-t2)/(1+t3)", p);
    CHECK(sub == want);
}
