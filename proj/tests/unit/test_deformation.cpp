#include "linfty/cochain_io.hpp"
#include "linfty/deformation.hpp"
#include "linfty/errors.hpp"
#include "linfty/scalar_parse.hpp"

#include <doctest.h>

#include <random>

using namespace linfty;

namespace {

const GradedSpace onebar2({0, -1, 1}, Grading::Z);

std::string I(int x) { return std::to_string(x); }

Coderivation parse(const std::string& s, const ParamList& p = make_params({})) { return parse_cochain(s, onebar2, p); }

Coderivation dk(int k, const std::string& lambda, const std::string& mu) {
    return parse("ps[" + I(k - 1) + ",1,0;1]*(" + lambda + ") + ps[" + I(k - 2) + ",1,1;3]*(" + mu + ")");
}

Coderivation dsharp(int k, int l) {
    return parse("ps[" + I(k - 1) + ",1,0;1] + ps[" + I(k - 2) + ",1,1;3]*" + I(l) + " + ps[" + I(l) + ",0,0;3]");
}

// 1/2[d_inf, d_inf] minus the relation directions, up to the cutoff.
Coderivation relation_defect(const DeformationResult& r, int cutoff) {
    Coderivation q = bracket(r.d_infinity, r.d_infinity, cutoff) * RatFun(Rational(1, 2));
    for (const auto& rel : r.relations) q -= (rel.direction * rel.value).truncate(cutoff);
    return q;
}

RatFun rf(const std::string& s, const ParamList& p) { return parse_ratfun(s, p); }

// a and b agree up to a nonzero rational factor.
bool proportional(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return (a / b).is_numeric();
}

}  // namespace

TEST_CASE("parameter letters on the (0,-1,1) space") {
    CHECK(parameter_letter(onebar2, BasisCochain{{2, 1, 0}, 0}, 3) == 's');
    CHECK(parameter_letter(onebar2, BasisCochain{{1, 1, 1}, 2}, 3) == 't');
    CHECK(parameter_letter(onebar2, BasisCochain{{3, 0, 0}, 2}, 3) == 'r');
    CHECK(parameter_letter(GradedSpace({0, 2, 1}, Grading::Z), BasisCochain{{2, 0, 0}, 1}, 2) == 't');
    CHECK(parameter_letter(GradedSpace({0, 0, 0}, Grading::Z), BasisCochain{{2, 0, 0}, 1}, 2) == 'u');
}

TEST_CASE("infinitesimal deformation of d_3(1:2)") {
    InfinitesimalDeformation inf = infinitesimal_deformation(dk(3, "1", "2"), 5);
    CHECK(inf.params.names() == std::vector<std::string>{"s1", "s2", "r", "t2", "t3"});
    const DeformationParameter* r = inf.params.find("r");
    REQUIRE(r != nullptr);
    CHECK(r->n == 2);
    CHECK(r->direction == parse("ps[2,0,0;3]"));
    CHECK(inf.params.find("x1") == nullptr);
    CHECK(inf.d_inf.params()->size() == 5);
}

TEST_CASE("miniversal deformation of d_3(1:2)") {
    DeformationResult r = miniversal(dk(3, "1", "2"), 6, 5);
    CHECK(r.converged);
    CHECK(r.exact);
    CHECK(r.params.names() == std::vector<std::string>{"s1", "s2", "r", "t2", "t3", "x1"});
    REQUIRE(r.corrections.count("x1") == 1);
    ParamList base = r.base_params;
    CHECK(rf_equals(r.corrections.at("x1"), rf("r*(2*s2-t2)/(1+t3)", base)));

    ParamList mixed = r.mixed_params;
    std::vector<RatFun> expected = {rf("r*t3", mixed), rf("2*r*s1+x1*(s2-t2)", mixed), rf("x1*s1", mixed)};
    REQUIRE(r.relations.size() == expected.size());
    std::vector<bool> used(expected.size(), false);
    for (const auto& rel : r.relations) {
        CHECK(rel.kind == RelationKind::cocycle);
        bool found = false;
        for (std::size_t i = 0; i < expected.size() && !found; ++i) {
            if (!used[i] && proportional(rel.mixed, expected[i])) used[i] = found = true;
        }
        CHECK_MESSAGE(found, rel.mixed.str());
    }
    CHECK(relation_defect(r, 5).is_zero());
}

TEST_CASE("generic d_k has an unobstructed miniversal deformation") {
    for (int k = 2; k <= 4; ++k) {
        Coderivation d = dk(k, "1", "1/2");
        DeformationResult r = miniversal(d, 6, k + 2);
        CHECK(r.relations.empty());
        CHECK(r.corrections.empty());
        CHECK(r.converged);
        CHECK(r.d_infinity == infinitesimal_deformation(d, k + 2).d_inf);
        CHECK(bracket(r.d_infinity, r.d_infinity, k + 2).is_zero());
    }
}

TEST_CASE("d_k* deformation self-bracket") {
    for (int k = 2; k <= 4; ++k) {
        Coderivation d = parse("ps[" + I(k) + ",0,0;3]");
        InfinitesimalDeformation inf = infinitesimal_deformation(d, k + 1);
        // r_m on psi^{m,0,0}_3 for m < k, s_n on psi^{n-1,1,0}_1 + k psi^{n-2,1,1}_3 for 1 < n <= k.
        ParamList p = inf.d_inf.params();
        Coderivation expected = d.with_params(p);
        for (int m = 1; m < k; ++m) expected += parse("ps[" + I(m) + ",0,0;3]", p) * RatFun::variable(p, k > 2 ? "r" + I(m) : "r");
        for (int n = 2; n <= k; ++n) {
            expected += parse("ps[" + I(n - 1) + ",1,0;1] + ps[" + I(n - 2) + ",1,1;3]*" + I(k), p) *
                        RatFun::variable(p, "s" + I(n));
        }
        CHECK(inf.d_inf == expected);

        // 1/2[inf, inf] = sum phi^{m+n-2,1,0}_3 r_m s_n (m-k)
        Coderivation half = bracket(inf.d_inf, inf.d_inf) * RatFun(Rational(1, 2));
        Coderivation oracle(onebar2);
        oracle = oracle.with_params(p);
        for (int m = 1; m < k; ++m) {
            for (int n = 2; n <= k; ++n) {
                RatFun c = RatFun::variable(p, k > 2 ? "r" + I(m) : "r") * RatFun::variable(p, "s" + I(n)) * RatFun(m - k);
                oracle += parse("ph[" + I(m + n - 2) + ",1,0;3]", p) * c;
            }
        }
        CHECK(half == oracle);

        DeformationResult r = miniversal(d, 6, k + 1);
        CHECK(r.converged);
        CHECK(relation_defect(r, k + 1).is_zero());
    }
}

TEST_CASE("relations vanish where the deformation is a codifferential") {
    DeformationResult r = miniversal(dk(3, "1", "2"), 6, 5);
    std::mt19937 gen(11);
    std::uniform_int_distribution<int> pick(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
        // r = 0 kills every relation.
        std::map<std::string, Rational> b = {{"s1", pick(gen)}, {"s2", pick(gen)}, {"r", 0}, {"t2", pick(gen)},
                                             {"t3", pick(gen)}};
        if (b["t3"] == Rational(-1)) b["t3"] = 2;
        for (const auto& rel : r.relations) CHECK(rel.value.substitute(b).is_zero());
        CHECK(bracket(r.d_infinity.partial_substitute(b), r.d_infinity.partial_substitute(b), 5).is_zero());
    }
    // A point violating r t3 = 0 leaves a nonzero bracket.
    std::map<std::string, Rational> bad = {{"s1", 0}, {"s2", 0}, {"r", 1}, {"t2", 0}, {"t3", 1}};
    CHECK_FALSE(bracket(r.d_infinity.partial_substitute(bad), r.d_infinity.partial_substitute(bad), 5).is_zero());
}

TEST_CASE("filtered miniversal deformation of d_sharp(3,4)") {
    DeformationResult r = miniversal(dsharp(3, 4), 6, 6);
    CHECK(r.converged);
    CHECK(relation_defect(r, 6).is_zero());
}

TEST_CASE("extension obstruction") {
    SUBCASE("d_sharp extends d_3 with no further terms") {
        ExtensionObstruction e = extend_obstruction(dsharp(3, 4), 4);
        CHECK(e.cocycle.is_zero());
        REQUIRE(e.next_term.has_value());
        CHECK(e.next_term->is_zero());
    }
    SUBCASE("two commuting tails meet in a higher degree") {
        // psi^{4,1,0}_1 is a cocycle for d_3(1:4); its bracket with psi^{4,0,0}_3 lands in degree 8.
        Coderivation d = dsharp(3, 4) + parse("ps[4,1,0;1]");
        ExtensionObstruction e = extend_obstruction(d, 5);
        Coderivation tail = d.tail(4);
        CHECK(e.cocycle == (bracket(tail, tail, 8).component(8) * RatFun(Rational(-1, 2))));
        CHECK(bracket(dk(3, "1", "4"), e.cocycle).is_zero());
        if (e.next_term) CHECK(bracket(dk(3, "1", "4"), *e.next_term) == e.cocycle);
    }
    SUBCASE("a violated lower relation is reported") {
        Coderivation d = dk(3, "1", "2") + parse("ps[4,0,0;3]");
        CHECK_THROWS_AS(extend_obstruction(d, 4), RelationViolated);
    }
    SUBCASE("order below the leading term") {
        CHECK_THROWS_AS(extend_obstruction(dk(3, "1", "2"), 2), DomainError);
    }
}

TEST_CASE("obstruction of the zeta direction on d_sharp(3,4)") {
    ParamList p = make_params({"r"});
    Coderivation base = dsharp(3, 4);
    Coderivation zeta = parse("ps[0,1,0;1]*2 + ps[2,0,0;3]*4", p);
    CHECK(bracket(base, zeta).is_zero());
    Coderivation delta = zeta * RatFun::variable(p, "r");
    Coderivation d = base.with_params(p) + delta;
    Coderivation sq = bracket(d, d);
    REQUIRE_FALSE(sq.is_zero());
    Coderivation low = sq.component(sq.order());
    CHECK(low == parse("ph[1,1,0;3]", p) * rf("32*r^2", p));
    CHECK(low == (Coderivation(onebar2).with_params(p) + parse("ph[1,1,0;3]", p) *
                      RatFun(Rational(2 * 4 * (3 - 1) * (4 - 3 + 1))) * rf("r^2", p)));

    ParameterObstruction o = second_order_obstruction(base, zeta);
    CHECK(o.cocycle == parse("ph[1,1,0;3]*16"));
    CHECK(o.obstructed());
}

TEST_CASE("standard form reduction") {
    SUBCASE("a coboundary second term is pushed away") {
        Coderivation lead = dk(3, "1", "1/2");
        Coderivation gamma = parse("ph[1,1,0;2]");
        Coderivation d = exp_ad(gamma, lead, 7);
        REQUIRE(d.arities().size() > 1);
        StandardForm sf = standard_form_reduce(d, 7);
        REQUIRE_FALSE(sf.chain.empty());
        Coderivation replay = d.truncate(7);
        for (const auto& g : sf.chain) replay = exp_ad(g, replay, 7);
        CHECK(replay == sf.result);
        CHECK(bracket(sf.result, sf.result, 7).is_zero());
        std::set<int> ar = sf.result.arities();
        ar.erase(3);
        if (!ar.empty()) CHECK_FALSE(is_coboundary(lead, sf.result.component(*ar.begin())).has_value());
    }
    SUBCASE("a cocycle second term stays") {
        StandardForm sf = standard_form_reduce(dsharp(3, 4), 6);
        CHECK(sf.chain.empty());
        CHECK(sf.result == dsharp(3, 4));
    }
}

TEST_CASE("deformation inputs are checked") {
    CHECK_THROWS_AS(miniversal(parse("ps[1,1,0;1] + ps[2,0,0;3]"), 4, 4), NotACodifferential);
    ParamList p = make_params({"a"});
    CHECK_THROWS_AS(miniversal(parse("ps[2,1,0;1]*a", p), 4, 4), SymbolicCoefficients);
}
