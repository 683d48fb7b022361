#include "linfty/cochain_io.hpp"
#include "linfty/errors.hpp"
#include "linfty/moduli.hpp"
#include "linfty/scalar_parse.hpp"

#include <doctest.h>

#include <random>

using namespace linfty;

namespace {

const SpaceProfile onebar2 = SpaceProfile::make(ProfileTag::onebar2_x0);
const SpaceProfile twobar012 = SpaceProfile::make(ProfileTag::twobar1_012);
const SpaceProfile m2m10 = SpaceProfile::make(ProfileTag::twobar1_m2m10);

Coderivation parse(const std::string& s, const GradedSpace& sp = onebar2.space) {
    return parse_cochain(s, sp, make_params({}));
}

ClassLabel L(const std::string& s) { return ClassLabel::parse(s); }

LinearAuto diag(const GradedSpace& sp, std::vector<Rational> p) {
    std::vector<RatFun> v;
    for (const auto& x : p) v.emplace_back(x);
    return LinearAuto::diagonal(sp, v);
}

Rational nonzero(std::mt19937& gen) {
    std::uniform_int_distribution<int> num(1, 5), den(1, 3), sign(0, 1);
    Rational r(num(gen), den(gen));
    return sign(gen) ? -r : r;
}

// Closed form for base d_7(1:mu), N = 3, M = 5, with lambda in the role of s_7.
Rational beta_oracle(const Rational& t3, const Rational& t4, const Rational& t5, const Rational& s5,
                     const Rational& s6) {
    ParamList p = make_params({"s5", "s6", "t3", "t4", "t5", "lambda"});
    RatFun beta = parse_ratfun("(-s5^2*t5 + (lambda*t3 + s6*t4)*s5 - s6^2*t3)/s5^3", p);
    return beta.substitute({{"s5", s5}, {"s6", s6}, {"t3", t3}, {"t4", t4}, {"t5", t5}, {"lambda", 1}});
}

std::vector<ClassLabel> catalog_labels(const SpaceProfile& profile, int k_max) {
    std::vector<ClassLabel> out;
    for (int k = 1; k <= k_max; ++k) {
        std::string K = std::to_string(k);
        switch (profile.tag) {
        case ProfileTag::onebar2_x0:
            out.push_back(label_dk(k, 1, 0));
            out.push_back(L("d*_" + K));
            if (k == 1) break;
            out.push_back(label_dk(k, 1, Rational(1, 2)));
            out.push_back(label_dk(k, 0, 1));
            for (int l = k; l <= k_max; ++l) out.push_back(L("d#_" + K + "," + std::to_string(l)));
            for (int l = k + 1; l <= k_max; ++l) out.push_back(L("d_" + K + "," + std::to_string(l) + "(-2/3)"));
            break;
        case ProfileTag::twobar1_012:
            out.push_back(L("first_" + K));
            out.push_back(L("second_" + K));
            break;
        case ProfileTag::twobar1_m2m10:
            out.push_back(label_dk(k, 0, 1));
            out.push_back(L("second_" + K));
            if (k == 1) break;
            out.push_back(label_dk(k, 1, 2));
            out.push_back(label_dk(k, 1, 0));
            for (int l = k + 1; l <= k_max; ++l) out.push_back(L("d_" + K + "," + std::to_string(l)));
            break;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("profiles and class labels") {
    for (const auto* n : {"onebar2_x0", "twobar1_012", "twobar1_m2m10"}) CHECK(SpaceProfile::parse(n).name() == n);
    CHECK_THROWS_AS(SpaceProfile::parse("onebar3"), DomainError);
    CHECK(onebar2.space.degrees() == std::vector<int>{0, -1, 1});

    for (const auto* t : {"d_3(1:1/2)", "d_2(0:1)", "d*_3", "d#_3", "d#_3,4", "d_3,5(-1/8)", "d_3,5", "first_2",
                          "second_4"}) {
        CHECK(L(t).str() == t);
    }
    CHECK(L("d#_3,3") == L("d#_3"));
    CHECK(L("d_2(2:6)").str() == "d_2(1:3)");
    CHECK(label_dk(4, 0, Rational(-5)).str() == "d_4(0:1)");
    CHECK_THROWS_AS(label_dk(2, 0, 0), DomainError);
    CHECK_THROWS_AS(L("d_"), ParseError);
    CHECK_THROWS_AS(class_representative(onebar2, L("first_2")), DomainError);
    CHECK_THROWS_AS(class_representative(onebar2, L("d#_4,3")), DomainError);
}

TEST_CASE("catalog representatives are codifferentials") {
    for (const auto* profile : {&onebar2, &twobar012, &m2m10}) {
        for (const auto& label : catalog_labels(*profile, 5)) {
            Coderivation d = class_representative(*profile, label);
            CHECK_MESSAGE(bracket(d, d).is_zero(), label.str());
        }
        CHECK_FALSE(class_catalog(*profile, 3).empty());
    }
    CHECK(class_representative(onebar2, L("d_3,5(-1/8)")) ==
          parse("ps[1,1,1;3] + ps[4,1,0;1] - ps[6,1,0;1]*(1/8)"));
    CHECK(class_representative(m2m10, label_dk(2, 1, 2)) == parse("ps[1,0,1;1] + ps[0,1,1;2]*2", m2m10.space));
    CHECK_THROWS_AS(class_catalog(onebar2, 7), DomainError);
}

TEST_CASE("leading normal forms") {
    SUBCASE("d_k with projective coordinates") {
        Coderivation d = parse("ps[1,1,0;1]*3 + ps[0,1,1;3]*5");
        auto [label, w] = normal_form_leading(onebar2, d);
        CHECK(label == label_dk(2, 1, Rational(5, 3)));
        CHECK(w.verified);
        CHECK(apply_witness(w, d) == class_representative(onebar2, label));
    }
    SUBCASE("d_sharp after a diagonal change of basis") {
        Coderivation rep = class_representative(onebar2, L("d#_3"));
        Coderivation d = linear_action(diag(onebar2.space, {2, 3, Rational(-1, 5)}), rep);
        REQUIRE_FALSE(d == rep);
        auto [label, w] = normal_form_leading(onebar2, d);
        CHECK(label == L("d#_3"));
        CHECK(w.verified);
        CHECK(apply_witness(w, d) == rep);
    }
    SUBCASE("second kind on (0,2,1)") {
        auto [label, w] = normal_form_leading(twobar012, parse("ps[3,0,0;3]*7", twobar012.space));
        CHECK(label == L("second_3"));
        CHECK(w.verified);
    }
    SUBCASE("idempotent on every catalog class") {
        for (const auto* profile : {&onebar2, &twobar012, &m2m10}) {
            for (const auto& label : catalog_labels(*profile, 4)) {
                Coderivation d = class_representative(*profile, label);
                if (d.arities().size() != 1) continue;
                auto first = normal_form_leading(*profile, d);
                CHECK_MESSAGE(first.first == label, label.str());
                Coderivation nf = apply_witness(first.second, d);
                CHECK(normal_form_leading(*profile, nf).first == first.first);
            }
        }
    }
    SUBCASE("even automorphisms on the Z2 space of (0,-1,1)") {
        GradedSpace z2 = onebar2.z2_space();
        std::mt19937 gen(5);
        for (const auto& label : catalog_labels(onebar2, 4)) {
            Coderivation rep = class_representative(onebar2, label);
            if (rep.arities().size() != 1) continue;
            for (int trial = 0; trial < 3; ++trial) {
                Rational a = nonzero(gen), b = nonzero(gen), c = nonzero(gen), e = nonzero(gen);
                if (a * e == b * c) continue;
                Matrix<RatFun> g = Matrix<RatFun>::from_rows({{RatFun(nonzero(gen)), RatFun(0), RatFun(0)},
                                                              {RatFun(0), RatFun(a), RatFun(b)},
                                                              {RatFun(0), RatFun(c), RatFun(e)}});
                Coderivation d = linear_action(LinearAuto(z2, g), recast(rep, z2));
                auto [found, w] = normal_form_leading(onebar2, d);
                CHECK_MESSAGE(found == label, (label.str() + " -> " + found.str()));
                CHECK(w.verified);
            }
        }
    }
    SUBCASE("inputs are checked") {
        CHECK_THROWS_AS(normal_form_leading(onebar2, parse("ps[1,1,0;1] + ps[2,0,0;3]")), NotACodifferential);
        CHECK_THROWS_AS(normal_form_leading(onebar2, class_representative(onebar2, L("d_2,3(1)"))), DomainError);
        CHECK_THROWS_AS(normal_form_leading(twobar012, parse("ps[1,1,0;1]")), DomainError);
    }
}

TEST_CASE("filtered reduction and torus helpers") {
    Coderivation rep = class_representative(onebar2, L("d_3,5(-1/8)"));
    Coderivation moved = exp_ad(parse("ph[1,1,0;2] - ph[2,0,0;1]*3"), rep, 8);
    REQUIRE_FALSE(moved == rep.truncate(8));
    FilteredReduction red = reduce_filtered(moved, 8);
    Coderivation replay = moved.truncate(8);
    for (const auto& g : red.chain) replay = exp_ad(g, replay, 8);
    CHECK(replay == red.result);
    CHECK(classify_codifferential(onebar2, moved, 8) == L("d_3,5(-1/8)"));

    // alpha scales as p2^2 / (p1 p3) against leading coefficients; the label does not.
    Coderivation scaled = linear_action(diag(onebar2.space, {3, Rational(1, 2), 7}), rep);
    CHECK(classify_codifferential(onebar2, scaled, 8) == L("d_3,5(-1/8)"));

    auto p = solve_diagonal(scaled, rep);
    REQUIRE(p.has_value());
    CHECK(linear_action(diag(onebar2.space, *p), scaled) == rep);
    CHECK_FALSE(solve_diagonal(rep, class_representative(onebar2, L("d_3,5(1)"))).has_value());

    TorusInvariants ti = torus_invariants(class_representative(m2m10, label_dk(2, 1, 2)));
    REQUIRE(ti.values.size() == 1);
    CHECK((ti.values[0] == Rational(2) || ti.values[0] == Rational(1, 2)));
}

TEST_CASE("classification with extension terms") {
    CHECK(classify_codifferential(onebar2, class_representative(onebar2, L("d#_3,4")), 8) == L("d#_3,4"));
    Coderivation dkl = class_representative(m2m10, L("d_2,4"));
    CHECK(classify_codifferential(m2m10, dkl, 6) == L("d_2,4"));
    // psi^{4,1,0}_1 is a coboundary for d_3(1:1/2) and reduces away.
    Coderivation d = exp_ad(parse("ph[2,1,0;2]"), class_representative(onebar2, label_dk(3, 1, Rational(1, 2))), 7);
    CHECK(classify_codifferential(onebar2, d, 7) == label_dk(3, 1, Rational(1, 2)));
}

TEST_CASE("identification of a deformation point with the beta formula") {
    ClassLabel base = label_dk(7, 1, Rational(1, 2));
    std::map<std::string, Rational> b = {{"t3", 1}, {"t4", 1}, {"t5", 1}, {"s5", 2}, {"s6", 1}};
    IdentifiedPoint id = identify_deformation_point(onebar2, base, b);
    CHECK(beta_oracle(1, 1, 1, 2, 1) == Rational(-1, 8));
    CHECK(id.label == L("d_3,5(-1/8)"));
    CHECK(bracket(id.point, id.point, id.cutoff).is_zero());

    std::mt19937 gen(2024);
    for (int trial = 0; trial < 5; ++trial) {
        Rational t3 = nonzero(gen), t4 = nonzero(gen), t5 = nonzero(gen), s5 = nonzero(gen), s6 = nonzero(gen);
        IdentifiedPoint r = identify_deformation_point(onebar2, label_dk(7, 1, Rational(trial, 3)),
                                                       {{"t3", t3}, {"t4", t4}, {"t5", t5}, {"s5", s5}, {"s6", s6}});
        ClassLabel expected = L("d_3,5(0)");
        expected.alpha = beta_oracle(t3, t4, t5, s5, s6);
        CHECK_MESSAGE(r.label == expected, (r.label.str() + " vs " + expected.str()));
    }
}

TEST_CASE("identification without s parameters") {
    std::mt19937 gen(77);
    for (int trial = 0; trial < 5; ++trial) {
        Rational lambda = nonzero(gen), mu = nonzero(gen), tN = nonzero(gen), tk = nonzero(gen);
        const int k = 4, N = 2 + trial % 2;
        ClassLabel base = label_dk(k, lambda, mu);
        IdentifiedPoint r = identify_deformation_point(
            onebar2, base, {{"t" + std::to_string(N), tN}, {"t" + std::to_string(k), tk}});
        ClassLabel expected = L("d_" + std::to_string(N) + "," + std::to_string(k) + "(0)");
        // The base is stored with lambda = 1.
        expected.alpha = -(tk + base.mu) / base.lambda;
        CHECK_MESSAGE(r.label == expected, (r.label.str() + " vs " + expected.str()));
    }
    SUBCASE("N = k stays in the family") {
        IdentifiedPoint r = identify_deformation_point(onebar2, label_dk(3, 1, 2), {{"t3", 1}});
        CHECK(r.label == label_dk(3, 1, 3));
    }
    SUBCASE("all bindings zero") {
        for (const auto& base : {label_dk(3, 1, 2), L("d#_3"), L("d*_3")}) {
            CHECK(identify_deformation_point(onebar2, base, {}).label == base);
        }
        CHECK(identify_deformation_point(twobar012, L("first_3"), {}).label == L("first_3"));
    }
    SUBCASE("jumps to lower order") {
        CHECK(identify_deformation_point(twobar012, L("second_3"), {{"t1", 1}}).label == L("second_1"));
    }
    SUBCASE("bad bindings") {
        CHECK_THROWS_AS(identify_deformation_point(onebar2, label_dk(3, 1, 2), {{"q7", 1}}), DomainError);
        CHECK_THROWS_AS(identify_deformation_point(onebar2, label_dk(3, 1, 2), {{"r", 1}, {"t3", 1}}),
                        RelationViolated);
    }
}

TEST_CASE("equivalence witnesses") {
    Coderivation a = class_representative(m2m10, label_dk(2, 1, 2));
    Coderivation b = parse("ps[1,0,1;1]*2 + ps[0,1,1;2]", m2m10.space);
    SUBCASE("swap in Z2") {
        EquivalenceResult r = equivalence_witness(a, b, Grading::Z2);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->verified);
        GradedSpace z2 = m2m10.z2_space();
        CHECK(apply_witness(*r.witness, recast(a, z2)) == recast(b, z2));
        REQUIRE(r.witness->chain.size() == 1);
        REQUIRE(r.witness->chain[0].is_linear());
        CHECK(r.witness->chain[0].linear->matrix() == LinearAuto::permutation(z2, {1, 0, 2}).matrix());
    }
    SUBCASE("certificate in Z") {
        EquivalenceResult r = equivalence_witness(a, b, Grading::Z);
        CHECK_FALSE(r.witness.has_value());
        CHECK(r.certified_inequivalent);
        CHECK(r.certificate.find("diagonal") != std::string::npos);
    }
    SUBCASE("identity and scalar multiples") {
        EquivalenceResult r = equivalence_witness(a, a, Grading::Z);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->chain.empty());
        EquivalenceResult s = equivalence_witness(a, a * RatFun(Rational(3)), Grading::Z);
        REQUIRE(s.witness.has_value());
        CHECK(s.witness->verified);
    }
    SUBCASE("higher terms") {
        Coderivation rep = class_representative(onebar2, L("d_3,5(2)"));
        Coderivation moved = exp_ad(parse("ph[1,1,0;2]"), linear_action(diag(onebar2.space, {2, 3, 5}), rep), 9);
        EquivalenceResult r = equivalence_witness(moved, rep, Grading::Z, 9);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->verified);
        EquivalenceResult other = equivalence_witness(rep, class_representative(onebar2, L("d_3,5(3)")), Grading::Z, 9);
        CHECK_FALSE(other.witness.has_value());
    }
    SUBCASE("orders differ") {
        EquivalenceResult r = equivalence_witness(a, class_representative(m2m10, label_dk(3, 1, 2)), Grading::Z);
        CHECK(r.certified_inequivalent);
    }
}

TEST_CASE("block dichotomy on degrees (0,1,2)") {
    GradedSpace sp = GradedSpace({0, 1, 2}, Grading::Z).as_z2();
    std::mt19937 gen(8);
    int both_zero_checked = 0, a1_only = 0, a2_only = 0, mixed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + trial % 3;
        const int shape = (trial / 3) % 3;  // 0: A1 only, 1: A2 only, 2: both
        Coderivation d(sp);
        for (const auto& c : enumerate_cochain_basis(sp, k, 1)) {
            bool even_target = sp.parity(c.target) == 0;
            if ((shape == 0 && !even_target) || (shape == 1 && even_target)) continue;
            if (std::uniform_int_distribution<int>(0, 2)(gen) == 0) continue;
            d.add(c, RatFun(nonzero(gen)));
        }
        if (d.is_zero()) continue;
        BlockSplit split = block_split(d);
        bool one_zero = split.a1_zero || split.a2_zero;
        CHECK_MESSAGE(bracket(d, d).is_zero() == one_zero, print_cochain(d));
        if (split.a1_zero && split.a2_zero) ++both_zero_checked;
        if (!split.a1_zero && split.a2_zero) ++a1_only;
        if (split.a1_zero && !split.a2_zero) ++a2_only;
        if (!one_zero) ++mixed;
    }
    CHECK(a1_only > 20);
    CHECK(a2_only > 20);
    CHECK(mixed > 20);
    CHECK(both_zero_checked == 0);
    CHECK_THROWS_AS(block_split(parse("ps[1,1,0;1]")), DomainError);
}

TEST_CASE("moduli reports") {
    ModuliReport a = moduli_report(onebar2, 3);
    CHECK(a.verdict == "bijective");
    std::set<std::string> families;
    for (const auto& e : a.catalog) families.insert(e.family);
    CHECK(families == std::set<std::string>{"d_k(lambda:mu)", "d*_k", "d#_k,l", "d_k,l(alpha)"});

    ModuliReport b = moduli_report(twobar012, 3);
    CHECK(b.verdict == "injective, not surjective");
    std::set<std::pair<std::string, std::string>> jumps;
    for (const auto& adj : b.adjacencies) jumps.insert({adj.from, adj.to});
    for (const auto* kind : {"first_", "second_"}) {
        for (int k = 2; k <= 3; ++k) {
            for (int m = 1; m < k; ++m) {
                CHECK(jumps.count({kind + std::to_string(k), kind + std::to_string(m)}) == 1);
            }
        }
    }
    for (const auto& adj : b.adjacencies) CHECK(adj.from.substr(0, 5) == adj.to.substr(0, 5));

    ModuliReport c = moduli_report(m2m10, 2);
    CHECK(c.verdict == "not injective");
    CHECK(c.verdict_detail.find("swap witness verified") != std::string::npos);

    for (const auto& adj : a.adjacencies) {
        IdentifiedPoint p = identify_deformation_point(onebar2, L(adj.from), adj.point);
        CHECK(p.label.str() == adj.to);
    }
}
