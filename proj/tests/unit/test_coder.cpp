#include "linfty/cochain_io.hpp"
#include "linfty/coder.hpp"
#include "linfty/errors.hpp"
#include "linfty/linear_auto.hpp"
#include "linfty/scalar_parse.hpp"
#include "oracle/word_oracle.hpp"

#include <doctest.h>

#include <random>

using namespace linfty;

namespace {

const GradedSpace onebar2({0, -1, 1}, Grading::Z);

Coderivation pc(const std::string& s, const GradedSpace& sp, const ParamList& p) { return parse_cochain(s, sp, p); }

std::vector<BasisCochain> cochains_of(const GradedSpace& sp, int r, int par) {
    std::vector<BasisCochain> out;
    if (sp.mode() == Grading::Z2) return enumerate_cochain_basis(sp, r, par);
    for (int s = -30; s <= 30; ++s) {
        if (mod2(s) != par) continue;
        for (const auto& c : enumerate_cochain_basis(sp, r, s)) out.push_back(c);
    }
    return out;
}

// Random cochain of one parity supported on exterior degree r.
Coderivation random_cochain(std::mt19937& rng, const GradedSpace& sp, int r, int par) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Coderivation d(sp);
    for (const auto& c : cochains_of(sp, r, par)) {
        int v = coeff(rng);
        if (v != 0) d.add(c, RatFun(v));
    }
    return d;
}

// Random cochain of a single internal degree (Z mode) on exterior degree r.
Coderivation random_homogeneous(std::mt19937& rng, const GradedSpace& sp, int r, int s) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Coderivation d(sp);
    for (const auto& c : enumerate_cochain_basis(sp, r, s)) {
        int v = coeff(rng);
        if (v != 0) d.add(c, RatFun(v));
    }
    return d;
}

int par(const Coderivation& d) { return d.homogeneous_parity().value_or(0); }

Rational random_nonzero(std::mt19937& rng) {
    std::uniform_int_distribution<int> n(1, 5), sgn(0, 1), den(1, 3);
    return Rational(sgn(rng) ? n(rng) : -n(rng), den(rng));
}

const std::vector<GradedSpace>& test_spaces() {
    static const std::vector<GradedSpace> v = {
        onebar2, GradedSpace({0, 2, 1}, Grading::Z), GradedSpace({-2, 0, -1}, Grading::Z),
        GradedSpace({0, 1, 1}, Grading::Z2), GradedSpace({1, 1}, Grading::Z2), GradedSpace({0, 0, 1}, Grading::Z)};
    return v;
}

}  // namespace

TEST_CASE("word product sign") {
    GradedSpace sp({1, 1, 0}, Grading::Z2);
    CHECK(word_product_sign({0, 1, 0}, {1, 0, 0}, sp) == -1);
    CHECK(word_product_sign({1, 0, 0}, {0, 1, 0}, sp) == 1);
    CHECK(word_product_sign({1, 0, 0}, {1, 0, 0}, sp) == 0);
    CHECK(word_product_sign({0, 0, 2}, {1, 1, 1}, sp) == 1);
}

TEST_CASE("bracket of the general degree-k odd cochain on (0,-1,1)") {
    auto p = make_params({"a", "b", "c"});
    for (int k = 2; k <= 6; ++k) {
        std::string km1 = std::to_string(k - 1), k0 = std::to_string(k), km2 = std::to_string(k - 2);
        Coderivation d = pc("ps[" + km1 + ",1,0;1]*a + ps[" + k0 + ",0,0;3]*b + ps[" + km2 + ",1,1;3]*c", onebar2, p);
        Coderivation dd = bracket(d, d);
        Coderivation want = Coderivation::basis(onebar2, BasisCochain{{2 * k - 2, 1, 0}, 2},
                                                parse_ratfun("2*b*(" + k0 + "*a-c)", p));
        CHECK_MESSAGE(dd == want, "k=" << k << " got " << print_cochain(dd));
    }
    Coderivation d2 = pc("ps[1,1,0;1]*a + ps[2,0,0;3]*b + ps[0,1,1;3]*c", onebar2, p);
    CHECK(print_cochain(bracket(d2, d2)) == "ph[2,1,0;3]*(4*a*b-2*b*c)");
}

TEST_CASE("first kind on (0,2,1) is a codifferential") {
    GradedSpace sp({0, 2, 1}, Grading::Z);
    for (int k = 1; k <= 6; ++k) {
        Coderivation d = Coderivation::basis(sp, BasisCochain{{k - 1, 0, 1}, 1});
        CHECK(par(d) == 1);
        CHECK(bracket(d, d).is_zero());
    }
}

TEST_CASE("even cochains have vanishing self-bracket") {
    std::mt19937 rng(5);
    for (const auto& sp : test_spaces()) {
        for (int r = 1; r <= 3; ++r) {
            Coderivation f = sp.mode() == Grading::Z ? random_homogeneous(rng, sp, r, 0) : random_cochain(rng, sp, r, 0);
            CHECK(bracket(f, f).is_zero());
        }
    }
}

TEST_CASE("bracket agrees with the brute-force word evaluator") {
    std::mt19937 rng(2024);
    int pairs = 0;
    for (const auto& sp : test_spaces()) {
        for (int k = 1; k <= 4; ++k) {
            for (int l = 1; k + l - 1 <= 4; ++l) {
                for (int pf = 0; pf < 2; ++pf) {
                    for (int pg = 0; pg < 2; ++pg) {
                        Coderivation f = random_cochain(rng, sp, k, pf);
                        Coderivation g = random_cochain(rng, sp, l, pg);
                        if (f.is_zero() || g.is_zero()) continue;
                        CHECK(oracle::compare_bracket(f, g) == 0);
                        ++pairs;
                    }
                }
            }
        }
    }
    CHECK(pairs > 100);
}

TEST_CASE("graded antisymmetry and bidegree closure") {
    std::mt19937 rng(31);
    for (const auto& sp : test_spaces()) {
        for (int k = 1; k <= 3; ++k) {
            for (int l = 1; k + l - 1 <= 4; ++l) {
                for (int pf = 0; pf < 2; ++pf) {
                    for (int pg = 0; pg < 2; ++pg) {
                        Coderivation f = random_cochain(rng, sp, k, pf);
                        Coderivation g = random_cochain(rng, sp, l, pg);
                        Coderivation fg = bracket(f, g), gf = bracket(g, f);
                        RatFun sign((pf * pg) % 2 ? 1 : -1);
                        CHECK(fg == gf * sign);
                        for (const auto& [c, v] : fg.terms()) {
                            CHECK(c.arity() == k + l - 1);
                            CHECK(parity(c, sp) == (pf + pg) % 2);
                        }
                    }
                }
            }
        }
    }
    for (int m = -2; m <= 2; ++m) {
        for (int n = -2; n <= 2; ++n) {
            Coderivation f = random_homogeneous(rng, onebar2, 2, m);
            Coderivation g = random_homogeneous(rng, onebar2, 3, n);
            CHECK(bracket(f, g).homogeneous_internal_degree().value_or(m + n) == m + n);
        }
    }
}

TEST_CASE("graded Jacobi identity") {
    std::mt19937 rng(77);
    for (const auto& sp : test_spaces()) {
        for (int trial = 0; trial < 12; ++trial) {
            std::uniform_int_distribution<int> ar(1, 3), pr(0, 1);
            Coderivation f = random_cochain(rng, sp, ar(rng), pr(rng));
            Coderivation g = random_cochain(rng, sp, ar(rng), pr(rng));
            Coderivation h = random_cochain(rng, sp, ar(rng), pr(rng));
            RatFun s((par(f) * par(g)) % 2 ? -1 : 1);
            Coderivation lhs = bracket(f, bracket(g, h));
            Coderivation rhs = bracket(bracket(f, g), h) + s * bracket(g, bracket(f, h));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("exp_ad") {
    SUBCASE("commuting generator leaves d unchanged") {
        int found = 0;
        for (int r = 2; r <= 3; ++r) {
            for (const auto& phi : enumerate_cochain_basis(onebar2, r, 0)) {
                for (const auto& c : enumerate_cochain_basis(onebar2, 2, 1)) {
                    Coderivation g = Coderivation::basis(onebar2, phi);
                    Coderivation d = Coderivation::basis(onebar2, c);
                    if (!bracket(g, d).is_zero()) continue;
                    CHECK(exp_ad(g, d, 8) == d);
                    ++found;
                }
            }
        }
        CHECK(found > 0);
    }
    SUBCASE("group property") {
        std::mt19937 rng(8);
        for (int trial = 0; trial < 6; ++trial) {
            Coderivation phi = random_homogeneous(rng, onebar2, 2, 0);
            Coderivation d = random_homogeneous(rng, onebar2, 2, 1) + random_homogeneous(rng, onebar2, 3, 1);
            const int cutoff = 6;
            Coderivation there = exp_ad(phi, d, cutoff);
            CHECK(exp_ad(-phi, there, cutoff) == d);
            RatFun s(Rational(1, 3)), t(Rational(-5, 2));
            CHECK(exp_ad(phi * t, exp_ad(phi * s, d, cutoff), cutoff) == exp_ad(phi * (s + t), d, cutoff));
        }
    }
    SUBCASE("removing a coboundary term raises the order of the tail") {
        auto p = make_params({});
        Coderivation dk = pc("ps[2,1,0;1] + ps[1,1,1;3]*2", onebar2, p);
        int checked = 0;
        for (const auto& c : enumerate_cochain_basis(onebar2, 2, 0)) {
            Coderivation gamma = Coderivation::basis(onebar2, c);
            Coderivation dg = bracket(dk, gamma);
            if (dg.is_zero()) continue;
            Coderivation d = dk - dg;
            Coderivation moved = exp_ad(gamma, d, 8);
            CHECK(moved.component(3) == dk);
            CHECK(moved.component(4).is_zero());
            CHECK(moved.order() == 3);
            ++checked;
        }
        CHECK(checked > 0);
    }
    SUBCASE("codifferentials stay codifferentials") {
        Coderivation d = pc("ps[2,1,0;1] + ps[1,1,1;3]*2", onebar2, make_params({}));
        Coderivation phi = pc("ph[1,1,1;1]*3 - ph[2,1,0;2]", onebar2, make_params({}));
        Coderivation moved = exp_ad(phi, d, 9);
        CHECK(bracket(moved, moved, 9).is_zero());
    }
    SUBCASE("preconditions") {
        Coderivation d = pc("ps[2,1,0;1]", onebar2, make_params({}));
        CHECK_THROWS_AS(exp_ad(pc("ps[1,1,0;1]", onebar2, make_params({})), d, 6), DomainError);
        CHECK_THROWS_AS(exp_ad(pc("ph[1,0,0;1]", onebar2, make_params({})), d, 6), DomainError);
        CHECK_THROWS_AS(exp_ad(pc("ph[1,1,0;2]", onebar2, make_params({})), d, 2), CutoffError);
    }
}

TEST_CASE("matrix of g on symmetric powers") {
    GradedSpace sp({0, 0, 0}, Grading::Z);
    auto p = make_params({"p", "q", "r"});
    LinearAuto g = LinearAuto::diagonal(sp, {parse_ratfun("p", p), parse_ratfun("q", p), parse_ratfun("r", p)});
    Matrix<RatFun> q2 = linear_matrix_on_Sk(g, 2);
    auto words = enumerate_words(sp, 2);
    REQUIRE(q2.rows() == words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = 0; j < words.size(); ++j) {
            if (i != j) {
                CHECK(q2(i, j).is_zero());
                continue;
            }
            RatFun want(1);
            const char* names[] = {"p", "q", "r"};
            for (int v = 0; v < 3; ++v) want *= parse_ratfun(names[v], p).pow(words[i][static_cast<std::size_t>(v)]);
            CHECK(q2(i, i) == want);
        }
    }
    Matrix<RatFun> id = linear_matrix_on_Sk(LinearAuto::identity(onebar2), 4);
    CHECK(id == Matrix<RatFun>::identity(id.rows()));
}

TEST_CASE("matrix of g on S^k for the lower-triangular example") {
    GradedSpace sp({0, -1, 1}, Grading::Z2);
    auto p = make_params({"q", "r", "s", "t", "u"});
    auto v = [&](const char* s) { return parse_ratfun(s, p); };
    Matrix<RatFun> gm = Matrix<RatFun>::from_rows({{v("q"), 0, 0}, {0, v("r"), v("s")}, {0, v("t"), v("u")}});
    LinearAuto g(sp, gm);
    for (int k = 2; k <= 5; ++k) {
        Matrix<RatFun> q = linear_matrix_on_Sk(g, k);
        REQUIRE(q.rows() == 4);
        std::string K = std::to_string(k), K1 = std::to_string(k - 1), K2 = std::to_string(k - 2);
        Matrix<RatFun> want = Matrix<RatFun>::from_rows({{v(("q^" + K).c_str()), 0, 0, 0},
                                                         {0, v(("r*q^" + K1).c_str()), v(("s*q^" + K1).c_str()), 0},
                                                         {0, v(("t*q^" + K1).c_str()), v(("u*q^" + K1).c_str()), 0},
                                                         {0, 0, 0, v(("(u*r-s*t)*q^" + K2).c_str())}});
        CHECK(q == want);
    }
}

TEST_CASE("conjugation identity A' = G^-1 A Q") {
    GradedSpace sp({0, -1, 1}, Grading::Z2);
    auto p = make_params({"a1", "a2", "b1", "b2", "c1", "c2", "q", "r", "s", "t", "u"});
    auto v = [&](const std::string& s) { return parse_ratfun(s, p); };
    const int k = 3;
    Coderivation d = pc("ps[2,1,0;1]*a1 + ps[3,0,0;3]*b1 + ps[1,1,1;3]*c1 + ps[2,0,1;1]*a2 + ps[3,0,0;2]*b2 + "
                        "ps[1,1,1;2]*c2",
                        sp, p);
    Matrix<RatFun> gm = Matrix<RatFun>::from_rows({{v("q"), 0, 0}, {0, v("r"), v("s")}, {0, v("t"), v("u")}});
    LinearAuto g(sp, gm);
    Matrix<RatFun> a = coefficient_matrix(d, k);
    Matrix<RatFun> got = coefficient_matrix(linear_action(g, d), k);
    Matrix<RatFun> conj = g.inverse_matrix() * a * linear_matrix_on_Sk(g, k);
    CHECK(got == conj);
    Matrix<RatFun> displayed = Matrix<RatFun>::from_rows(
        {{0, v("q*(a1*r+t*a2)"), v("q*(s*a1+a2*u)"), 0},
         {v("(u*b2-s*b1)*q^3/(u*r-s*t)"), 0, 0, v("q*(u*c2-s*c1)")},
         {v("(-t*b2+r*b1)*q^3/(u*r-s*t)"), 0, 0, v("q*(-t*c2+r*c1)")}});
    CHECK(got == displayed);
    const std::vector<std::map<std::string, Rational>> points = {
        {{"a1", 1}, {"a2", 2}, {"b1", -1}, {"b2", 3}, {"c1", Rational(1, 2)}, {"c2", 5}, {"q", 2}, {"r", 1}, {"s", 3},
         {"t", -1}, {"u", 4}},
        {{"a1", -3}, {"a2", 0}, {"b1", 7}, {"b2", 1}, {"c1", 2}, {"c2", -2}, {"q", Rational(1, 3)}, {"r", 5},
         {"s", 0}, {"t", 2}, {"u", -1}},
        {{"a1", Rational(2, 5)}, {"a2", -1}, {"b1", 4}, {"b2", -6}, {"c1", 1}, {"c2", 1}, {"q", -1}, {"r", 2},
         {"s", -3}, {"t", 1}, {"u", 1}}};
    for (const auto& pt : points) {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                CHECK(got(i, j).substitute(pt) == displayed(i, j).substitute(pt));
            }
        }
    }
}

TEST_CASE("diagonal action on d_k") {
    auto p = make_params({"lambda", "mu", "q", "r"});
    for (int k = 2; k <= 5; ++k) {
        std::string K = std::to_string(k), K1 = std::to_string(k - 1), K2 = std::to_string(k - 2);
        Coderivation d = pc("ps[" + K1 + ",1,0;1]*lambda + ps[" + K + ",0,0;3]*mu + ps[" + K2 + ",1,1;3]*(" + K +
                                "*lambda)",
                            onebar2, p);
        LinearAuto g = LinearAuto::diagonal(onebar2, {RatFun(1), parse_ratfun("q", p), parse_ratfun("r", p)});
        Coderivation want = pc("ps[" + K1 + ",1,0;1]*(q*lambda) + ps[" + K + ",0,0;3]*(mu/r) + ps[" + K2 +
                                   ",1,1;3]*(q*" + K + "*lambda)",
                               onebar2, p);
        CHECK(linear_action(g, d) == want);
    }
}

TEST_CASE("diagonal action scales each basis cochain by a monomial") {
    std::mt19937 rng(4);
    for (const auto& sp : test_spaces()) {
        std::vector<Rational> diag;
        for (int i = 0; i < sp.dim(); ++i) diag.push_back(random_nonzero(rng));
        std::vector<RatFun> rdiag(diag.begin(), diag.end());
        LinearAuto g = LinearAuto::diagonal(sp, rdiag);
        for (int r = 1; r <= 4; ++r) {
            for (int pp = 0; pp < 2; ++pp) {
                for (const auto& c : cochains_of(sp, r, pp)) {
                    Rational scale = diag[static_cast<std::size_t>(c.target)].inverse();
                    for (int j = 0; j < sp.dim(); ++j) scale *= diag[static_cast<std::size_t>(j)].pow(c.exponents[static_cast<std::size_t>(j)]);
                    Coderivation d = Coderivation::basis(sp, c);
                    CHECK(linear_action(g, d) == d * RatFun(scale));
                }
            }
        }
    }
}

TEST_CASE("swap of e1 and e2 on (-2,0,-1) exchanges the parameters of d_2") {
    GradedSpace z2({-2, 0, -1}, Grading::Z2);
    auto p = make_params({"lambda", "mu"});
    Coderivation d = pc("ps[1,0,1;1]*lambda + ps[0,1,1;2]*mu", z2, p);
    LinearAuto g = LinearAuto::permutation(z2, {1, 0, 2});
    CHECK(linear_action(g, d) == pc("ps[1,0,1;1]*mu + ps[0,1,1;2]*lambda", z2, p));
    GradedSpace z({-2, 0, -1}, Grading::Z);
    CHECK_THROWS_AS(LinearAuto::permutation(z, {1, 0, 2}), DomainError);
}

TEST_CASE("identity and singular automorphisms") {
    auto p = make_params({"a", "b"});
    Coderivation d = pc("ps[1,1,0;1]*a + ps[2,0,0;3]*b", onebar2, p);
    CHECK(linear_action(LinearAuto::identity(onebar2), d) == d);
    CHECK_THROWS_AS(LinearAuto::diagonal(onebar2, {RatFun(1), RatFun(0), RatFun(2)}), SingularAutomorphism);
}

TEST_CASE("pullback reverses composition") {
    std::mt19937 rng(123);
    // Parity-preserving maps on (0,1,1) in Z2 and degree-preserving maps on (0,0,1) in Z.
    struct Case {
        GradedSpace sp;
        std::vector<std::pair<int, int>> free;
    };
    std::vector<Case> cases = {{GradedSpace({0, 1, 1}, Grading::Z2), {{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}}},
                               {GradedSpace({0, 0, 1}, Grading::Z), {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}}}};
    for (const auto& cs : cases) {
        auto random_auto = [&]() {
            for (;;) {
                Matrix<RatFun> m(3, 3);
                std::uniform_int_distribution<int> e(-2, 2);
                for (auto [i, j] : cs.free) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = RatFun(e(rng));
                try {
                    return LinearAuto(cs.sp, m);
                } catch (const SingularAutomorphism&) {
                }
            }
        };
        for (int trial = 0; trial < 5; ++trial) {
            LinearAuto g = random_auto(), h = random_auto();
            for (int r = 1; r <= 3; ++r) {
                Coderivation d = random_cochain(rng, cs.sp, r, 1);
                CHECK(linear_action(g * h, d) == linear_action(h, linear_action(g, d)));
            }
            Coderivation d = random_cochain(rng, cs.sp, 2, 1);
            Coderivation e = random_cochain(rng, cs.sp, 2, 1);
            CHECK(linear_action(g, bracket(d, e)) == bracket(linear_action(g, d), linear_action(g, e)));
        }
    }
}
