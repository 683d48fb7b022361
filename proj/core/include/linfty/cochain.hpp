#pragma once

#include "linfty/graded_space.hpp"
#include "linfty/ratfun.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace linfty {

using MultiIndex = std::vector<int>;

// Larger multi-index first: (r,0,0) precedes (r-1,1,0).
struct DescLex {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return a > b; }
};

// phi^{I}_t: sends e^I to I! e_t and every other monomial to 0.
// `target` is zero-based; the text form is one-based.
struct BasisCochain {
    MultiIndex exponents;
    int target = 0;

    int arity() const;
    friend bool operator==(const BasisCochain&, const BasisCochain&) = default;
};

// Target ascending, then exponents in descending lexicographic order.
struct CanonicalLess {
    bool operator()(const BasisCochain& a, const BasisCochain& b) const {
        if (a.target != b.target) return a.target < b.target;
        return a.exponents > b.exponents;
    }
};

int internal_degree(const BasisCochain& c, const GradedSpace& sp);
int parity(const BasisCochain& c, const GradedSpace& sp);
// Exponent vectors whose odd entries are at most 1.
bool is_valid_monomial(const MultiIndex& m, const GradedSpace& sp);
int parity(const MultiIndex& m, const GradedSpace& sp);
int degree(const MultiIndex& m, const GradedSpace& sp);

// All monomials of rank r (odd exponents at most 1), descending lex.
std::vector<MultiIndex> enumerate_words(const GradedSpace& sp, int r);
// Basis cochains of exterior degree r and internal degree s (parity s in Z2).
std::vector<BasisCochain> enumerate_cochain_basis(const GradedSpace& sp, int r, int s);

class Coderivation {
public:
    using TermMap = std::map<BasisCochain, RatFun, CanonicalLess>;

    Coderivation() = default;
    explicit Coderivation(GradedSpace sp) : space_(std::move(sp)) {}
    static Coderivation basis(const GradedSpace& sp, const BasisCochain& c, const RatFun& coeff = RatFun(1));

    const GradedSpace& space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add(const BasisCochain& c, const RatFun& coeff);
    RatFun coefficient(const BasisCochain& c) const;

    // Lowest exterior degree (the order); 0 for the zero coderivation.
    int order() const;
    int max_arity() const;
    std::set<int> arities() const;
    Coderivation component(int r) const;
    Coderivation truncate(int max_r) const;
    // Terms of exterior degree >= r.
    Coderivation tail(int r) const;
    std::optional<int> homogeneous_internal_degree() const;
    std::optional<int> homogeneous_parity() const;
    bool is_numeric() const;
    ParamList params() const;

    Coderivation operator-() const;
    Coderivation& operator+=(const Coderivation& o);
    Coderivation& operator-=(const Coderivation& o);
    Coderivation& operator*=(const RatFun& c);
    friend Coderivation operator+(Coderivation a, const Coderivation& b) { return a += b; }
    friend Coderivation operator-(Coderivation a, const Coderivation& b) { return a -= b; }
    friend Coderivation operator*(Coderivation a, const RatFun& c) { return a *= c; }
    friend Coderivation operator*(const RatFun& c, Coderivation a) { return a *= c; }

    Coderivation partial_substitute(const std::map<std::string, Rational>& bindings) const;
    Coderivation compose_params(const std::map<std::string, RatFun>& values) const;
    Coderivation with_params(const ParamList& params) const;
    // Applies f to every coefficient, dropping zeros.
    template <class F>
    Coderivation map_coefficients(F f) const {
        Coderivation out(space_);
        for (const auto& [c, v] : terms_) out.add(c, f(v));
        return out;
    }

    friend bool operator==(const Coderivation& a, const Coderivation& b);

    // Coordinates in the given basis; throws if a term lies outside it.
    std::vector<RatFun> coordinates(const std::vector<BasisCochain>& basis) const;
    static Coderivation from_coordinates(const GradedSpace& sp, const std::vector<BasisCochain>& basis,
                                         const std::vector<RatFun>& coords);

private:
    void check(const BasisCochain& c) const;
    GradedSpace space_;
    TermMap terms_;
};

}  // namespace linfty
