#pragma once

#include "linfty/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace linfty {

using ParamList = std::shared_ptr<const std::vector<std::string>>;

ParamList make_params(std::vector<std::string> names);
bool same_params(const ParamList& a, const ParamList& b);
// Natural order used when two unrelated lists must be merged: digit runs
// compare numerically, so s2 < s10.
bool natural_less(const std::string& a, const std::string& b);
// Union of two lists. A list that contains the other wins unchanged.
ParamList merge_params(const ParamList& a, const ParamList& b);

using Exponents = std::vector<int>;

// Graded-lexicographic, larger first.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class ParamPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexGreater>;

    ParamPoly();
    ParamPoly(const Rational& c);
    ParamPoly(int c) : ParamPoly(Rational(c)) {}
    explicit ParamPoly(ParamList params);
    ParamPoly(ParamList params, const Rational& c);

    static ParamPoly variable(const ParamList& params, const std::string& name);
    static ParamPoly monomial(const ParamList& params, Exponents e, const Rational& c);

    const ParamList& params() const { return params_; }
    const TermMap& terms() const { return terms_; }
    std::size_t nparams() const { return params_->size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational leading_coeff() const;
    const Exponents& leading_exponents() const;
    int total_degree() const;
    // Smallest total degree among terms; -1 for zero.
    int low_degree() const;
    int degree_in(std::size_t var) const;

    // Re-express over a list that contains every parameter actually used.
    ParamPoly with_params(const ParamList& target) const;
    // Names of parameters that occur with nonzero exponent.
    std::vector<std::string> used_params() const;

    ParamPoly operator-() const;
    ParamPoly& operator+=(const ParamPoly& o);
    ParamPoly& operator-=(const ParamPoly& o);
    ParamPoly& operator*=(const Rational& c);
    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator*(ParamPoly a, const Rational& c) { return a *= c; }
    ParamPoly pow(int e) const;

    // Quotient when b divides this exactly, nullopt otherwise.
    std::optional<ParamPoly> exact_div(const ParamPoly& b) const;
    // Divide out the largest monomial dividing every term.
    Exponents monomial_content() const;
    ParamPoly divide_monomial(const Exponents& e) const;
    // Positive rational c with this/c having coprime integer coefficients.
    Rational content() const;

    // Homogeneous part of the given total degree.
    ParamPoly homogeneous_part(int deg) const;
    ParamPoly truncate(int max_deg) const;

    Rational evaluate(const std::map<std::string, Rational>& bindings) const;
    ParamPoly partial_evaluate(const std::map<std::string, Rational>& bindings) const;

    friend bool operator==(const ParamPoly& a, const ParamPoly& b);

    std::string str() const;

private:
    void add_term(const Exponents& e, const Rational& c);
    ParamList params_;
    TermMap terms_;
};

// Aligns both operands to a common parameter list.
void unify(ParamPoly& a, ParamPoly& b);

}  // namespace linfty
