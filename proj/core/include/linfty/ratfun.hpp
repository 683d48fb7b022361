#pragma once

#include "linfty/param_poly.hpp"

#include <map>
#include <string>

namespace linfty {

// Quotient of two ParamPoly. The denominator is kept with leading
// coefficient 1; common monomial factors and exact polynomial quotients are
// cancelled, but no multivariate gcd is taken, so equality is decided by
// cross-multiplication.
class RatFun {
public:
    RatFun() = default;
    RatFun(const Rational& c) : num_(c) {}
    RatFun(int c) : num_(Rational(c)) {}
    RatFun(const ParamPoly& p) : num_(p), den_(p.params(), Rational(1)) {}
    RatFun(const ParamPoly& num, const ParamPoly& den);

    static RatFun variable(const ParamList& params, const std::string& name) {
        return RatFun(ParamPoly::variable(params, name));
    }

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }
    const ParamList& params() const { return num_.params(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_numeric() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Throws SymbolicCoefficients unless is_numeric().
    Rational to_rational() const;

    RatFun with_params(const ParamList& target) const;

    RatFun operator-() const;
    RatFun inv() const;
    RatFun& operator+=(const RatFun& o);
    RatFun& operator-=(const RatFun& o);
    RatFun& operator*=(const RatFun& o);
    RatFun& operator/=(const RatFun& o);
    friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
    friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
    friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
    friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
    RatFun pow(int e) const;

    // Value equality after aligning parameter lists (no strictness check).
    friend bool operator==(const RatFun& a, const RatFun& b);

    // Exact value at a point covering every parameter that occurs.
    Rational substitute(const std::map<std::string, Rational>& bindings) const;
    // Binds a subset of the parameters, leaving the rest symbolic.
    RatFun partial_substitute(const std::map<std::string, Rational>& bindings) const;
    // Replaces each named parameter by a rational function.
    RatFun compose(const std::map<std::string, RatFun>& values) const;

    std::string str() const;

private:
    void normalize();
    ParamPoly num_{};
    ParamPoly den_{Rational(1)};
};

// Arithmetic entry point mirroring the textual operation names.
enum class RfOp { add, mul, neg, inv };
RatFun rf_arith(const RatFun& a, const RatFun& b, RfOp op);
// Strict equality: both operands must be declared over the same list
// (constants are compatible with any list).
bool rf_equals(const RatFun& a, const RatFun& b);
Rational rf_substitute(const RatFun& a, const std::map<std::string, Rational>& bindings);

}  // namespace linfty
