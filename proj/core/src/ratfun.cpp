#include "linfty/ratfun.hpp"

#include "linfty/errors.hpp"

#include <algorithm>

namespace linfty {

RatFun::RatFun(const ParamPoly& num, const ParamPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero();
    normalize();
}

void RatFun::normalize() {
    unify(num_, den_);
    if (num_.is_zero()) {
        den_ = ParamPoly(num_.params(), Rational(1));
        return;
    }
    if (den_.is_constant()) {
        Rational c = den_.leading_coeff();
        if (!c.is_one()) {
            num_ *= c.inverse();
            den_ = ParamPoly(num_.params(), Rational(1));
        }
        return;
    }
    Exponents mn = num_.monomial_content(), md = den_.monomial_content();
    Exponents m(mn.size());
    bool any = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = std::min(mn[i], md[i]);
        any = any || m[i] > 0;
    }
    if (any) {
        num_ = num_.divide_monomial(m);
        den_ = den_.divide_monomial(m);
    }
    if (auto q = num_.exact_div(den_)) {
        num_ = *q;
        den_ = ParamPoly(num_.params(), Rational(1));
        return;
    }
    if (num_.terms().size() < den_.terms().size() || num_.total_degree() < den_.total_degree()) {
        if (auto q = den_.exact_div(num_)) {
            Rational c = q->leading_coeff();
            num_ = ParamPoly(num_.params(), c.inverse());
            den_ = *q * c.inverse();
            return;
        }
    }
    Rational lc = den_.leading_coeff();
    if (!lc.is_one()) {
        Rational inv = lc.inverse();
        num_ *= inv;
        den_ *= inv;
    }
}

Rational RatFun::to_rational() const {
    if (!is_numeric()) {
        throw SymbolicCoefficients("coefficient '" + str() +
                                   "' is symbolic; substitute numeric values first");
    }
    return num_.constant_term() / den_.constant_term();
}

RatFun RatFun::with_params(const ParamList& target) const {
    RatFun r;
    r.num_ = num_.with_params(target);
    r.den_ = den_.with_params(target);
    return r;
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun RatFun::inv() const {
    if (is_zero()) throw DivisionByZero();
    return RatFun(den_, num_);
}

RatFun& RatFun::operator+=(const RatFun& o) {
    if (o.is_zero()) {
        if (!same_params(params(), o.params())) *this = with_params(merge_params(params(), o.params()));
        return *this;
    }
    if (is_zero()) {
        ParamList m = merge_params(params(), o.params());
        *this = o.with_params(m);
        return *this;
    }
    if (den_ == o.den_) {
        ParamPoly n = num_ + o.num_;
        ParamPoly d = den_;
        unify(n, d);
        if (d.is_constant()) {
            num_ = n;
            den_ = d;
            return *this;
        }
        *this = RatFun(n, d);
        return *this;
    }
    if (o.den_.is_constant()) {
        *this = RatFun(num_ + o.num_ * den_, den_);
        return *this;
    }
    if (den_.is_constant()) {
        *this = RatFun(num_ * o.den_ + o.num_, o.den_);
        return *this;
    }
    *this = RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun& RatFun::operator*=(const RatFun& o) {
    if (is_zero() || o.is_zero()) {
        *this = RatFun(ParamPoly(merge_params(params(), o.params())));
        return *this;
    }
    if (den_.is_constant() && o.den_.is_constant()) {
        ParamPoly n = num_ * o.num_;
        num_ = n;
        den_ = ParamPoly(n.params(), Rational(1));
        return *this;
    }
    ParamPoly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
    if (!d2.is_constant()) {
        if (auto q = n1.exact_div(d2)) {
            n1 = *q;
            d2 = ParamPoly(Rational(1));
        }
    }
    if (!d1.is_constant()) {
        if (auto q = n2.exact_div(d1)) {
            n2 = *q;
            d1 = ParamPoly(Rational(1));
        }
    }
    *this = RatFun(n1 * n2, d1 * d2);
    return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) { return *this *= o.inv(); }

RatFun RatFun::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    RatFun r;
    r.num_ = num_.pow(e);
    r.den_ = den_.pow(e);
    r.normalize();
    return r;
}

bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
}

Rational RatFun::substitute(const std::map<std::string, Rational>& bindings) const {
    Rational d = den_.evaluate(bindings);
    if (d.is_zero()) throw PoleError("denominator '" + den_.str() + "' vanishes at the given point");
    return num_.evaluate(bindings) / d;
}

RatFun RatFun::partial_substitute(const std::map<std::string, Rational>& bindings) const {
    ParamPoly d = den_.partial_evaluate(bindings);
    if (d.is_zero()) throw PoleError("denominator '" + den_.str() + "' vanishes at the given point");
    return RatFun(num_.partial_evaluate(bindings), d);
}

namespace {

RatFun compose_poly(const ParamPoly& p, const std::vector<const RatFun*>& vals,
                    const ParamList& out_params) {
    RatFun sum{ParamPoly(out_params)};
    for (const auto& [e, c] : p.terms()) {
        ParamPoly mono = ParamPoly::monomial(out_params, Exponents(out_params->size(), 0), c);
        RatFun t(mono);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (vals[i]) {
                t *= vals[i]->pow(e[i]);
            } else {
                t *= RatFun::variable(out_params, (*p.params())[i]).pow(e[i]);
            }
        }
        sum += t;
    }
    return sum;
}

}  // namespace

RatFun RatFun::compose(const std::map<std::string, RatFun>& values) const {
    ParamList out = params();
    for (const auto& [name, v] : values) out = merge_params(out, v.params());
    std::vector<const RatFun*> vals(params()->size(), nullptr);
    for (std::size_t i = 0; i < params()->size(); ++i) {
        auto it = values.find((*params())[i]);
        if (it != values.end()) vals[i] = &it->second;
    }
    RatFun n = compose_poly(num_, vals, out);
    if (den_.is_constant()) return n / RatFun(den_.constant_term());
    RatFun d = compose_poly(den_, vals, out);
    if (d.is_zero()) throw PoleError("denominator vanishes after substitution");
    return n / d;
}

std::string RatFun::str() const {
    std::string n = num_.str();
    if (den_.is_constant()) return n;
    bool simple_num = num_.terms().size() == 1;
    std::string out = simple_num ? n : "(" + n + ")";
    out += "/";
    out += den_.terms().size() == 1 && den_.leading_coeff().is_one() ? den_.str() : "(" + den_.str() + ")";
    return out;
}

RatFun rf_arith(const RatFun& a, const RatFun& b, RfOp op) {
    switch (op) {
        case RfOp::add: return a + b;
        case RfOp::mul: return a * b;
        case RfOp::neg: return -a;
        case RfOp::inv: return a.inv();
    }
    return a;
}

bool rf_equals(const RatFun& a, const RatFun& b) {
    bool a_const = a.num().used_params().empty() && a.den().used_params().empty();
    bool b_const = b.num().used_params().empty() && b.den().used_params().empty();
    if (!a_const && !b_const && !same_params(a.params(), b.params())) {
        throw ParameterMismatch("rf_equals on different parameter lists");
    }
    return a == b;
}

Rational rf_substitute(const RatFun& a, const std::map<std::string, Rational>& bindings) {
    return a.substitute(bindings);
}

}  // namespace linfty
