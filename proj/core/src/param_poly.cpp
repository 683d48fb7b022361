#include "linfty/param_poly.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace linfty {

namespace {

const ParamList& empty_params() {
    static const ParamList empty = std::make_shared<const std::vector<std::string>>();
    return empty;
}

int total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

ParamList make_params(std::vector<std::string> names) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) throw ParameterMismatch("duplicate parameter '" + n + "'");
    }
    if (names.empty()) return empty_params();
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_params(const ParamList& a, const ParamList& b) { return a == b || *a == *b; }

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i])) &&
            std::isdigit(static_cast<unsigned char>(b[j]))) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            std::string da = a.substr(i, i2 - i), db = b.substr(j, j2 - j);
            da.erase(0, std::min(da.find_first_not_of('0'), da.size()));
            db.erase(0, std::min(db.find_first_not_of('0'), db.size()));
            if (da.size() != db.size()) return da.size() < db.size();
            if (da != db) return da < db;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return (a.size() - i) < (b.size() - j);
}

ParamList merge_params(const ParamList& a, const ParamList& b) {
    if (same_params(a, b) || b->empty()) return a;
    if (a->empty()) return b;
    auto contains = [](const ParamList& big, const ParamList& small) {
        return std::all_of(small->begin(), small->end(), [&](const std::string& n) {
            return std::find(big->begin(), big->end(), n) != big->end();
        });
    };
    if (contains(a, b)) return a;
    if (contains(b, a)) return b;
    std::vector<std::string> all(a->begin(), a->end());
    for (const auto& n : *b) {
        if (std::find(all.begin(), all.end(), n) == all.end()) all.push_back(n);
    }
    std::sort(all.begin(), all.end(), natural_less);
    return make_params(std::move(all));
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
    int ta = total(a), tb = total(b);
    if (ta != tb) return ta > tb;
    return a > b;
}

ParamPoly::ParamPoly() : params_(empty_params()) {}

ParamPoly::ParamPoly(const Rational& c) : params_(empty_params()) {
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

ParamPoly::ParamPoly(ParamList params) : params_(std::move(params)) {}

ParamPoly::ParamPoly(ParamList params, const Rational& c) : params_(std::move(params)) {
    if (!c.is_zero()) terms_.emplace(Exponents(params_->size(), 0), c);
}

ParamPoly ParamPoly::variable(const ParamList& params, const std::string& name) {
    auto it = std::find(params->begin(), params->end(), name);
    if (it == params->end()) throw ParameterMismatch("unknown parameter '" + name + "'");
    Exponents e(params->size(), 0);
    e[static_cast<std::size_t>(it - params->begin())] = 1;
    return monomial(params, std::move(e), Rational(1));
}

ParamPoly ParamPoly::monomial(const ParamList& params, Exponents e, const Rational& c) {
    if (e.size() != params->size()) throw ArityError("exponent vector does not match parameters");
    ParamPoly p(params);
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
}

bool ParamPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Rational ParamPoly::constant_term() const {
    if (terms_.empty()) return Rational(0);
    auto it = terms_.rbegin();
    return total(it->first) == 0 ? it->second : Rational(0);
}

Rational ParamPoly::leading_coeff() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

const Exponents& ParamPoly::leading_exponents() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.begin()->first;
}

int ParamPoly::total_degree() const {
    return terms_.empty() ? -1 : total(terms_.begin()->first);
}

int ParamPoly::low_degree() const {
    return terms_.empty() ? -1 : total(terms_.rbegin()->first);
}

int ParamPoly::degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

ParamPoly ParamPoly::with_params(const ParamList& target) const {
    if (same_params(params_, target)) {
        ParamPoly p = *this;
        p.params_ = target;
        return p;
    }
    std::vector<int> map(params_->size());
    for (std::size_t i = 0; i < params_->size(); ++i) {
        auto it = std::find(target->begin(), target->end(), (*params_)[i]);
        map[i] = it == target->end() ? -1 : static_cast<int>(it - target->begin());
    }
    ParamPoly p(target);
    for (const auto& [e, c] : terms_) {
        Exponents ne(target->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (map[i] < 0) {
                throw ParameterMismatch("parameter '" + (*params_)[i] + "' missing from target list");
            }
            ne[static_cast<std::size_t>(map[i])] = e[i];
        }
        p.terms_.emplace(std::move(ne), c);
    }
    return p;
}

std::vector<std::string> ParamPoly::used_params() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < params_->size(); ++i) {
        for (const auto& [e, c] : terms_) {
            if (e[i] != 0) {
                out.push_back((*params_)[i]);
                break;
            }
        }
    }
    return out;
}

void unify(ParamPoly& a, ParamPoly& b) {
    if (same_params(a.params(), b.params())) return;
    ParamList m = merge_params(a.params(), b.params());
    if (!same_params(m, a.params())) a = a.with_params(m);
    if (!same_params(m, b.params())) b = b.with_params(m);
}

void ParamPoly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
    if (!same_params(params_, o.params_)) {
        ParamPoly b = o;
        unify(*this, b);
        for (const auto& [e, c] : b.terms_) add_term(e, c);
        return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) { return *this += -o; }

ParamPoly& ParamPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

ParamPoly operator*(const ParamPoly& a0, const ParamPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) {
        return ParamPoly(merge_params(a0.params(), b0.params()));
    }
    ParamPoly a = a0, b = b0;
    unify(a, b);
    ParamPoly p(a.params());
    Exponents e(a.nparams());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    }
    return p;
}

ParamPoly ParamPoly::pow(int e) const {
    if (e < 0) throw DomainError("negative power of a polynomial");
    ParamPoly r(params_, Rational(1)), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

std::optional<ParamPoly> ParamPoly::exact_div(const ParamPoly& b0) const {
    if (b0.is_zero()) throw DivisionByZero();
    ParamPoly p = *this, b = b0;
    unify(p, b);
    ParamPoly q(p.params());
    const Exponents& lb = b.leading_exponents();
    Rational lc = b.leading_coeff();
    Exponents e(lb.size());
    while (!p.is_zero()) {
        const Exponents& lp = p.leading_exponents();
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = lp[i] - lb[i];
            if (e[i] < 0) return std::nullopt;
        }
        Rational c = p.leading_coeff() / lc;
        ParamPoly t = ParamPoly::monomial(p.params(), e, c);
        q.add_term(e, c);
        p -= t * b;
    }
    return q;
}

Exponents ParamPoly::monomial_content() const {
    if (terms_.empty()) return Exponents(params_->size(), 0);
    Exponents m = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
}

ParamPoly ParamPoly::divide_monomial(const Exponents& m) const {
    ParamPoly p(params_);
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        for (std::size_t i = 0; i < ne.size(); ++i) {
            ne[i] -= m[i];
            if (ne[i] < 0) throw DomainError("monomial does not divide polynomial");
        }
        p.terms_.emplace(std::move(ne), c);
    }
    return p;
}

Rational ParamPoly::content() const {
    if (terms_.empty()) return Rational(1);
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.value().get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den_mpz_t());
    }
    return Rational(mpq_class(abs(g), l));
}

ParamPoly ParamPoly::homogeneous_part(int deg) const {
    ParamPoly p(params_);
    for (const auto& [e, c] : terms_) {
        if (total(e) == deg) p.terms_.emplace(e, c);
    }
    return p;
}

ParamPoly ParamPoly::truncate(int max_deg) const {
    ParamPoly p(params_);
    for (const auto& [e, c] : terms_) {
        if (total(e) <= max_deg) p.terms_.emplace(e, c);
    }
    return p;
}

Rational ParamPoly::evaluate(const std::map<std::string, Rational>& bindings) const {
    std::vector<Rational> vals(params_->size());
    std::vector<bool> have(params_->size(), false);
    for (std::size_t i = 0; i < params_->size(); ++i) {
        auto it = bindings.find((*params_)[i]);
        if (it != bindings.end()) {
            vals[i] = it->second;
            have[i] = true;
        }
    }
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!have[i]) throw ParameterMismatch("no binding for parameter '" + (*params_)[i] + "'");
            t *= vals[i].pow(e[i]);
        }
        sum += t;
    }
    return sum;
}

ParamPoly ParamPoly::partial_evaluate(const std::map<std::string, Rational>& bindings) const {
    std::vector<const Rational*> vals(params_->size(), nullptr);
    for (std::size_t i = 0; i < params_->size(); ++i) {
        auto it = bindings.find((*params_)[i]);
        if (it != bindings.end()) vals[i] = &it->second;
    }
    ParamPoly p(params_);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        Exponents ne = e;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (vals[i] && e[i] != 0) {
                t *= vals[i]->pow(e[i]);
                ne[i] = 0;
            }
        }
        p.add_term(ne, t);
    }
    return p;
}

bool operator==(const ParamPoly& a, const ParamPoly& b) {
    if (same_params(a.params_, b.params_)) return a.terms_ == b.terms_;
    ParamPoly x = a, y = b;
    unify(x, y);
    return x.terms_ == y.terms_;
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool constant = total(e) == 0;
        Rational mag = c.abs();
        if (c.sign() < 0) os << "-";
        else if (!first) os << "+";
        first = false;
        bool need_star = false;
        if (constant || !mag.is_one()) {
            os << mag;
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            os << (*params_)[i];
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace linfty
