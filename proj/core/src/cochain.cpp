#include "linfty/cochain.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace linfty {

int BasisCochain::arity() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

int degree(const MultiIndex& m, const GradedSpace& sp) {
    int d = 0;
    for (int i = 0; i < sp.dim(); ++i) d += m[static_cast<std::size_t>(i)] * sp.degree(i);
    return d;
}

int parity(const MultiIndex& m, const GradedSpace& sp) {
    int p = 0;
    for (int i = 0; i < sp.dim(); ++i) p += m[static_cast<std::size_t>(i)] * sp.parity(i);
    return mod2(p);
}

int internal_degree(const BasisCochain& c, const GradedSpace& sp) {
    if (c.target < 0 || c.target >= sp.dim()) throw ArityError("target index out of range");
    int s = sp.degree(c.target) - degree(c.exponents, sp);
    return sp.mode() == Grading::Z2 ? mod2(s) : s;
}

int parity(const BasisCochain& c, const GradedSpace& sp) {
    return mod2(sp.parity(c.target) + parity(c.exponents, sp));
}

bool is_valid_monomial(const MultiIndex& m, const GradedSpace& sp) {
    for (int i = 0; i < sp.dim(); ++i) {
        int e = m[static_cast<std::size_t>(i)];
        if (e < 0 || (sp.is_odd(i) && e > 1)) return false;
    }
    return true;
}

std::vector<MultiIndex> enumerate_words(const GradedSpace& sp, int r) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(sp.dim()), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == sp.dim() - 1) {
            if (sp.is_odd(i) && left > 1) return;
            cur[static_cast<std::size_t>(i)] = left;
            out.push_back(cur);
            return;
        }
        int top = sp.is_odd(i) ? std::min(left, 1) : left;
        for (int e = top; e >= 0; --e) {
            cur[static_cast<std::size_t>(i)] = e;
            rec(i + 1, left - e);
        }
    };
    if (r >= 0) rec(0, r);
    return out;
}

std::vector<BasisCochain> enumerate_cochain_basis(const GradedSpace& sp, int r, int s) {
    if (r < 1) throw DomainError("exterior degree must be at least 1");
    std::vector<MultiIndex> words = enumerate_words(sp, r);
    std::vector<BasisCochain> out;
    int want = sp.mode() == Grading::Z2 ? mod2(s) : s;
    for (int t = 0; t < sp.dim(); ++t) {
        for (const auto& w : words) {
            BasisCochain c{w, t};
            if (internal_degree(c, sp) == want) out.push_back(std::move(c));
        }
    }
    return out;
}

Coderivation Coderivation::basis(const GradedSpace& sp, const BasisCochain& c, const RatFun& coeff) {
    Coderivation d(sp);
    d.add(c, coeff);
    return d;
}

void Coderivation::check(const BasisCochain& c) const {
    if (static_cast<int>(c.exponents.size()) != space_.dim()) {
        throw ArityError("exponent vector has " + std::to_string(c.exponents.size()) +
                         " entries but the space has dimension " + std::to_string(space_.dim()));
    }
    if (c.target < 0 || c.target >= space_.dim()) throw ArityError("target index out of range");
    for (int e : c.exponents) {
        if (e < 0) throw ArityError("negative exponent");
    }
    if (c.arity() < 1) throw ArityError("cochain must have exterior degree at least 1");
}

void Coderivation::add(const BasisCochain& c, const RatFun& coeff) {
    if (coeff.is_zero()) return;
    check(c);
    auto [it, inserted] = terms_.try_emplace(c, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

RatFun Coderivation::coefficient(const BasisCochain& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? RatFun(0) : it->second;
}

int Coderivation::order() const {
    int k = 0;
    for (const auto& [c, v] : terms_) {
        int r = c.arity();
        if (k == 0 || r < k) k = r;
    }
    return k;
}

int Coderivation::max_arity() const {
    int k = 0;
    for (const auto& [c, v] : terms_) k = std::max(k, c.arity());
    return k;
}

std::set<int> Coderivation::arities() const {
    std::set<int> s;
    for (const auto& [c, v] : terms_) s.insert(c.arity());
    return s;
}

Coderivation Coderivation::component(int r) const {
    Coderivation d(space_);
    for (const auto& [c, v] : terms_) {
        if (c.arity() == r) d.terms_.emplace(c, v);
    }
    return d;
}

Coderivation Coderivation::truncate(int max_r) const {
    Coderivation d(space_);
    for (const auto& [c, v] : terms_) {
        if (c.arity() <= max_r) d.terms_.emplace(c, v);
    }
    return d;
}

Coderivation Coderivation::tail(int r) const {
    Coderivation d(space_);
    for (const auto& [c, v] : terms_) {
        if (c.arity() >= r) d.terms_.emplace(c, v);
    }
    return d;
}

std::optional<int> Coderivation::homogeneous_internal_degree() const {
    std::optional<int> s;
    for (const auto& [c, v] : terms_) {
        int t = internal_degree(c, space_);
        if (s && *s != t) return std::nullopt;
        s = t;
    }
    return s;
}

std::optional<int> Coderivation::homogeneous_parity() const {
    std::optional<int> p;
    for (const auto& [c, v] : terms_) {
        int t = parity(c, space_);
        if (p && *p != t) return std::nullopt;
        p = t;
    }
    return p;
}

bool Coderivation::is_numeric() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_numeric(); });
}

ParamList Coderivation::params() const {
    ParamList p = make_params({});
    for (const auto& [c, v] : terms_) p = merge_params(p, v.params());
    return p;
}

Coderivation Coderivation::operator-() const {
    Coderivation d = *this;
    for (auto& [c, v] : d.terms_) v = -v;
    return d;
}

Coderivation& Coderivation::operator+=(const Coderivation& o) {
    if (!(space_ == o.space_) && !o.is_zero()) {
        if (terms_.empty() && space_.degrees().empty()) {
            space_ = o.space_;
        } else {
            throw DomainError("coderivations live on different spaces");
        }
    }
    for (const auto& [c, v] : o.terms_) add(c, v);
    return *this;
}

Coderivation& Coderivation::operator-=(const Coderivation& o) { return *this += -o; }

Coderivation& Coderivation::operator*=(const RatFun& k) {
    if (k.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= k;
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
    return *this;
}

Coderivation Coderivation::partial_substitute(const std::map<std::string, Rational>& bindings) const {
    return map_coefficients([&](const RatFun& v) { return v.partial_substitute(bindings); });
}

Coderivation Coderivation::compose_params(const std::map<std::string, RatFun>& values) const {
    return map_coefficients([&](const RatFun& v) { return v.compose(values); });
}

Coderivation Coderivation::with_params(const ParamList& params) const {
    return map_coefficients([&](const RatFun& v) { return v.with_params(params); });
}

bool operator==(const Coderivation& a, const Coderivation& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
    }
    return true;
}

std::vector<RatFun> Coderivation::coordinates(const std::vector<BasisCochain>& basis) const {
    std::vector<RatFun> out(basis.size());
    std::size_t found = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto it = terms_.find(basis[i]);
        if (it != terms_.end()) {
            out[i] = it->second;
            ++found;
        }
    }
    if (found != terms_.size()) throw DomainError("coderivation has terms outside the given basis");
    return out;
}

Coderivation Coderivation::from_coordinates(const GradedSpace& sp, const std::vector<BasisCochain>& basis,
                                            const std::vector<RatFun>& coords) {
    Coderivation d(sp);
    for (std::size_t i = 0; i < basis.size(); ++i) d.add(basis[i], coords[i]);
    return d;
}

}  // namespace linfty
