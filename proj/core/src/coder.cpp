#include "linfty/coder.hpp"

#include "linfty/errors.hpp"

namespace linfty {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Sign of rewriting e^J as e^A e^{J-A}: one factor -1 for every pair of an
// odd letter x of A and an odd letter y of J-A with y < x.
int split_sign(const MultiIndex& a, const MultiIndex& rest, const GradedSpace& sp) {
    int odd_before = 0;
    int swaps = 0;
    for (int i = 0; i < sp.dim(); ++i) {
        if (!sp.is_odd(i)) continue;
        swaps += a[idx(i)] * odd_before;
        odd_before += rest[idx(i)];
    }
    return (swaps & 1) ? -1 : 1;
}

// Sign of e_b e^R = sign e^{R+1_b}; 0 if b is odd and already present.
int insert_sign(int b, const MultiIndex& r, const GradedSpace& sp) {
    if (!sp.is_odd(b)) return 1;
    if (r[idx(b)] > 0) return 0;
    int n = 0;
    for (int i = 0; i < b; ++i) {
        if (sp.is_odd(i)) n += r[idx(i)];
    }
    return (n & 1) ? -1 : 1;
}

Rational multi_factorial(const MultiIndex& m) {
    Rational f(1);
    for (int e : m) f *= factorial(e);
    return f;
}

}  // namespace

int word_product_sign(const MultiIndex& a, const MultiIndex& b, const GradedSpace& sp) {
    for (int i = 0; i < sp.dim(); ++i) {
        if (sp.is_odd(i) && a[idx(i)] + b[idx(i)] > 1) return 0;
    }
    // e^a e^b: an odd letter of b passes every odd letter of a with larger index.
    int swaps = 0;
    int odd_after = 0;
    for (int i = sp.dim() - 1; i >= 0; --i) {
        if (!sp.is_odd(i)) continue;
        swaps += b[idx(i)] * odd_after;
        odd_after += a[idx(i)];
    }
    return (swaps & 1) ? -1 : 1;
}

SymElement extend_eval(const Coderivation& f, const MultiIndex& w) {
    const GradedSpace& sp = f.space();
    if (static_cast<int>(w.size()) != sp.dim()) throw ArityError("word arity does not match the space");
    SymElement out;
    if (!is_valid_monomial(w, sp)) return out;
    MultiIndex rest(w.size());
    for (const auto& [c, v] : f.terms()) {
        bool fits = true;
        for (std::size_t i = 0; i < w.size(); ++i) {
            rest[i] = w[i] - c.exponents[i];
            if (rest[i] < 0) fits = false;
        }
        if (!fits) continue;
        Rational mult(1);
        for (std::size_t i = 0; i < w.size(); ++i) mult *= binomial(w[i], c.exponents[i]);
        mult *= multi_factorial(c.exponents);
        int s = split_sign(c.exponents, rest, sp) * insert_sign(c.target, rest, sp);
        if (s == 0) continue;
        MultiIndex outw = rest;
        outw[idx(c.target)] += 1;
        RatFun term = v * RatFun(mult * Rational(s));
        auto [it, inserted] = out.try_emplace(outw, term);
        if (!inserted) {
            it->second += term;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

SymElement extend_apply(const Coderivation& f, const SymElement& x) {
    SymElement out;
    for (const auto& [w, c] : x) {
        for (const auto& [w2, c2] : extend_eval(f, w)) {
            RatFun t = c * c2;
            auto [it, inserted] = out.try_emplace(w2, t);
            if (!inserted) {
                it->second += t;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

Coderivation compose(const Coderivation& f, const Coderivation& g, int max_arity) {
    const GradedSpace& sp = f.space();
    Coderivation out(sp);
    if (f.is_zero() || g.is_zero()) return out;
    if (!(sp == g.space())) throw DomainError("compose: coderivations on different spaces");
    MultiIndex rest(idx(sp.dim()));
    MultiIndex input(idx(sp.dim()));
    for (const auto& [fc, fv] : f.terms()) {
        if (!is_valid_monomial(fc.exponents, sp)) continue;
        for (const auto& [gc, gv] : g.terms()) {
            int b = gc.target;
            int ib = fc.exponents[idx(b)];
            if (ib == 0) continue;
            if (fc.arity() + gc.arity() - 1 > max_arity) continue;
            if (!is_valid_monomial(gc.exponents, sp)) continue;
            // (f o g^)(e^J) is nonzero only for J = I + K - 1_b.
            rest = fc.exponents;
            rest[idx(b)] -= 1;
            for (std::size_t i = 0; i < input.size(); ++i) input[i] = rest[i] + gc.exponents[i];
            if (!is_valid_monomial(input, sp)) continue;
            int s = split_sign(gc.exponents, rest, sp) * insert_sign(b, rest, sp);
            if (s == 0) continue;
            out.add(BasisCochain{input, fc.target}, fv * gv * RatFun(Rational(ib * s)));
        }
    }
    return out;
}

Coderivation bracket(const Coderivation& f, const Coderivation& g, int max_arity) {
    const GradedSpace& sp = f.space();
    Coderivation out(sp);
    if (f.is_zero() || g.is_zero()) return out;
    if (!(sp == g.space())) throw DomainError("bracket: coderivations on different spaces");
    // Split by parity so the sign (-1)^{|f||g|} is uniform per block.
    Coderivation fp[2] = {Coderivation(sp), Coderivation(sp)};
    Coderivation gp[2] = {Coderivation(sp), Coderivation(sp)};
    for (const auto& [c, v] : f.terms()) fp[parity(c, sp)].add(c, v);
    for (const auto& [c, v] : g.terms()) gp[parity(c, sp)].add(c, v);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (fp[a].is_zero() || gp[b].is_zero()) continue;
            out += compose(fp[a], gp[b], max_arity);
            Coderivation back = compose(gp[b], fp[a], max_arity);
            if (a * b == 1) out += back;
            else out -= back;
        }
    }
    return out;
}

Coderivation exp_ad(const Coderivation& phi, const Coderivation& d, int cutoff) {
    const GradedSpace& sp = d.space();
    for (const auto& [c, v] : phi.terms()) {
        if (parity(c, sp) != 0) throw DomainError("exp_ad: generator must be even");
        if (sp.mode() == Grading::Z && internal_degree(c, sp) != 0) {
            throw DomainError("exp_ad: generator must have internal degree 0");
        }
        if (c.arity() < 2) throw DomainError("exp_ad: generator must have exterior degree at least 2");
    }
    if (d.max_arity() > cutoff) {
        throw CutoffError("exp_ad: cutoff " + std::to_string(cutoff) + " is below the exterior degree " +
                          std::to_string(d.max_arity()) + " of the coderivation");
    }
    Coderivation result = d;
    Coderivation term = d;
    for (int i = 1; !term.is_zero(); ++i) {
        term = bracket(phi, term, cutoff) * RatFun(Rational(-1, i));
        result += term;
    }
    return result;
}

}  // namespace linfty
