#include "linfty/cohomology.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <map>

namespace linfty {

namespace {

using Index = std::map<BasisCochain, std::size_t, CanonicalLess>;

Index index_of(const std::vector<BasisCochain>& basis) {
    Index idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    return idx;
}

Matrix<Rational> numeric(const Matrix<RatFun>& m) {
    try {
        return to_rational(m);
    } catch (const SymbolicCoefficients&) {
        throw SymbolicCoefficients("cohomology needs numeric coefficients; substitute values for the parameters first");
    }
}

Coderivation from_vector(const GradedSpace& sp, const std::vector<BasisCochain>& basis,
                         const std::vector<Rational>& v) {
    Coderivation out(sp);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!v[i].is_zero()) out.add(basis[i], RatFun(v[i]));
    }
    return out;
}

// Rows of the echelon form that are nonzero.
std::vector<std::vector<Rational>> echelon_rows(const RowEchelon<Rational>& e) {
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.m.row(i));
    return out;
}

Matrix<Rational> stack(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    if (rows.empty()) return Matrix<Rational>(0, cols);
    return Matrix<Rational>::from_rows(rows);
}

// Leading representatives: reduce the cocycle leading space modulo the
// coboundary leading space (earliest pivots) and take the echelon form of
// what remains.
std::vector<std::vector<Rational>> quotient_basis(const std::vector<std::vector<Rational>>& cocycles,
                                                  const std::vector<std::vector<Rational>>& coboundaries,
                                                  std::size_t dim) {
    RowEchelon<Rational> b = rref(stack(coboundaries, dim));
    std::vector<std::vector<Rational>> reduced;
    for (const auto& z : cocycles) {
        auto r = reduce_modulo(b, z);
        if (!is_zero_vector(r)) reduced.push_back(std::move(r));
    }
    return echelon_rows(rref(stack(reduced, dim)));
}

int default_cutoff(const Coderivation& d, int n) {
    int k = d.order(), top = d.max_arity();
    return n + 2 * (top - k) + 2;
}

}  // namespace

int cochain_shift(const Coderivation& d) {
    const GradedSpace& sp = d.space();
    if (d.is_zero()) return 1;
    if (sp.mode() == Grading::Z) {
        auto deg = d.homogeneous_internal_degree();
        if (!deg) throw DomainError("coderivation is not homogeneous in internal degree");
        return *deg;
    }
    auto p = d.homogeneous_parity();
    if (!p) throw DomainError("coderivation is not homogeneous in parity");
    return *p;
}

int shifted_degree(const GradedSpace& sp, int s, int shift) {
    return sp.mode() == Grading::Z ? s + shift : mod2(s + shift);
}

void require_codifferential(const Coderivation& d) {
    if (d.is_zero()) throw NotACodifferential("the zero coderivation is not a codifferential");
    int shift = cochain_shift(d);
    if (shift != 1) {
        throw NotACodifferential("a codifferential must be odd (degree 1 in Z mode)");
    }
    if (!bracket(d, d).is_zero()) throw NotACodifferential("[d,d] does not vanish");
}

std::vector<BasisCochain> cochain_basis_range(const GradedSpace& sp, int r1, int r2, int s) {
    std::vector<BasisCochain> out;
    for (int r = std::max(r1, 1); r <= r2; ++r) {
        auto part = enumerate_cochain_basis(sp, r, s);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Matrix<RatFun> bracket_matrix(const Coderivation& d, const std::vector<BasisCochain>& source,
                              const std::vector<BasisCochain>& target) {
    Index rows = index_of(target);
    int rmax = 0;
    for (const auto& c : target) rmax = std::max(rmax, c.arity());
    Matrix<RatFun> m(target.size(), source.size());
    for (std::size_t j = 0; j < source.size(); ++j) {
        Coderivation img = bracket(d, Coderivation::basis(d.space(), source[j]), rmax);
        for (const auto& [c, v] : img.terms()) {
            auto it = rows.find(c);
            if (it != rows.end()) m(it->second, j) = v;
        }
    }
    return m;
}

CobMatrix coboundary_matrix(const Coderivation& d, int l, int s) {
    if (d.arities().size() != 1) throw DomainError("coboundary_matrix needs a coderivation of pure exterior degree");
    require_codifferential(d);
    const GradedSpace& sp = d.space();
    if (sp.mode() == Grading::Z2) s = mod2(s);
    int k = d.order();
    CobMatrix out;
    out.source_r = l;
    out.source_s = s;
    out.target_r = k + l - 1;
    out.target_s = shifted_degree(sp, s, cochain_shift(d));
    out.cols = l >= 1 ? enumerate_cochain_basis(sp, l, s) : std::vector<BasisCochain>{};
    out.rows = out.target_r >= 1 ? enumerate_cochain_basis(sp, out.target_r, out.target_s) : std::vector<BasisCochain>{};
    out.m = bracket_matrix(d, out.cols, out.rows);
    return out;
}

CohomologyBasis cohomology_basis(const Coderivation& d, int n, int s, int cutoff) {
    require_codifferential(d);
    if (!d.is_numeric()) {
        throw SymbolicCoefficients("cohomology needs numeric coefficients; substitute values for the parameters first");
    }
    if (n < 1) throw DomainError("exterior degree must be positive");
    const GradedSpace& sp = d.space();
    if (sp.mode() == Grading::Z2) s = mod2(s);
    const int k = d.order();
    const int top = d.max_arity();
    const int shift = cochain_shift(d);
    const int s_in = shifted_degree(sp, s, -shift);
    const int s_out = shifted_degree(sp, s, shift);

    CohomologyBasis out;
    out.n = n;
    out.s = s;
    out.filtered = top != k;
    out.cutoff = out.filtered ? (cutoff > 0 ? cutoff : default_cutoff(d, n)) : n;
    if (out.cutoff < n) throw CutoffError("cutoff below the requested exterior degree");
    const int R = out.cutoff;

    // Leading cocycle space: truncated cocycles in F^n projected to arity n.
    std::vector<BasisCochain> zsrc = cochain_basis_range(sp, n, R, s);
    std::vector<BasisCochain> zdst = cochain_basis_range(sp, n + k - 1, R + k - 1, s_out);
    std::vector<BasisCochain> lead = enumerate_cochain_basis(sp, n, s);
    const std::size_t nl = lead.size();
    Matrix<Rational> zm = numeric(bracket_matrix(d, zsrc, zdst));
    std::vector<std::vector<Rational>> zker = kernel_basis(zm);
    std::vector<std::vector<Rational>> zlead;
    for (const auto& v : zker) zlead.emplace_back(v.begin(), v.begin() + static_cast<long>(nl));
    out.cocycle_dimension = rank(stack(zlead, nl));

    // Leading coboundary space: D(gamma) whose components below n vanish.
    std::vector<std::vector<Rational>> blead;
    std::vector<std::vector<Rational>> bsrc_vectors;
    std::vector<BasisCochain> bsrc;
    if (n - k + 1 >= 1) {
        bsrc = cochain_basis_range(sp, 1, n - k + 1, s_in);
        std::vector<BasisCochain> low = cochain_basis_range(sp, 1, n - 1, s);
        std::vector<BasisCochain> rows = low;
        rows.insert(rows.end(), lead.begin(), lead.end());
        Matrix<Rational> bm = numeric(bracket_matrix(d, bsrc, rows));
        std::vector<std::vector<Rational>> gammas;
        if (low.empty()) {
            for (std::size_t j = 0; j < bsrc.size(); ++j) {
                std::vector<Rational> e(bsrc.size(), Rational(0));
                e[j] = Rational(1);
                gammas.push_back(std::move(e));
            }
        } else {
            Matrix<Rational> lowm(low.size(), bsrc.size());
            for (std::size_t i = 0; i < low.size(); ++i) {
                for (std::size_t j = 0; j < bsrc.size(); ++j) lowm(i, j) = bm(i, j);
            }
            gammas = kernel_basis(lowm);
        }
        // Images at arity n of each admissible gamma; keep an independent subset.
        Matrix<Rational> img(nl, gammas.size());
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            for (std::size_t i = 0; i < nl; ++i) {
                Rational acc(0);
                for (std::size_t j = 0; j < bsrc.size(); ++j) {
                    if (!gammas[g][j].is_zero() && !bm(low.size() + i, j).is_zero()) acc += gammas[g][j] * bm(low.size() + i, j);
                }
                img(i, g) = acc;
            }
        }
        RowEchelon<Rational> e = rref(img);
        for (std::size_t p : e.pivots) {
            blead.push_back(img.column(p));
            bsrc_vectors.push_back(gammas[p]);
        }
    }
    out.coboundary_dimension = blead.size();
    for (const auto& g : bsrc_vectors) {
        Coderivation pre = from_vector(sp, bsrc, g);
        out.coboundary_preimages.push_back({pre, bracket(d, pre)});
    }

    // Representatives and their lifts to truncated cocycles.
    std::vector<std::vector<Rational>> reps = quotient_basis(zlead, blead, nl);
    for (const auto& rho : reps) {
        if (!out.filtered) {
            out.representatives.push_back(from_vector(sp, lead, rho));
            continue;
        }
        Matrix<Rational> proj(nl, zker.size());
        for (std::size_t j = 0; j < zker.size(); ++j) {
            for (std::size_t i = 0; i < nl; ++i) proj(i, j) = zker[j][i];
        }
        auto c = solve(proj, rho);
        if (!c) throw DomainError("internal error: leading representative without a lift");
        std::vector<Rational> z(zsrc.size(), Rational(0));
        for (std::size_t j = 0; j < zker.size(); ++j) {
            if ((*c)[j].is_zero()) continue;
            for (std::size_t i = 0; i < zsrc.size(); ++i) z[i] += (*c)[j] * zker[j][i];
        }
        out.representatives.push_back(from_vector(sp, zsrc, z));
    }
    return out;
}

std::optional<Coderivation> is_coboundary(const Coderivation& d, const Coderivation& c) {
    require_codifferential(d);
    if (c.is_zero()) return Coderivation(d.space());
    if (!bracket(d, c).is_zero()) throw DomainError("not a cocycle: [d,c] does not vanish");
    const GradedSpace& sp = d.space();
    const int k = d.order(), top = d.max_arity();
    const int shift = cochain_shift(d);
    const int s = cochain_shift(c);
    const int s_in = shifted_degree(sp, s, -shift);
    const int hi = c.max_arity();
    if (hi - k + 1 < 1) return std::nullopt;
    std::vector<BasisCochain> src = cochain_basis_range(sp, 1, hi - k + 1, s_in);
    std::vector<BasisCochain> dst = cochain_basis_range(sp, 1, hi - k + top, s);
    Matrix<RatFun> m = bracket_matrix(d, src, dst);
    std::vector<RatFun> rhs = c.coordinates(dst);
    auto x = solve(m, rhs);
    if (!x) return std::nullopt;
    return Coderivation::from_coordinates(sp, src, *x);
}

}  // namespace linfty
