#include "linfty/normal_form.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace linfty {

namespace {

Matrix<Rational> numeric(const Matrix<RatFun>& m) {
    try {
        return to_rational(m);
    } catch (const SymbolicCoefficients&) {
        throw SymbolicCoefficients("normal forms need numeric coefficients; substitute values for the parameters first");
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

std::vector<long> exponent_row(const BasisCochain& c, int dim) {
    std::vector<long> w(c.exponents.begin(), c.exponents.end());
    w.resize(static_cast<std::size_t>(dim), 0);
    w[static_cast<std::size_t>(c.target)] -= 1;
    return w;
}

Rational power(const Rational& x, long e) { return e >= 0 ? x.pow(static_cast<int>(e)) : x.inverse().pow(static_cast<int>(-e)); }

// Rational h-th roots of q (h != 0): at most two (a positive and a negative one).
std::vector<Rational> rational_roots(const Rational& q, long h) {
    if (h < 0) return rational_roots(q.inverse(), -h);
    std::vector<Rational> out;
    if (q.is_zero()) return out;
    mpz_class n = abs(q.num()), d = q.den();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(h)) == 0) return out;
    if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(h)) == 0) return out;
    Rational r(mpq_class(rn, rd));
    if (q.sign() > 0) {
        out.push_back(r);
        if (h % 2 == 0) out.push_back(-r);
    } else if (h % 2 == 1) {
        out.push_back(-r);
    }
    return out;
}

struct Hermite {
    std::vector<std::vector<long>> h;  // rows x cols, column echelon
    std::vector<std::vector<long>> u;  // cols x cols unimodular, E U = H
    std::vector<int> pivot_col;        // per row, -1 when the row has no new pivot
};

Hermite column_hermite(std::vector<std::vector<long>> e, std::size_t cols) {
    Hermite out;
    std::vector<std::vector<long>> u(cols, std::vector<long>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
    auto col_op = [&](std::size_t dst, std::size_t src, long q) {
        for (auto& row : e) row[dst] -= q * row[src];
        for (auto& row : u) row[dst] -= q * row[src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto& row : e) std::swap(row[a], row[b]);
        for (auto& row : u) std::swap(row[a], row[b]);
    };
    std::size_t piv = 0;
    for (auto& row : e) {
        if (piv == cols) {
            out.pivot_col.push_back(-1);
            continue;
        }
        for (;;) {
            std::size_t best = cols;
            for (std::size_t c = piv; c < cols; ++c) {
                if (row[c] != 0 && (best == cols || std::labs(row[c]) < std::labs(row[best]))) best = c;
            }
            if (best == cols) break;
            col_swap(piv, best);
            bool done = true;
            for (std::size_t c = piv + 1; c < cols; ++c) {
                if (row[c] != 0) {
                    col_op(c, piv, row[c] / row[piv]);
                    if (row[c] != 0) done = false;
                }
            }
            if (done) break;
        }
        if (row[piv] != 0) {
            out.pivot_col.push_back(static_cast<int>(piv));
            ++piv;
        } else {
            out.pivot_col.push_back(-1);
        }
    }
    out.h = std::move(e);
    out.u = std::move(u);
    return out;
}

// Solves prod_c z_c^{h[t][c]} = rho_t row by row, branching over root signs.
bool solve_torus(const Hermite& hm, const std::vector<Rational>& rho, std::size_t t, std::vector<Rational>& z) {
    if (t == rho.size()) return true;
    const auto& row = hm.h[t];
    int pc = hm.pivot_col[t];
    Rational known(1);
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] == 0 || static_cast<int>(c) == pc) continue;
        known *= power(z[c], row[c]);
    }
    if (pc < 0) return known == rho[t] && solve_torus(hm, rho, t + 1, z);
    for (const Rational& r : rational_roots(rho[t] / known, row[static_cast<std::size_t>(pc)])) {
        z[static_cast<std::size_t>(pc)] = r;
        if (solve_torus(hm, rho, t + 1, z)) return true;
    }
    z[static_cast<std::size_t>(pc)] = Rational(1);
    return false;
}

}  // namespace

Coderivation apply_witness(const EquivWitness& w, const Coderivation& d) {
    Coderivation cur = d;
    for (const auto& step : w.chain) {
        if (step.is_linear()) {
            cur = linear_action(*step.linear, cur);
            if (w.cutoff > 0) cur = cur.truncate(w.cutoff);
        } else {
            if (w.cutoff <= 0) throw CutoffError("exponential witness steps need a positive cutoff");
            cur = exp_ad(step.gamma, cur, w.cutoff);
        }
    }
    return cur;
}

FilteredReduction reduce_filtered(const Coderivation& d, int cutoff) {
    if (d.is_zero()) throw NotACodifferential("the zero coderivation is not a codifferential");
    if (!d.is_numeric()) {
        throw SymbolicCoefficients("normal forms need numeric coefficients; substitute values for the parameters first");
    }
    const GradedSpace& sp = d.space();
    const int k = d.order();
    if (cutoff < k) throw CutoffError("cutoff below the leading order");
    const int s_out = cochain_shift(d);
    FilteredReduction out;
    out.cutoff = cutoff;
    Coderivation cur = d.truncate(cutoff);
    for (int n = k + 1; n <= cutoff; ++n) {
        Coderivation c = cur.component(n);
        if (c.is_zero()) continue;
        std::vector<BasisCochain> src = cochain_basis_range(sp, 2, n - k + 1, 0);
        if (src.empty()) continue;
        Coderivation lower = cur.truncate(n - 1);
        std::vector<BasisCochain> low = cochain_basis_range(sp, k + 1, n - 1, s_out);
        std::vector<BasisCochain> lead = enumerate_cochain_basis(sp, n, s_out);
        std::vector<BasisCochain> rows = low;
        rows.insert(rows.end(), lead.begin(), lead.end());
        Matrix<Rational> bm = numeric(bracket_matrix(lower, src, rows));

        std::vector<std::vector<Rational>> gammas;
        if (low.empty()) {
            for (std::size_t j = 0; j < src.size(); ++j) {
                std::vector<Rational> e(src.size(), Rational(0));
                e[j] = Rational(1);
                gammas.push_back(std::move(e));
            }
        } else {
            Matrix<Rational> lowm(low.size(), src.size());
            for (std::size_t i = 0; i < low.size(); ++i) {
                for (std::size_t j = 0; j < src.size(); ++j) lowm(i, j) = bm(i, j);
            }
            gammas = kernel_basis(lowm);
        }
        if (gammas.empty()) continue;
        const std::size_t nl = lead.size();
        Matrix<Rational> img(nl, gammas.size());
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            for (std::size_t i = 0; i < nl; ++i) {
                Rational acc(0);
                for (std::size_t j = 0; j < src.size(); ++j) {
                    if (!gammas[g][j].is_zero()) acc += gammas[g][j] * bm(low.size() + i, j);
                }
                img(i, g) = acc;
            }
        }
        RowEchelon<Rational> e = rref(img.transpose());
        std::vector<Rational> cv = to_rational(c.coordinates(lead));
        std::vector<Rational> rho = reduce_modulo(e, cv);
        std::vector<Rational> rhs(nl);
        for (std::size_t i = 0; i < nl; ++i) rhs[i] = rho[i] - cv[i];
        if (is_zero_vector(rhs)) continue;
        auto y = solve(img, rhs);
        if (!y) throw DomainError("internal error: reduction step without a preimage");
        std::vector<Rational> gv(src.size(), Rational(0));
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            if ((*y)[g].is_zero()) continue;
            for (std::size_t j = 0; j < src.size(); ++j) gv[j] += (*y)[g] * gammas[g][j];
        }
        Coderivation gamma = from_vector(sp, src, gv);
        cur = exp_ad(gamma, cur, cutoff);
        out.chain.push_back(gamma);
        if (!(cur.component(n) == from_vector(sp, lead, rho))) {
            throw DomainError("internal error: reduction step did not reach the representative");
        }
    }
    out.result = cur;
    return out;
}

std::optional<std::vector<Rational>> solve_diagonal(const Coderivation& from, const Coderivation& to) {
    if (!(from.space() == to.space())) throw DomainError("coderivations live on different spaces");
    if (from.size() != to.size()) return std::nullopt;
    const int dim = from.space().dim();
    std::vector<std::vector<long>> e;
    std::vector<Rational> rho;
    for (const auto& [c, v] : from.terms()) {
        RatFun w = to.coefficient(c);
        if (w.is_zero()) return std::nullopt;
        if (!v.is_numeric() || !w.is_numeric()) {
            throw SymbolicCoefficients("diagonal solve needs numeric coefficients");
        }
        e.push_back(exponent_row(c, dim));
        rho.push_back(w.to_rational() / v.to_rational());
    }
    Hermite hm = column_hermite(e, static_cast<std::size_t>(dim));
    std::vector<Rational> z(static_cast<std::size_t>(dim), Rational(1));
    if (!solve_torus(hm, rho, 0, z)) return std::nullopt;
    std::vector<Rational> p(static_cast<std::size_t>(dim), Rational(1));
    for (std::size_t j = 0; j < p.size(); ++j) {
        for (std::size_t i = 0; i < z.size(); ++i) p[j] *= power(z[i], hm.u[j][i]);
    }
    return p;
}

TorusInvariants torus_invariants(const Coderivation& d) {
    TorusInvariants out;
    const int dim = d.space().dim();
    std::vector<Rational> coeffs;
    for (const auto& [c, v] : d.terms()) {
        if (!v.is_numeric()) throw SymbolicCoefficients("torus invariants need numeric coefficients");
        out.support.push_back(c);
        coeffs.push_back(v.to_rational());
    }
    if (out.support.empty()) return out;
    // Relations: left kernel of the exponent matrix.
    Matrix<Rational> et(static_cast<std::size_t>(dim), out.support.size());
    for (std::size_t t = 0; t < out.support.size(); ++t) {
        std::vector<long> w = exponent_row(out.support[t], dim);
        for (std::size_t j = 0; j < w.size(); ++j) et(j, t) = Rational(w[j]);
    }
    for (const auto& v : kernel_basis(et)) {
        mpz_class l = 1;
        for (const auto& x : v) l = lcm(l, x.den());
        std::vector<long> n;
        for (const auto& x : v) n.push_back(mpz_class(x.num() * (l / x.den())).get_si());
        Rational val(1);
        for (std::size_t t = 0; t < n.size(); ++t) val *= power(coeffs[t], n[t]);
        out.relations.push_back(std::move(n));
        out.values.push_back(val);
    }
    return out;
}

}  // namespace linfty
