#include "linfty/linear_auto.hpp"

#include "linfty/errors.hpp"

#include <sstream>

namespace linfty {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

}  // namespace

LinearAuto::LinearAuto(const GradedSpace& sp, Matrix<RatFun> m) : sp_(sp), m_(std::move(m)) {
    std::size_t n = idx(sp.dim());
    if (m_.rows() != n || m_.cols() != n) throw ArityError("automorphism matrix has the wrong shape");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m_(i, j).is_zero()) continue;
            int a = static_cast<int>(i), b = static_cast<int>(j);
            bool ok = sp.mode() == Grading::Z ? sp.degree(a) == sp.degree(b) : sp.parity(a) == sp.parity(b);
            if (!ok) {
                throw DomainError(std::string("automorphism does not preserve the ") +
                                  (sp.mode() == Grading::Z ? "degree" : "parity") + " of e" + std::to_string(j + 1));
            }
        }
    }
    auto inv = inverse(m_);
    if (!inv) throw SingularAutomorphism("automorphism matrix is singular");
    inv_ = std::move(*inv);
}

LinearAuto LinearAuto::identity(const GradedSpace& sp) {
    return LinearAuto(sp, Matrix<RatFun>::identity(idx(sp.dim())));
}

LinearAuto LinearAuto::diagonal(const GradedSpace& sp, const std::vector<RatFun>& diag) {
    Matrix<RatFun> m(idx(sp.dim()), idx(sp.dim()));
    if (diag.size() != m.rows()) throw ArityError("diagonal has the wrong length");
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return LinearAuto(sp, std::move(m));
}

LinearAuto LinearAuto::permutation(const GradedSpace& sp, const std::vector<int>& perm) {
    Matrix<RatFun> m(idx(sp.dim()), idx(sp.dim()));
    if (perm.size() != m.rows()) throw ArityError("permutation has the wrong length");
    for (std::size_t j = 0; j < perm.size(); ++j) m(idx(perm[j]), j) = RatFun(1);
    return LinearAuto(sp, std::move(m));
}

LinearAuto operator*(const LinearAuto& g, const LinearAuto& h) {
    return LinearAuto(g.sp_, g.m_ * h.m_);
}

std::string LinearAuto::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m_.rows(); ++i) {
        os << (i ? ";" : "");
        for (std::size_t j = 0; j < m_.cols(); ++j) os << (j ? "," : "") << m_(i, j).str();
    }
    os << "]";
    return os.str();
}

SymElement extend_linear(const LinearAuto& g, const MultiIndex& word) {
    const GradedSpace& sp = g.space();
    SymElement cur;
    cur.emplace(MultiIndex(idx(sp.dim()), 0), RatFun(1));
    MultiIndex unit(idx(sp.dim()), 0);
    for (int i = 0; i < sp.dim(); ++i) {
        for (int rep = 0; rep < word[idx(i)]; ++rep) {
            SymElement next;
            for (const auto& [w, c] : cur) {
                for (int m = 0; m < sp.dim(); ++m) {
                    const RatFun& gm = g.matrix()(idx(m), idx(i));
                    if (gm.is_zero()) continue;
                    unit.assign(idx(sp.dim()), 0);
                    unit[idx(m)] = 1;
                    int s = word_product_sign(w, unit, sp);
                    if (s == 0) continue;
                    MultiIndex nw = w;
                    nw[idx(m)] += 1;
                    RatFun t = c * gm * RatFun(s);
                    auto [it, inserted] = next.try_emplace(nw, t);
                    if (!inserted) {
                        it->second += t;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
            cur = std::move(next);
        }
    }
    return cur;
}

Matrix<RatFun> linear_matrix_on_Sk(const LinearAuto& g, int k) {
    if (k < 1) throw DomainError("linear_matrix_on_Sk: k must be at least 1");
    std::vector<MultiIndex> words = enumerate_words(g.space(), k);
    std::map<MultiIndex, std::size_t> pos;
    for (std::size_t i = 0; i < words.size(); ++i) pos[words[i]] = i;
    Matrix<RatFun> q(words.size(), words.size());
    for (std::size_t j = 0; j < words.size(); ++j) {
        for (const auto& [w, c] : extend_linear(g, words[j])) q(pos.at(w), j) = c;
    }
    return q;
}

Coderivation linear_action(const LinearAuto& g, const Coderivation& d) {
    const GradedSpace& sp = d.space();
    if (!(sp == g.space())) throw DomainError("automorphism and coderivation live on different spaces");
    Coderivation out(sp);
    for (int k : d.arities()) {
        Coderivation dk = d.component(k);
        for (const auto& word : enumerate_words(sp, k)) {
            std::vector<RatFun> v(idx(sp.dim()), RatFun(0));
            for (const auto& [w, c] : extend_linear(g, word)) {
                for (int t = 0; t < sp.dim(); ++t) {
                    RatFun a = dk.coefficient(BasisCochain{w, t});
                    if (a.is_zero()) continue;
                    Rational f(1);
                    for (int e : w) f *= factorial(e);
                    v[idx(t)] += c * a * RatFun(f);
                }
            }
            Rational jf(1);
            for (int e : word) jf *= factorial(e);
            RatFun scale(jf.inverse());
            for (int t = 0; t < sp.dim(); ++t) {
                RatFun s(0);
                for (int u = 0; u < sp.dim(); ++u) {
                    const RatFun& gi = g.inverse_matrix()(idx(t), idx(u));
                    if (!gi.is_zero() && !v[idx(u)].is_zero()) s += gi * v[idx(u)];
                }
                out.add(BasisCochain{word, t}, s * scale);
            }
        }
    }
    return out;
}

Matrix<RatFun> coefficient_matrix(const Coderivation& d, int k) {
    const GradedSpace& sp = d.space();
    std::vector<MultiIndex> words = enumerate_words(sp, k);
    Matrix<RatFun> a(idx(sp.dim()), words.size());
    for (std::size_t j = 0; j < words.size(); ++j) {
        for (int t = 0; t < sp.dim(); ++t) a(idx(t), j) = d.coefficient(BasisCochain{words[j], t});
    }
    return a;
}

}  // namespace linfty
