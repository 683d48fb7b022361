#pragma once

#include "linfty/errors.hpp"
#include "linfty/rational.hpp"
#include "linfty/ratfun.hpp"

#include <optional>
#include <vector>

namespace linfty {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows[0].size();
        Matrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw DomainError("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DomainError("matrix shape mismatch");
        Matrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (!o(k, j).is_zero()) m(i, j) += x * o(k, j);
                }
            }
        }
        return m;
    }
    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw DomainError("matrix shape mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
            }
        }
        return out;
    }
    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        }
        return m;
    }
    bool is_zero() const {
        for (const auto& x : a_) {
            if (!x.is_zero()) return false;
        }
        return true;
    }
    template <class F>
    auto map(F f) const {
        using U = decltype(f(std::declval<const T&>()));
        Matrix<U> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
        }
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.a_.size(); ++i) {
            if (!(a.a_[i] == b.a_[i])) return false;
        }
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

inline std::size_t pivot_cost(const Rational&) { return 0; }
inline std::size_t pivot_cost(const RatFun& x) {
    if (x.is_numeric()) return 0;
    return 16 + x.num().terms().size() + x.den().terms().size();
}

template <class T>
struct RowEchelon {
    Matrix<T> m;                   // reduced rows; only the first pivots.size() are nonzero
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form. Within a column the cheapest nonzero entry is
// used as pivot, ties going to the topmost row.
template <class T>
RowEchelon<T> rref(Matrix<T> m) {
    RowEchelon<T> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = m.rows();
        std::size_t best_cost = 0;
        for (std::size_t i = r; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            std::size_t cost = pivot_cost(m(i, c));
            if (best == m.rows() || cost < best_cost) {
                best = i;
                best_cost = cost;
            }
        }
        if (best == m.rows()) continue;
        if (best != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(r, j));
        }
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) {
            if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
    return rref(m).pivots.size();
}

// Rank over Q by Bareiss elimination on the row-scaled integer matrix.
std::size_t rank_fraction_free(const Matrix<Rational>& m);
Rational determinant_fraction_free(const Matrix<Rational>& m);

// Basis of the null space, one vector per free column (value 1 there).
template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& a) {
    RowEchelon<T> e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> out;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(a.cols(), T(0));
        v[f] = T(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            if (!e.m(i, f).is_zero()) v[e.pivots[i]] = -e.m(i, f);
        }
        out.push_back(std::move(v));
    }
    return out;
}

// A solution of a x = b with all free variables zero, if one exists.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RowEchelon<T> e = rref(aug);
    std::vector<T> x(a.cols(), T(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == a.cols()) return std::nullopt;
        x[e.pivots[i]] = e.m(i, a.cols());
    }
    return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw DomainError("inverse of a non-square matrix");
    std::size_t n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    RowEchelon<T> e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.m(i, n + j);
    }
    return inv;
}

template <class T>
T determinant(Matrix<T> m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    std::size_t n = m.rows();
    T det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        std::size_t best_cost = 0;
        for (std::size_t i = c; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            std::size_t cost = pivot_cost(m(i, c));
            if (p == n || cost < best_cost) {
                p = i;
                best_cost = cost;
            }
        }
        if (p == n) return T(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        T inv = T(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            T f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) {
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
            }
        }
    }
    return det;
}

// Reduces v modulo the row space of an echelon form (zeroes its pivot
// coordinates).
template <class T>
std::vector<T> reduce_modulo(const RowEchelon<T>& e, std::vector<T> v) {
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        const T f = v[e.pivots[i]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!e.m(i, j).is_zero()) v[j] -= f * e.m(i, j);
        }
    }
    return v;
}

template <class T>
bool is_zero_vector(const std::vector<T>& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Matrix<Rational> to_rational(const Matrix<RatFun>& m);
Matrix<RatFun> to_ratfun(const Matrix<Rational>& m);
std::vector<Rational> to_rational(const std::vector<RatFun>& v);
std::vector<RatFun> to_ratfun(const std::vector<Rational>& v);

}  // namespace linfty
