#include "linfty/linalg.hpp"

namespace linfty {

namespace {

std::vector<std::vector<mpz_class>> integer_rows(const Matrix<Rational>& m) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            a[i][j] = m(i, j).value().get_num() * (l / m(i, j).value().get_den());
        }
    }
    return a;
}

}  // namespace

std::size_t rank_fraction_free(const Matrix<Rational>& m) {
    auto a = integer_rows(m);
    std::size_t rows = m.rows(), cols = m.cols();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        }
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

Rational determinant_fraction_free(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    Rational scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
        scale *= Rational(l);
    }
    auto a = integer_rows(m);
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        for (std::size_t i = c; i < n; ++i) {
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        }
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    return Rational(mpz_class(a[n - 1][n - 1] * sign)) / scale;
}

Matrix<Rational> to_rational(const Matrix<RatFun>& m) {
    return m.map([](const RatFun& x) { return x.to_rational(); });
}

Matrix<RatFun> to_ratfun(const Matrix<Rational>& m) {
    return m.map([](const Rational& x) { return RatFun(x); });
}

std::vector<Rational> to_rational(const std::vector<RatFun>& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.to_rational());
    return out;
}

std::vector<RatFun> to_ratfun(const std::vector<Rational>& v) {
    std::vector<RatFun> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(RatFun(x));
    return out;
}

}  // namespace linfty
