#pragma once

#include "linfty/coder.hpp"
#include "linfty/linalg.hpp"

#include <vector>

namespace linfty {

// Invertible linear map of W, column j holding g(e_j). Z mode requires the
// map to preserve degrees, Z2 mode to preserve parity.
class LinearAuto {
public:
    LinearAuto(const GradedSpace& sp, Matrix<RatFun> m);

    static LinearAuto identity(const GradedSpace& sp);
    static LinearAuto diagonal(const GradedSpace& sp, const std::vector<RatFun>& diag);
    // g(e_j) = e_{perm[j]}.
    static LinearAuto permutation(const GradedSpace& sp, const std::vector<int>& perm);

    const GradedSpace& space() const { return sp_; }
    const Matrix<RatFun>& matrix() const { return m_; }
    const Matrix<RatFun>& inverse_matrix() const { return inv_; }

    // (g*h)(w) = g(h(w)).
    friend LinearAuto operator*(const LinearAuto& g, const LinearAuto& h);

    std::string str() const;

private:
    GradedSpace sp_;
    Matrix<RatFun> m_;
    Matrix<RatFun> inv_;
};

// Image of e^J under the multiplicative extension of g.
SymElement extend_linear(const LinearAuto& g, const MultiIndex& word);
// Matrix of the extension on S^k(W) in the canonical word order.
Matrix<RatFun> linear_matrix_on_Sk(const LinearAuto& g, int k);
// g*(d) = g^{-1} o d o g^.
Coderivation linear_action(const LinearAuto& g, const Coderivation& d);
// Matrix of the pure degree-k part of d: rows e_t, columns rank-k words,
// entry = coefficient of phi^J_t (factorials not included).
Matrix<RatFun> coefficient_matrix(const Coderivation& d, int k);

}  // namespace linfty
