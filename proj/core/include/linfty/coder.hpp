#pragma once

#include "linfty/cochain.hpp"

#include <climits>
#include <map>

namespace linfty {

// Element of S(W): monomial e^J (letters in index order) -> coefficient.
using SymElement = std::map<MultiIndex, RatFun, DescLex>;

// Sign s with e^a * e^b = s e^{a+b}; 0 when an odd letter would repeat.
// Only transpositions of two odd letters contribute a factor -1.
int word_product_sign(const MultiIndex& a, const MultiIndex& b, const GradedSpace& sp);

// Value of the coderivation extension of f on the word e^w:
//   f^(e^J) = sum_{A <= J} C(J,A) eps(A, J-A) f(e^A) e^{J-A},
// with C(J,A) the product of binomials and eps the sign of moving the
// letters of e^A to the front.
SymElement extend_eval(const Coderivation& f, const MultiIndex& w);
// Linear extension of extend_eval.
SymElement extend_apply(const Coderivation& f, const SymElement& x);

// The cochain f o g^ (corestriction of the composite).
Coderivation compose(const Coderivation& f, const Coderivation& g, int max_arity = INT_MAX);
// [f,g] = f o g^ - (-1)^{|f||g|} g o f^, term by term in the parities.
// Terms of exterior degree above max_arity are not generated.
Coderivation bracket(const Coderivation& f, const Coderivation& g, int max_arity = INT_MAX);

// sum_i (-ad_phi)^i d / i!, dropping generated terms above cutoff.
// phi must be even (degree 0 in Z mode) with every term of exterior degree >= 2.
Coderivation exp_ad(const Coderivation& phi, const Coderivation& d, int cutoff);

}  // namespace linfty
