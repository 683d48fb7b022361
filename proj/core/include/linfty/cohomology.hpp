#pragma once

#include "linfty/coder.hpp"
#include "linfty/linalg.hpp"

#include <optional>
#include <vector>

namespace linfty {

// Matrix of phi -> [d, phi] from C^l_s to C^{k+l-1}_{s+|d|}. Entry (i,j) is
// the coefficient of rows[i] in D(cols[j]).
struct CobMatrix {
    int source_r = 0, source_s = 0;
    int target_r = 0, target_s = 0;
    std::vector<BasisCochain> rows;
    std::vector<BasisCochain> cols;
    Matrix<RatFun> m;
};

// Requires d of pure exterior degree with [d,d] = 0 (NotACodifferential
// otherwise). Symbolic coefficients are allowed.
CobMatrix coboundary_matrix(const Coderivation& d, int l, int s);

// Matrix of phi -> [d, phi] between explicit bases, without any checks.
Matrix<RatFun> bracket_matrix(const Coderivation& d, const std::vector<BasisCochain>& source,
                              const std::vector<BasisCochain>& target);

struct CoboundaryPair {
    Coderivation preimage;
    Coderivation image;
};

// Cohomology in exterior degree n and internal degree (or parity) s.
// For d of pure order k this is ker/im of the graded coboundary maps. For a
// non-homogeneous d it is the associated graded piece for the filtration by
// exterior degree, computed on the complex truncated at `cutoff`; the
// representatives are then cocycles up to that cutoff whose lowest
// component spans the graded piece.
struct CohomologyBasis {
    int n = 0, s = 0;
    bool filtered = false;
    int cutoff = 0;
    std::vector<Coderivation> representatives;
    std::vector<CoboundaryPair> coboundary_preimages;
    std::size_t cocycle_dimension = 0;
    std::size_t coboundary_dimension = 0;
    std::size_t dimension() const { return representatives.size(); }
};

// Numeric coefficients only (SymbolicCoefficients otherwise). cutoff = 0
// picks a default large enough for the examples in the catalog.
CohomologyBasis cohomology_basis(const Coderivation& d, int n, int s, int cutoff = 0);

// Some gamma with [d, gamma] = c, choosing the solution supported on the
// earliest basis cochains; nullopt when c is not a coboundary. Throws if c
// is not a cocycle.
std::optional<Coderivation> is_coboundary(const Coderivation& d, const Coderivation& c);

// Basis cochains of internal degree (or parity) s and exterior degree in
// [r1, r2], ordered by exterior degree and then canonically.
std::vector<BasisCochain> cochain_basis_range(const GradedSpace& sp, int r1, int r2, int s);

// Internal degree of d in Z mode, parity in Z2 mode.
int cochain_shift(const Coderivation& d);

// s + shift, reduced mod 2 in Z2 mode.
int shifted_degree(const GradedSpace& sp, int s, int shift);

// Throws NotACodifferential unless d is odd (degree 1 in Z mode) with
// vanishing self-bracket.
void require_codifferential(const Coderivation& d);

}  // namespace linfty
