#pragma once

#include "linfty/cohomology.hpp"
#include "linfty/linear_auto.hpp"

#include <optional>
#include <string>
#include <vector>

namespace linfty {

// One generator of an automorphism chain: a linear automorphism g acting
// by g*, or exp(-ad_gamma) for an even gamma without linear part.
struct WitnessStep {
    std::optional<LinearAuto> linear;
    Coderivation gamma;
    bool is_linear() const { return linear.has_value(); }
};

struct EquivWitness {
    std::vector<WitnessStep> chain;
    int cutoff = 0;
    bool verified = false;
    std::string note;
};

// Applies the chain in order, truncating at w.cutoff (no truncation when
// the cutoff is 0 and the chain is purely linear).
Coderivation apply_witness(const EquivWitness& w, const Coderivation& d);

// Reduction of a codifferential to canonical representatives, degree by
// degree: above the leading order k, the degree-n component is reduced
// modulo the leading coboundaries of the truncated codifferential, using
// exp_ad of even cochains of exterior degree >= 2 whose coboundary
// vanishes below n. The kept component is the remainder modulo the row
// echelon form of those coboundaries (earliest basis cochains pivot).
struct FilteredReduction {
    Coderivation result;
    std::vector<Coderivation> chain;  // exp_ad steps in order
    int cutoff = 0;
};

FilteredReduction reduce_filtered(const Coderivation& d, int cutoff);

// Diagonal automorphism diag(p) with rational entries taking the terms of
// `from` to the terms of `to` (same support); nullopt if none exists over
// the rationals. Each basis cochain phi^I_j scales by p^I / p_j.
std::optional<std::vector<Rational>> solve_diagonal(const Coderivation& from, const Coderivation& to);

// Monomial invariants of the diagonal group acting on the terms of d:
// prod c_t^{n_t} over a basis of integer relations sum n_t (I_t - e_{j_t}) = 0
// among the exponent vectors of the support. Equal support and equal
// invariants are necessary for two coderivations to lie in one orbit.
struct TorusInvariants {
    std::vector<BasisCochain> support;
    std::vector<std::vector<long>> relations;
    std::vector<Rational> values;
};

TorusInvariants torus_invariants(const Coderivation& d);

}  // namespace linfty
