#pragma once

#include "linfty/deformation.hpp"
#include "linfty/normal_form.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linfty {

enum class ProfileTag { onebar2_x0, twobar1_012, twobar1_m2m10 };

// One of the three studied spaces, in basis order: onebar2_x0 = (0,-1,1),
// twobar1_012 = (0,2,1), twobar1_m2m10 = (-2,0,-1).
struct SpaceProfile {
    ProfileTag tag = ProfileTag::onebar2_x0;
    GradedSpace space;  // Z-graded

    static SpaceProfile make(ProfileTag tag);
    static SpaceProfile parse(const std::string& name);
    std::string name() const;
    // The Z2-graded space with the same parities.
    GradedSpace z2_space() const { return space.as_z2(); }
};

enum class Family { d_k, d_k_star, d_sharp, d_kl, first_kind, second_kind };

// Text forms: d_3(1:1/2), d*_3, d#_3 (= d#_3,3), d#_3,4, d_3,5(-1/8),
// d_3,5 (twobar1_m2m10, no parameter), first_3, second_3.
struct ClassLabel {
    Family family = Family::d_k;
    int k = 0;
    int l = 0;
    Rational lambda{0}, mu{0};     // d_k, projective with first nonzero coordinate 1
    std::optional<Rational> alpha;  // d_kl on onebar2_x0

    std::string str() const;
    static ClassLabel parse(const std::string& text);
    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

ClassLabel label_dk(int k, const Rational& lambda, const Rational& mu);

// Catalog codifferential for a label on the profile's Z-graded space.
Coderivation class_representative(const SpaceProfile& profile, const ClassLabel& label);

struct CatalogEntry {
    std::string family;  // pattern such as d_k(lambda:mu)
    int k = 0;
    int l = 0;
    std::string parameters;  // continuous parameters, empty for isolated classes
    std::string deformations;  // jump/smooth behaviour, catalog metadata
};

std::vector<CatalogEntry> class_catalog(const SpaceProfile& profile, int k_max);

// Classifies a codifferential of pure exterior degree. On the Z2 space of
// onebar2_x0 the leading term is first moved into the degree 1 subspace by
// an even automorphism fixing e1. On the Z2 spaces of the 2|1 profiles only
// the kind and order are determined.
std::pair<ClassLabel, EquivWitness> normal_form_leading(const SpaceProfile& profile, const Coderivation& d);

// Classifies a Z-graded codifferential with higher terms: filtered reduction
// up to `cutoff`, then the leading class and the extension terms.
ClassLabel classify_codifferential(const SpaceProfile& profile, const Coderivation& d, int cutoff);

struct IdentifiedPoint {
    ClassLabel label;
    Coderivation point;    // the substituted miniversal deformation
    Coderivation reduced;  // its filtered reduction
    int cutoff = 0;
};

// Substitutes bindings (missing parameters are 0) into the miniversal
// deformation of the base class and classifies the result. Unless `cutoff`
// is positive, the deformation is built and classified up to exterior degree
// max(2 top, 2 m - 2) for the largest bound parameter index m, which covers
// the alpha term of every d_{N,m} with N >= 2.
IdentifiedPoint identify_deformation_point(const SpaceProfile& profile, const ClassLabel& base,
                                           const std::map<std::string, Rational>& bindings, int cutoff = 0);

struct EquivalenceResult {
    std::optional<EquivWitness> witness;
    bool certified_inequivalent = false;
    std::string certificate;
};

// Searches parity (Z2) or degree (Z) preserving permutations composed with
// diagonal maps and exp_ad corrections. In Z mode with one-dimensional
// graded pieces the linear group is the diagonal torus, and a mismatch of
// leading torus invariants certifies inequivalence.
EquivalenceResult equivalence_witness(const Coderivation& d, const Coderivation& d2, Grading grading, int cutoff = 0);

struct Adjacency {
    std::string from;
    std::string to;
    std::map<std::string, Rational> point;
};

struct ModuliReport {
    std::string profile;
    int k_max = 0;
    std::vector<CatalogEntry> catalog;
    std::vector<Adjacency> adjacencies;
    std::string verdict;
    std::string verdict_detail;
};

ModuliReport moduli_report(const SpaceProfile& profile, int k_max, unsigned seed = 1);

// Off-diagonal blocks of an odd coderivation on a space of Z2 dimension 2|1:
// A1 maps odd words to the even part, A2 maps even words to the odd line.
struct BlockSplit {
    bool a1_zero = true;
    bool a2_zero = true;
};

BlockSplit block_split(const Coderivation& d);

// Same terms on another space of equal dimension.
Coderivation recast(const Coderivation& d, const GradedSpace& sp);

}  // namespace linfty
