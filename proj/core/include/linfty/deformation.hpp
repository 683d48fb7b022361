#pragma once

#include "linfty/cohomology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linfty {

enum class ParameterKind { cohomology, correction };

// One deformation parameter and the cochain it multiplies.
struct DeformationParameter {
    std::string name;
    ParameterKind kind = ParameterKind::cohomology;
    int n = 0;  // exterior degree of the leading term of `direction`
    int s = 0;  // internal degree (parity in Z2 mode)
    Coderivation direction;
};

struct DeformationParams {
    std::vector<DeformationParameter> entries;
    std::vector<std::string> names() const;
    const DeformationParameter* find(const std::string& name) const;
};

struct InfinitesimalDeformation {
    Coderivation d_inf;
    DeformationParams params;
};

// d + sum delta_i t_i over representatives of H^n_s for n = 1..max_arity
// (s = 1: degree 1 in Z mode, odd in Z2 mode). Parameter names follow the
// representative's leading basis cochain, see parameter_letter.
InfinitesimalDeformation infinitesimal_deformation(const Coderivation& d, int max_arity, int s = 1);

// Letter used for a representative whose leading basis cochain is `lead`
// in exterior degree n: on spaces with Z2 type (0,1,1), psi^{n-1,1,0}_1 -> s,
// psi^{n-2,1,1}_3 -> t, psi^{n,0,0}_3 -> r; on type (0,0,1) every
// representative is t; otherwise u.
char parameter_letter(const GradedSpace& sp, const BasisCochain& lead, int n);

enum class RelationKind { cocycle, remainder };

struct Relation {
    RelationKind kind = RelationKind::cocycle;
    int n = 0;
    Coderivation direction;  // the cohomology representative (or basis cochain) it multiplies
    RatFun mixed;            // in the parameters and the correction symbols
    RatFun value;            // corrections substituted
};

struct DeformationResult {
    Coderivation d_infinity;        // corrections substituted, over the base parameters
    Coderivation d_infinity_mixed;  // corrections kept as symbols
    DeformationParams params;       // base parameters followed by corrections
    ParamList base_params;
    ParamList mixed_params;
    std::map<std::string, RatFun> corrections;
    std::vector<Relation> relations;
    int order_reached = 0;
    bool converged = false;
    bool exact = false;  // corrections solved in closed form
};

// Miniversal deformation up to exterior degree cutoff_r. The self-bracket
// 1/2[d_inf, d_inf] is split, degree by degree, into cohomology directions
// (relations), coboundary directions (solved for the corrections x) and a
// remainder. When the coboundary equations are linear in the corrections
// they are solved exactly; otherwise the corrections are computed as power
// series truncated at parameter degree max_order.
DeformationResult miniversal(const Coderivation& d, int max_order, int cutoff_r);

// Right hand side of D(d_{n+1}) = -1/2 sum_{r=k+1}^{n} [d_r, d_{k+n+1-r}]
// and, when it is a coboundary, a valid d_{n+1}.
struct ExtensionObstruction {
    int n = 0;
    Coderivation cocycle;
    std::optional<Coderivation> next_term;
};

// Throws RelationViolated naming the first exterior degree at which the
// self-bracket of d_partial fails to vanish below k+n.
ExtensionObstruction extend_obstruction(const Coderivation& d_partial, int n);

// Second order obstruction of a first order deformation base + delta with
// delta linear in the parameters: 1/2[delta, delta], tested against the
// coboundaries of base.
struct ParameterObstruction {
    Coderivation cocycle;
    std::optional<Coderivation> preimage;
    bool obstructed() const { return !cocycle.is_zero() && !preimage.has_value(); }
};

ParameterObstruction second_order_obstruction(const Coderivation& base, const Coderivation& delta);

struct StandardForm {
    Coderivation result;
    std::vector<Coderivation> chain;  // result = exp_ad(chain.back(), ... exp_ad(chain[0], d))
    int cutoff = 0;
};

// Pushes coboundary second terms to higher degree with exp_ad until the
// second term is a nontrivial cocycle or exceeds cutoff_r.
StandardForm standard_form_reduce(const Coderivation& d, int cutoff_r);

}  // namespace linfty
