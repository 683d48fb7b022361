#include "linfty/deformation.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <set>

namespace linfty {

namespace {

BasisCochain leading_cochain(const Coderivation& d) {
    Coderivation lead = d.component(d.order());
    return lead.terms().begin()->first;
}

// Z2 type of the space as a parity vector.
std::vector<int> parity_type(const GradedSpace& sp) {
    std::vector<int> out;
    for (int i = 0; i < sp.dim(); ++i) out.push_back(sp.parity(i));
    return out;
}

// Names unique within the list: a letter shared by several directions of
// the same degree gets a suffix, and r is kept bare when it occurs once.
std::vector<std::string> assign_names(const std::vector<std::pair<char, int>>& keys) {
    std::map<std::pair<char, int>, int> count, seen;
    std::map<char, int> per_letter;
    for (const auto& k : keys) {
        ++count[k];
        ++per_letter[k.first];
    }
    std::vector<std::string> out;
    for (const auto& k : keys) {
        std::string name(1, k.first);
        if (!(k.first == 'r' && per_letter[k.first] == 1)) name += std::to_string(k.second);
        if (count[k] > 1) name += "_" + std::to_string(++seen[k]);
        out.push_back(name);
    }
    return out;
}

std::vector<Rational> coords_rational(const Coderivation& c, const std::vector<BasisCochain>& basis) {
    std::vector<Rational> out;
    for (const auto& v : c.coordinates(basis)) out.push_back(v.to_rational());
    return out;
}

// Change of basis at one exterior degree: the leading parts of the given
// directions, completed by standard basis vectors.
struct Splitting {
    std::vector<BasisCochain> basis;
    std::size_t n_alpha = 0, n_beta = 0;
    std::vector<std::size_t> tau;  // basis indices of the completing vectors
    Matrix<Rational> inverse;
};

Splitting make_splitting(const std::vector<BasisCochain>& basis, const std::vector<Coderivation>& alpha,
                         const std::vector<Coderivation>& beta, int n) {
    Splitting sp;
    sp.basis = basis;
    sp.n_alpha = alpha.size();
    sp.n_beta = beta.size();
    std::vector<std::vector<Rational>> cols;
    for (const auto& a : alpha) cols.push_back(coords_rational(a.component(n), basis));
    for (const auto& b : beta) cols.push_back(coords_rational(b.component(n), basis));
    std::size_t r = cols.empty() ? 0 : rank(Matrix<Rational>::from_columns(basis.size(), cols));
    if (r != cols.size()) throw DomainError("internal error: dependent splitting directions");
    for (std::size_t i = 0; i < basis.size() && cols.size() < basis.size(); ++i) {
        std::vector<Rational> e(basis.size(), Rational(0));
        e[i] = Rational(1);
        cols.push_back(e);
        if (rank(Matrix<Rational>::from_columns(basis.size(), cols)) == cols.size()) {
            sp.tau.push_back(i);
        } else {
            cols.pop_back();
        }
    }
    auto inv = inverse(Matrix<Rational>::from_columns(basis.size(), cols));
    if (!inv) throw DomainError("internal error: singular splitting");
    sp.inverse = *inv;
    return sp;
}

// Maximal total degree of the given variables over the terms of p.
int degree_in(const ParamPoly& p, const std::vector<std::size_t>& vars) {
    int best = 0;
    for (const auto& [e, c] : p.terms()) {
        int d = 0;
        for (std::size_t v : vars) d += e[v];
        best = std::max(best, d);
    }
    return best;
}

RatFun truncate_rf(const RatFun& x, int order) {
    if (!x.is_polynomial()) return x;
    return RatFun(x.num().truncate(order) * x.den().constant_term().inverse());
}

}  // namespace

std::vector<std::string> DeformationParams::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.name);
    return out;
}

const DeformationParameter* DeformationParams::find(const std::string& name) const {
    for (const auto& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

char parameter_letter(const GradedSpace& sp, const BasisCochain& lead, int n) {
    std::vector<int> type = parity_type(sp);
    if (type == std::vector<int>{0, 1, 1}) {
        if (lead.target == 0 && lead.exponents == MultiIndex{n - 1, 1, 0}) return 's';
        if (lead.target == 2 && lead.exponents == MultiIndex{n - 2, 1, 1}) return 't';
        if (lead.target == 2 && lead.exponents == MultiIndex{n, 0, 0}) return 'r';
        return 'u';
    }
    if (type == std::vector<int>{0, 0, 1}) return 't';
    return 'u';
}

InfinitesimalDeformation infinitesimal_deformation(const Coderivation& d, int max_arity, int s) {
    require_codifferential(d);
    const GradedSpace& sp = d.space();
    std::vector<DeformationParameter> entries;
    std::vector<std::pair<char, int>> keys;
    for (int n = 1; n <= max_arity; ++n) {
        CohomologyBasis h = cohomology_basis(d, n, s);
        for (const auto& rep : h.representatives) {
            DeformationParameter p;
            p.kind = ParameterKind::cohomology;
            p.n = n;
            p.s = h.s;
            p.direction = rep;
            keys.emplace_back(parameter_letter(sp, leading_cochain(rep), n), n);
            entries.push_back(std::move(p));
        }
    }
    std::vector<std::string> names = assign_names(keys);
    InfinitesimalDeformation out;
    ParamList list = make_params(names);
    out.d_inf = d.with_params(list);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].name = names[i];
        out.d_inf += entries[i].direction * RatFun::variable(list, names[i]);
    }
    out.params.entries = std::move(entries);
    return out;
}

DeformationResult miniversal(const Coderivation& d, int max_order, int cutoff_r) {
    require_codifferential(d);
    const GradedSpace& sp = d.space();
    const int s1 = shifted_degree(sp, 0, 1);
    const int s2 = shifted_degree(sp, s1, 1);
    InfinitesimalDeformation inf = infinitesimal_deformation(d, cutoff_r, s1);

    // Coboundary directions of every degree up to the cutoff.
    struct Level {
        int n;
        std::vector<Coderivation> alpha;   // cohomology representatives in C^n_2
        std::vector<Coderivation> gammas;  // preimages in C_1
        std::vector<Coderivation> images;  // their coboundaries
    };
    std::vector<Level> levels;
    std::vector<std::pair<char, int>> xkeys;
    std::vector<const Coderivation*> xdirs;
    for (int n = 1; n <= cutoff_r; ++n) {
        CohomologyBasis h = cohomology_basis(d, n, s2);
        Level lv{n, h.representatives, {}, {}};
        for (const auto& pr : h.coboundary_preimages) {
            lv.gammas.push_back(pr.preimage);
            lv.images.push_back(pr.image);
        }
        levels.push_back(std::move(lv));
    }
    for (const auto& lv : levels) {
        for (const auto& g : lv.gammas) {
            xkeys.emplace_back('x', g.order());
            xdirs.push_back(&g);
        }
    }
    std::vector<std::string> xnames = assign_names(xkeys);

    std::vector<std::string> base_names = inf.params.names();
    std::vector<std::string> mixed_names = base_names;
    mixed_names.insert(mixed_names.end(), xnames.begin(), xnames.end());
    ParamList base_list = make_params(base_names);
    ParamList mixed_list = make_params(mixed_names);

    Coderivation dm = inf.d_inf.with_params(mixed_list);
    for (std::size_t i = 0; i < xnames.size(); ++i) dm += *xdirs[i] * RatFun::variable(mixed_list, xnames[i]);

    // Split 1/2[dm, dm] degree by degree.
    Coderivation rest = bracket(dm, dm, cutoff_r) * RatFun(Rational(1, 2));
    std::vector<RatFun> beta;  // one equation per correction, in order
    std::vector<Relation> relations;
    std::vector<std::pair<int, RatFun>> remainder;
    std::vector<Coderivation> remainder_dirs;
    for (const auto& lv : levels) {
        const int n = lv.n;
        std::vector<BasisCochain> basis = enumerate_cochain_basis(sp, n, s2);
        Coderivation part = rest.component(n);
        Splitting spl = make_splitting(basis, lv.alpha, lv.images, n);
        std::vector<RatFun> v = part.coordinates(basis);
        std::vector<RatFun> c = spl.inverse.map([](const Rational& x) { return RatFun(x); }).apply(v);
        for (std::size_t i = 0; i < spl.n_alpha; ++i) {
            if (!c[i].is_zero()) rest -= (lv.alpha[i] * c[i]).truncate(cutoff_r);
            Relation r;
            r.kind = RelationKind::cocycle;
            r.n = n;
            r.direction = lv.alpha[i];
            r.mixed = c[i].with_params(mixed_list);
            relations.push_back(std::move(r));
        }
        for (std::size_t j = 0; j < spl.n_beta; ++j) {
            const RatFun& cj = c[spl.n_alpha + j];
            if (!cj.is_zero()) rest -= (lv.images[j] * cj).truncate(cutoff_r);
            beta.push_back(cj.with_params(mixed_list));
        }
        for (std::size_t m = 0; m < spl.tau.size(); ++m) {
            const RatFun& cm = c[spl.n_alpha + spl.n_beta + m];
            Coderivation dir = Coderivation::basis(sp, basis[spl.tau[m]]);
            if (!cm.is_zero()) rest -= dir * cm;
            Relation r;
            r.kind = RelationKind::remainder;
            r.n = n;
            r.direction = dir;
            r.mixed = cm.with_params(mixed_list);
            relations.push_back(std::move(r));
        }
    }

    DeformationResult out;
    out.base_params = base_list;
    out.order_reached = max_order;

    // Solve the coboundary equations for the corrections.
    std::vector<std::size_t> xvars;
    for (std::size_t i = base_names.size(); i < mixed_names.size(); ++i) xvars.push_back(i);
    bool linear = true;
    for (const auto& b : beta) {
        if (!b.is_polynomial() || degree_in(b.num(), xvars) > 1) linear = false;
    }
    std::map<std::string, RatFun> sol;
    bool solved = false;
    if (xnames.empty()) {
        solved = true;
        out.exact = true;
    } else if (linear) {
        // beta = A x + b with A, b over the base parameters.
        Matrix<RatFun> a(beta.size(), xnames.size());
        std::vector<RatFun> rhs(beta.size(), RatFun(0));
        std::map<std::string, Rational> zero;
        for (const auto& x : xnames) zero[x] = Rational(0);
        for (std::size_t i = 0; i < beta.size(); ++i) {
            RatFun b0 = beta[i].partial_substitute(zero);
            rhs[i] = -b0.with_params(base_list);
            for (std::size_t j = 0; j < xnames.size(); ++j) {
                std::map<std::string, Rational> unit = zero;
                unit[xnames[j]] = Rational(1);
                a(i, j) = (beta[i].partial_substitute(unit) - b0).with_params(base_list);
            }
        }
        auto x = solve(a, rhs);
        if (x) {
            for (std::size_t j = 0; j < xnames.size(); ++j) sol[xnames[j]] = (*x)[j];
            solved = true;
            out.exact = true;
        }
    }
    if (!solved) {
        // Power series: x <- x - L^{-1} beta(x), truncated at max_order.
        std::map<std::string, Rational> origin;
        for (const auto& nme : mixed_names) origin[nme] = Rational(0);
        Matrix<Rational> lin(beta.size(), xnames.size());
        for (std::size_t i = 0; i < beta.size(); ++i) {
            for (std::size_t j = 0; j < xnames.size(); ++j) {
                std::map<std::string, Rational> unit = origin;
                unit[xnames[j]] = Rational(1);
                lin(i, j) = beta[i].substitute(unit) - beta[i].substitute(origin);
            }
        }
        auto linv = inverse(lin);
        if (!linv) throw DomainError("coboundary equations are degenerate at the origin");
        for (const auto& x : xnames) sol[x] = RatFun(ParamPoly(base_list));
        bool stable = false;
        for (int it = 0; it <= max_order + 1 && !stable; ++it) {
            std::vector<RatFun> val;
            for (const auto& b : beta) val.push_back(truncate_rf(b.compose(sol).with_params(base_list), max_order));
            std::vector<RatFun> step = linv->map([](const Rational& r) { return RatFun(r); }).apply(val);
            stable = is_zero_vector(step);
            for (std::size_t j = 0; j < xnames.size(); ++j) {
                sol[xnames[j]] = truncate_rf(sol[xnames[j]] - step[j], max_order);
            }
        }
        bool exact = true;
        for (const auto& b : beta) exact = exact && b.compose(sol).is_zero();
        out.exact = exact;
        solved = stable;
    }

    // Drop corrections that vanish and rewrite everything over the final lists.
    std::map<std::string, RatFun> zero_x;
    std::vector<std::string> kept = base_names;
    for (const auto& x : xnames) {
        if (sol.count(x) && sol[x].is_zero()) {
            zero_x[x] = RatFun(0);
        } else {
            kept.push_back(x);
        }
    }
    out.mixed_params = make_params(kept);
    for (const auto& [x, v] : sol) {
        if (!v.is_zero()) out.corrections[x] = v.with_params(base_list);
    }
    std::map<std::string, RatFun> full_sub = zero_x;
    for (const auto& [x, v] : out.corrections) full_sub[x] = v;

    out.d_infinity_mixed = dm.compose_params(zero_x).with_params(out.mixed_params);
    out.d_infinity = dm.compose_params(full_sub).with_params(base_list);
    out.params.entries = inf.params.entries;
    for (std::size_t i = 0; i < xnames.size(); ++i) {
        if (zero_x.count(xnames[i])) continue;
        DeformationParameter p;
        p.name = xnames[i];
        p.kind = ParameterKind::correction;
        p.n = xdirs[i]->order();
        p.s = s1;
        p.direction = *xdirs[i];
        out.params.entries.push_back(std::move(p));
    }
    bool remainder_vanishes = true;
    for (auto& r : relations) {
        r.value = r.mixed.compose(full_sub).with_params(base_list);
        r.mixed = r.mixed.compose(zero_x).with_params(out.mixed_params);
        if (r.kind == RelationKind::remainder && !r.value.is_zero()) remainder_vanishes = false;
    }
    relations.erase(std::remove_if(relations.begin(), relations.end(),
                                   [](const Relation& r) { return r.mixed.is_zero() && r.value.is_zero(); }),
                    relations.end());
    out.relations = std::move(relations);
    out.converged = solved && remainder_vanishes;
    return out;
}

ExtensionObstruction extend_obstruction(const Coderivation& d_partial, int n) {
    if (d_partial.is_zero()) throw NotACodifferential("the zero coderivation is not a codifferential");
    const int k = d_partial.order();
    if (n < k) throw DomainError("order below the leading term");
    Coderivation trunc = d_partial.truncate(n);
    Coderivation lead = trunc.component(k);
    require_codifferential(lead);
    Coderivation sq = bracket(trunc, trunc, k + n);
    for (int m = 2 * k - 1; m < k + n; ++m) {
        if (!sq.component(m).is_zero()) {
            throw RelationViolated("self-bracket does not vanish in exterior degree " + std::to_string(m) +
                                   " (order " + std::to_string(m - k + 1) + ")");
        }
    }
    Coderivation tail = trunc.tail(k + 1);
    ExtensionObstruction out;
    out.n = n;
    out.cocycle = (bracket(tail, tail, k + n).component(k + n) * RatFun(Rational(-1, 2)));
    if (out.cocycle.is_zero()) {
        out.next_term = Coderivation(d_partial.space());
    } else {
        out.next_term = is_coboundary(lead, out.cocycle);
    }
    return out;
}

ParameterObstruction second_order_obstruction(const Coderivation& base, const Coderivation& delta) {
    require_codifferential(base);
    ParameterObstruction out;
    out.cocycle = bracket(delta, delta) * RatFun(Rational(1, 2));
    if (out.cocycle.is_zero()) {
        out.preimage = Coderivation(base.space());
        return out;
    }
    out.preimage = is_coboundary(base, out.cocycle);
    return out;
}

StandardForm standard_form_reduce(const Coderivation& d, int cutoff_r) {
    StandardForm out;
    out.cutoff = cutoff_r;
    out.result = d.truncate(cutoff_r);
    if (out.result.is_zero()) return out;
    const int k = out.result.order();
    Coderivation lead = out.result.component(k);
    for (;;) {
        std::set<int> ar = out.result.arities();
        ar.erase(k);
        if (ar.empty()) break;
        int l = *ar.begin();
        if (l > cutoff_r) break;
        Coderivation second = out.result.component(l);
        auto pre = is_coboundary(lead, second);
        if (!pre) break;
        Coderivation gamma = -*pre;
        out.result = exp_ad(gamma, out.result, cutoff_r);
        out.chain.push_back(gamma);
    }
    return out;
}

}  // namespace linfty
