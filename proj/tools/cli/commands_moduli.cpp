#include "context.hpp"
#include "linfty/cochain_io.hpp"
#include "linfty/errors.hpp"
#include "linfty/moduli.hpp"
#include "linfty/scalar_parse.hpp"

#include <sstream>

namespace linfty::cli {

namespace {

const char* family_name(Family f) {
    switch (f) {
    case Family::d_k: return "d_k";
    case Family::d_k_star: return "d_k_star";
    case Family::d_sharp: return "d_sharp";
    case Family::d_kl: return "d_kl";
    case Family::first_kind: return "first_kind";
    case Family::second_kind: return "second_kind";
    }
    return "";
}

std::string describe(const ClassLabel& c) {
    std::ostringstream os;
    switch (c.family) {
    case Family::d_k: os << "family d_k(lambda:mu), order " << c.k; break;
    case Family::d_k_star: os << "d*_k, order " << c.k; break;
    case Family::d_sharp: os << "d#_k,l, order " << c.k << ", extension at " << c.l; break;
    case Family::d_kl: os << "extension d_k,l, order " << c.k << ", extension at " << c.l; break;
    case Family::first_kind: os << "first kind, k=" << c.k; break;
    case Family::second_kind: os << "second kind, k=" << c.k; break;
    }
    return os.str();
}

json label_json(const ClassLabel& c) {
    json j{{"label", c.str()}, {"family", family_name(c.family)}, {"k", c.k}};
    if (c.family == Family::d_sharp || c.family == Family::d_kl) j["l"] = c.l;
    if (c.family == Family::d_k) {
        j["lambda"] = c.lambda.str();
        j["mu"] = c.mu.str();
    }
    if (c.alpha) j["alpha"] = c.alpha->str();
    return j;
}

std::map<std::string, Rational> parse_bindings(const std::vector<std::string>& items) {
    std::map<std::string, Rational> out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects name=value, got '" + item + "'");
        RatFun v = parse_ratfun(item.substr(eq + 1));
        if (!v.is_numeric()) throw UsageError("binding values must be rational numbers: '" + item + "'");
        out[item.substr(0, eq)] = v.to_rational();
    }
    return out;
}

json witness_json(const EquivWitness& w) {
    json chain = json::array();
    for (const auto& step : w.chain) {
        if (step.is_linear()) {
            chain.push_back({{"kind", "linear"}, {"matrix", matrix_json(step.linear->matrix())}});
        } else {
            chain.push_back({{"kind", "exp_ad"}, {"gamma", print_cochain(step.gamma)}});
        }
    }
    return json{{"cutoff", w.cutoff}, {"verified", w.verified}, {"note", w.note}, {"chain", chain}};
}

std::string witness_text(const EquivWitness& w) {
    std::ostringstream os;
    os << "witness (" << (w.verified ? "verified" : "unverified") << ", cutoff " << w.cutoff << "):";
    if (w.chain.empty()) os << " identity";
    os << "\n";
    for (const auto& step : w.chain) {
        if (step.is_linear()) {
            os << "  linear g with matrix\n" << matrix_text(step.linear->matrix());
        } else {
            os << "  exp_ad " << print_cochain(step.gamma) << "\n";
        }
    }
    return os.str();
}

SpaceProfile profile_from(const Options& opt) {
    if (opt.profile.empty()) throw UsageError("--profile is required");
    return SpaceProfile::parse(opt.profile);
}

}  // namespace

void add_moduli_commands(CLI::App& app, State& st) {
    Options& opt = st.opt;
    {
        auto* sub = app.add_subcommand("classify", "Catalog class of a numeric codifferential");
        auto e = std::make_shared<std::string>();
        sub->add_option("d", *e, "Codifferential")->required();
        sub->add_option("--cutoff", opt.cutoff, "Exterior degree cutoff for the reduction (default: top degree)");
        add_space_options(sub, opt);
        sub->callback([&st, e]() {
            st.action = [&st, e](const Output& o) {
                SpaceProfile profile = profile_from(st.opt);
                Options local = st.opt;
                local.degrees.clear();
                GradedSpace sp = space_from(local);
                Coderivation d = parse_expr(*e, sp, params_of({*e}));
                if (d.is_zero()) throw NotACodifferential("the zero coderivation is not a codifferential");
                int cutoff = st.opt.cutoff > 0 ? st.opt.cutoff : d.max_arity();
                ClassLabel c = classify_codifferential(profile, d, cutoff);
                json res = label_json(c);
                res["profile"] = profile.name();
                res["grading"] = st.opt.grading;
                res["description"] = describe(c);
                o.emit("classify", res, c.str() + "  (" + describe(c) + ")");
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("identify", "Class of a point of the miniversal deformation of a catalog class");
        auto base = std::make_shared<std::string>();
        auto binds = std::make_shared<std::vector<std::string>>();
        sub->add_option("--base", *base, "Base class label, e.g. d_7(1:1/2)")->required();
        sub->add_option("--bind", *binds, "Parameter values name=value (comma separated)")->delimiter(',');
        sub->add_option("--cutoff", opt.cutoff, "Exterior degree cutoff (default from the bound parameters)");
        sub->add_option("--profile", opt.profile, "Space profile")->required();
        add_format_option(sub, opt);
        sub->callback([&st, base, binds]() {
            st.action = [&st, base, binds](const Output& o) {
                SpaceProfile profile = profile_from(st.opt);
                std::map<std::string, Rational> b = parse_bindings(*binds);
                IdentifiedPoint id = identify_deformation_point(profile, ClassLabel::parse(*base), b, st.opt.cutoff);
                json bj = json::object();
                for (const auto& [k, v] : b) bj[k] = v.str();
                json res = label_json(id.label);
                res["profile"] = profile.name();
                res["base"] = ClassLabel::parse(*base).str();
                res["bindings"] = bj;
                res["point"] = print_cochain(id.point);
                res["reduced"] = print_cochain(id.reduced);
                res["cutoff"] = id.cutoff;
                std::ostringstream os;
                os << id.label.str() << "  (" << describe(id.label) << ")\nreduced form up to degree " << id.cutoff
                   << ": " << print_cochain(id.reduced) << "\n";
                o.emit("identify", res, os.str());
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("equiv", "Search for an equivalence between two codifferentials");
        auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
        sub->add_option("d1", *a, "First codifferential")->required();
        sub->add_option("d2", *b, "Second codifferential")->required();
        sub->add_option("--cutoff", opt.cutoff, "Exterior degree cutoff");
        add_space_options(sub, opt);
        sub->callback([&st, a, b]() {
            st.action = [&st, a, b](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                ParamList p = params_of({*a, *b});
                EquivalenceResult r = equivalence_witness(parse_expr(*a, sp, p), parse_expr(*b, sp, p),
                                                          grading_from(st.opt.grading), st.opt.cutoff);
                json res{{"grading", st.opt.grading},
                         {"equivalent", r.witness ? json(true) : r.certified_inequivalent ? json(false) : json(nullptr)},
                         {"witness", r.witness ? witness_json(*r.witness) : json(nullptr)},
                         {"certified_inequivalent", r.certified_inequivalent},
                         {"certificate", r.certificate}};
                std::string text;
                if (r.witness) {
                    text = "equivalent\n" + witness_text(*r.witness);
                } else if (r.certified_inequivalent) {
                    text = "not equivalent: " + r.certificate;
                } else {
                    text = "undecided: " + r.certificate;
                }
                o.emit("equiv", res, text);
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("report", "Class catalog, sampled adjacencies and Z to Z2 verdict");
        sub->add_option("--profile", opt.profile, "Space profile")->required();
        sub->add_option("--kmax", opt.kmax, "Largest order (at most 6)")->capture_default_str();
        sub->add_option("--seed", opt.seed, "Seed for the sampled deformation points")->capture_default_str();
        add_format_option(sub, opt);
        sub->callback([&st]() {
            st.action = [&st](const Output& o) {
                ModuliReport r = moduli_report(profile_from(st.opt), st.opt.kmax, st.opt.seed);
                json catalog = json::array(), adj = json::array();
                for (const auto& e : r.catalog) {
                    catalog.push_back({{"family", e.family},
                                       {"k", e.k},
                                       {"l", e.l},
                                       {"parameters", e.parameters},
                                       {"deformations", e.deformations}});
                }
                for (const auto& a : r.adjacencies) {
                    json pt = json::object();
                    for (const auto& [k, v] : a.point) pt[k] = v.str();
                    adj.push_back({{"from", a.from}, {"to", a.to}, {"point", pt}});
                }
                json res{{"profile", r.profile}, {"k_max", r.k_max},       {"seed", st.opt.seed},
                         {"catalog", catalog},   {"adjacencies", adj},     {"verdict", r.verdict},
                         {"verdict_detail", r.verdict_detail}};
                std::ostringstream os;
                os << "profile " << r.profile << ", k <= " << r.k_max << "\n\ncatalog:\n";
                for (const auto& e : r.catalog) {
                    os << "  " << e.family << "  k=" << e.k;
                    if (e.l) os << " l=" << e.l;
                    if (!e.parameters.empty()) os << "  [" << e.parameters << "]";
                    os << "\n";
                }
                os << "\nadjacencies (sampled points):\n";
                for (const auto& a : r.adjacencies) {
                    os << "  " << a.from << " -> " << a.to << "  at";
                    for (const auto& [k, v] : a.point) os << " " << k << "=" << v.str();
                    os << "\n";
                }
                os << "\nZ -> Z2 map: " << r.verdict << "\n  " << r.verdict_detail << "\n";
                o.emit("report", res, os.str());
                return 0;
            };
        });
    }
}

}  // namespace linfty::cli
