#include "context.hpp"
#include "linfty/cochain_io.hpp"
#include "linfty/cohomology.hpp"
#include "linfty/linear_auto.hpp"

#include <climits>
#include <sstream>

namespace linfty::cli {

namespace {

struct RangeSpec {
    int from = 0, to = 0;
};

RangeSpec parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--range expects n1..n2");
    try {
        RangeSpec r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
        if (r.from < 1 || r.to < r.from) throw UsageError("--range needs 1 <= n1 <= n2");
        return r;
    } catch (const std::logic_error&) {
        throw UsageError("--range expects n1..n2");
    }
}

json cohomology_entry(const CohomologyBasis& h) {
    json reps = json::array();
    for (const auto& r : h.representatives) reps.push_back(print_cochain(r));
    return json{{"n", h.n},
                {"s", h.s},
                {"dimension", h.dimension()},
                {"representatives", reps},
                {"cocycle_dimension", h.cocycle_dimension},
                {"coboundary_dimension", h.coboundary_dimension},
                {"filtered", h.filtered}};
}

std::string cohomology_text(const CohomologyBasis& h) {
    std::ostringstream os;
    os << "H^" << h.n << "_" << h.s << ": dimension " << h.dimension() << "\n";
    for (const auto& r : h.representatives) os << "  " << print_cochain(r) << "\n";
    return os.str();
}

}  // namespace

void add_algebra_commands(CLI::App& app, State& st) {
    Options& opt = st.opt;

    {
        auto* sub = app.add_subcommand("bracket", "Bracket [f, g] of two cochains (g may be 'same')");
        auto f = std::make_shared<std::string>(), g = std::make_shared<std::string>();
        sub->add_option("f", *f, "First cochain")->required();
        sub->add_option("g", *g, "Second cochain, or 'same'")->required();
        sub->add_option("--cutoff", opt.cutoff, "Drop terms of exterior degree above this (0 keeps all)");
        add_space_options(sub, opt);
        sub->callback([&st, f, g]() {
            st.action = [&st, f, g](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                std::string gt = *g == "same" ? *f : *g;
                ParamList p = params_of({*f, gt});
                Coderivation a = parse_expr(*f, sp, p), b = parse_expr(gt, sp, p);
                Coderivation r = bracket(a, b, st.opt.cutoff > 0 ? st.opt.cutoff : INT_MAX);
                o.emit("bracket", cochain_result(r), print_cochain(r));
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("act", "Pull back a cochain along a linear automorphism: g^-1 d g");
        auto m = std::make_shared<std::string>(), e = std::make_shared<std::string>();
        sub->add_option("--auto", *m, "Matrix of g, row-major 'a,b,c;d,e,f;g,h,i' (column j is g(e_j))")->required();
        sub->add_option("d", *e, "Cochain")->required();
        add_space_options(sub, opt);
        sub->callback([&st, m, e]() {
            st.action = [&st, m, e](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                ParamList p = params_of({*e}, matrix_entries(*m));
                LinearAuto g(sp, parse_matrix(*m, p));
                Coderivation r = linear_action(g, parse_expr(*e, sp, p));
                o.emit("act", cochain_result(r), print_cochain(r));
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("expad", "exp(ad gamma) applied to a cochain, truncated at the cutoff");
        auto gen = std::make_shared<std::string>(), e = std::make_shared<std::string>();
        sub->add_option("--gen", *gen, "Even generator gamma")->required();
        sub->add_option("--cutoff", opt.cutoff, "Exterior degree cutoff")->required();
        sub->add_option("d", *e, "Cochain")->required();
        add_space_options(sub, opt);
        sub->callback([&st, gen, e]() {
            st.action = [&st, gen, e](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                ParamList p = params_of({*gen, *e});
                Coderivation r = exp_ad(parse_expr(*gen, sp, p), parse_expr(*e, sp, p), st.opt.cutoff);
                o.emit("expad", cochain_result(r), print_cochain(r));
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("cohomology", "Cohomology H^n_s of a codifferential");
        auto d = std::make_shared<std::string>(), range = std::make_shared<std::string>();
        auto n = std::make_shared<int>(0), s = std::make_shared<int>(1);
        sub->add_option("--d", *d, "Codifferential")->required();
        auto* nopt = sub->add_option("--n", *n, "Exterior degree");
        sub->add_option("--s", *s, "Internal degree (parity in Z2 mode)")->capture_default_str();
        auto* ropt = sub->add_option("--range", *range, "Exterior degrees n1..n2");
        nopt->excludes(ropt);
        sub->add_option("--cutoff", opt.cutoff, "Cutoff for filtered cohomology of non-homogeneous d");
        add_space_options(sub, opt);
        sub->callback([&st, d, range, n, s]() {
            st.action = [&st, d, range, n, s](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                Coderivation dd = parse_expr(*d, sp, params_of({*d}));
                if (range->empty()) {
                    if (*n < 1) throw UsageError("--n (>= 1) or --range is required");
                    CohomologyBasis h = cohomology_basis(dd, *n, *s, st.opt.cutoff);
                    o.emit("cohomology", cohomology_entry(h), cohomology_text(h));
                    return 0;
                }
                RangeSpec r = parse_range(*range);
                json entries = json::array();
                std::string text;
                for (int k = r.from; k <= r.to; ++k) {
                    CohomologyBasis h = cohomology_basis(dd, k, *s, st.opt.cutoff);
                    entries.push_back(cohomology_entry(h));
                    text += cohomology_text(h);
                }
                o.emit("cohomology", json{{"s", *s}, {"entries", entries}}, text);
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("cobmatrix", "Matrix of D = [d, -] from C^l_s");
        auto d = std::make_shared<std::string>();
        auto l = std::make_shared<int>(0), s = std::make_shared<int>(0);
        sub->add_option("--d", *d, "Codifferential of pure exterior degree")->required();
        sub->add_option("--l", *l, "Source exterior degree")->required();
        sub->add_option("--s", *s, "Source internal degree (parity in Z2 mode)")->required();
        add_space_options(sub, opt);
        sub->callback([&st, d, l, s]() {
            st.action = [&st, d, l, s](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                CobMatrix c = coboundary_matrix(parse_expr(*d, sp, params_of({*d})), *l, *s);
                json rows = json::array(), cols = json::array();
                for (const auto& r : c.rows) rows.push_back(print_basis_cochain(r, sp));
                for (const auto& r : c.cols) cols.push_back(print_basis_cochain(r, sp));
                json res{{"source", {{"l", c.source_r}, {"s", c.source_s}}},
                         {"target", {{"l", c.target_r}, {"s", c.target_s}}},
                         {"rows", rows},
                         {"cols", cols},
                         {"matrix", matrix_json(c.m)}};
                std::ostringstream os;
                os << "D: C^" << c.source_r << "_" << c.source_s << " -> C^" << c.target_r << "_" << c.target_s
                   << "\ncolumns:";
                for (const auto& x : cols) os << " " << x.get<std::string>();
                os << "\nrows:";
                for (const auto& x : rows) os << " " << x.get<std::string>();
                os << "\n" << matrix_text(c.m);
                o.emit("cobmatrix", res, os.str());
                return 0;
            };
        });
    }
}

}  // namespace linfty::cli
