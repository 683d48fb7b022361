#include "context.hpp"
#include "linfty/cochain_io.hpp"
#include "linfty/deformation.hpp"

#include <sstream>

namespace linfty::cli {

namespace {

json deformation_json(const DeformationResult& r) {
    json params = json::array();
    for (const auto& e : r.params.entries) {
        params.push_back({{"name", e.name},
                          {"kind", e.kind == ParameterKind::cohomology ? "cohomology" : "correction"},
                          {"n", e.n},
                          {"direction", print_cochain(e.direction)}});
    }
    json corrections = json::object();
    for (const auto& [name, value] : r.corrections) corrections[name] = value.str();
    json relations = json::array();
    for (const auto& rel : r.relations) {
        relations.push_back({{"n", rel.n},
                             {"kind", rel.kind == RelationKind::cocycle ? "cocycle" : "remainder"},
                             {"direction", print_cochain(rel.direction)},
                             {"mixed", rel.mixed.str()},
                             {"value", rel.value.str()}});
    }
    return json{{"d_infinity", print_cochain(r.d_infinity)},
                {"d_infinity_mixed", print_cochain(r.d_infinity_mixed)},
                {"parameters", params},
                {"corrections", corrections},
                {"relations", relations},
                {"order_reached", r.order_reached},
                {"converged", r.converged},
                {"exact", r.exact}};
}

std::string deformation_text(const DeformationResult& r) {
    std::ostringstream os;
    os << "d_infinity = " << print_cochain(r.d_infinity) << "\n";
    os << "parameters:";
    for (const auto& e : r.params.entries) {
        if (e.kind == ParameterKind::cohomology) os << " " << e.name;
    }
    os << "\n";
    for (const auto& [name, value] : r.corrections) os << name << " = " << value.str() << "\n";
    for (const auto& rel : r.relations) os << "relation (n=" << rel.n << "): " << rel.mixed.str() << " = 0\n";
    os << (r.converged ? "converged" : "not converged") << " at order " << r.order_reached
       << (r.exact ? ", exact" : ", truncated power series") << "\n";
    return os.str();
}

}  // namespace

void add_deformation_commands(CLI::App& app, State& st) {
    Options& opt = st.opt;
    {
        auto* sub = app.add_subcommand("deform", "Miniversal deformation of a numeric codifferential");
        auto d = std::make_shared<std::string>();
        sub->add_option("--d", *d, "Codifferential")->required();
        sub->add_option("--max-order", opt.max_order, "Maximum order of the iteration")->capture_default_str();
        sub->add_option("--cutoff", opt.cutoff, "Exterior degree cutoff")->required();
        add_space_options(sub, opt);
        sub->callback([&st, d]() {
            st.action = [&st, d](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                DeformationResult r = miniversal(parse_expr(*d, sp, params_of({*d})), st.opt.max_order, st.opt.cutoff);
                o.emit("deform", deformation_json(r), deformation_text(r));
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("obstruction", "Obstruction to extending a partial codifferential at order n");
        auto d = std::make_shared<std::string>();
        auto n = std::make_shared<int>(0);
        sub->add_option("--d", *d, "Partial codifferential d_k + ... + d_{k+n-1}")->required();
        sub->add_option("--n", *n, "Order of the next term")->required();
        add_space_options(sub, opt);
        sub->callback([&st, d, n]() {
            st.action = [&st, d, n](const Output& o) {
                GradedSpace sp = space_from(st.opt);
                ExtensionObstruction e = extend_obstruction(parse_expr(*d, sp, params_of({*d})), *n);
                json res{{"n", e.n},
                         {"cocycle", print_cochain(e.cocycle)},
                         {"obstructed", !e.next_term.has_value()},
                         {"next_term", e.next_term ? json(print_cochain(*e.next_term)) : json(nullptr)}};
                std::ostringstream os;
                os << "cocycle = " << print_cochain(e.cocycle) << "\n";
                if (e.next_term) {
                    os << "extends with next term " << print_cochain(*e.next_term) << "\n";
                } else {
                    os << "obstructed: the cocycle is not a coboundary\n";
                }
                o.emit("obstruction", res, os.str());
                return 0;
            };
        });
    }
}

}  // namespace linfty::cli
