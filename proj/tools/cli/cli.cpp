#include "cli.hpp"

#include "context.hpp"
#include "linfty/cochain_io.hpp"
#include "linfty/errors.hpp"
#include "linfty/moduli.hpp"
#include "linfty/scalar_parse.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace linfty::cli {

void Output::emit(const std::string& command, const json& result, const std::string& text) const {
    if (json_mode) {
        json doc;
        doc["schema_version"] = schema_version;
        doc["command"] = command;
        doc["result"] = result;
        out << doc.dump(2) << "\n";
        return;
    }
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

void add_space_options(CLI::App* sub, Options& opt) {
    sub->add_option("--degrees", opt.degrees, "Degrees of the basis vectors, e.g. 0,-1,1");
    sub->add_option("--grading", opt.grading, "Z or Z2")->check(CLI::IsMember({"Z", "Z2"}));
    sub->add_option("--profile", opt.profile, "onebar2_x0, twobar1_012 or twobar1_m2m10 (sets the degrees)");
    add_format_option(sub, opt);
}

void add_format_option(CLI::App* sub, Options& opt) {
    sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

Grading grading_from(const std::string& g) {
    if (g == "Z") return Grading::Z;
    if (g == "Z2") return Grading::Z2;
    throw UsageError("--grading must be Z or Z2");
}

GradedSpace space_from(const Options& opt) {
    Grading mode = grading_from(opt.grading);
    if (opt.degrees.empty()) {
        if (opt.profile.empty()) throw UsageError("--degrees (or --profile) is required");
        GradedSpace sp = SpaceProfile::parse(opt.profile).space;
        return mode == Grading::Z2 ? sp.as_z2() : sp;
    }
    std::vector<int> degrees;
    std::stringstream ss(opt.degrees);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            degrees.push_back(std::stoi(item, &used));
            if (item.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("--degrees expects comma-separated integers, got '" + opt.degrees + "'");
        }
    }
    if (degrees.empty()) throw UsageError("--degrees is empty");
    return GradedSpace(degrees, mode);
}

ParamList params_of(const std::vector<std::string>& cochains, const std::vector<std::string>& scalars) {
    std::vector<std::string> names;
    auto add = [&](const std::vector<std::string>& found) {
        for (const auto& n : found) {
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
        }
    };
    for (const auto& t : cochains) add(scan_cochain_params(t));
    for (const auto& t : scalars) add(scan_param_names(t));
    return make_params(names);
}

Coderivation parse_expr(const std::string& text, const GradedSpace& sp, const ParamList& params) {
    return parse_cochain(text, sp, params);
}

std::vector<std::string> matrix_entries(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == ';') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Matrix<RatFun> parse_matrix(const std::string& text, const ParamList& params) {
    std::vector<std::vector<RatFun>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<RatFun> r;
        std::stringstream rs(row);
        std::string entry;
        while (std::getline(rs, entry, ',')) r.push_back(parse_ratfun(entry, params));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw UsageError("empty matrix");
    return Matrix<RatFun>::from_rows(rows);
}

json space_json(const GradedSpace& sp) {
    return json{{"degrees", sp.degrees()}, {"grading", sp.mode() == Grading::Z ? "Z" : "Z2"}};
}

json terms_json(const Coderivation& d) { return json::parse(cochain_to_json(d))["terms"]; }

json cochain_result(const Coderivation& d) {
    json params = json::array();
    if (d.params()) {
        for (const auto& n : *d.params()) params.push_back(n);
    }
    return json{{"space", space_json(d.space())},
                {"parameters", params},
                {"cochain", print_cochain(d)},
                {"terms", terms_json(d)}};
}

json matrix_json(const Matrix<RatFun>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
        rows.push_back(r);
    }
    return rows;
}

std::string matrix_text(const Matrix<RatFun>& m) {
    std::vector<std::vector<std::string>> cells(m.rows());
    std::vector<std::size_t> width(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cells[i].push_back(m(i, j).str());
            width[j] = std::max(width[j], cells[i][j].size());
        }
    }
    std::ostringstream os;
    for (const auto& row : cells) {
        os << "[";
        for (std::size_t j = 0; j < row.size(); ++j) {
            os << (j ? "  " : " ") << std::string(width[j] - row[j].size(), ' ') << row[j];
        }
        os << " ]\n";
    }
    return os.str();
}

namespace {

bool color_enabled() {
    const char* v = std::getenv("LINFTY_COLOR");
    return v != nullptr && std::string(v) == "1";
}

const CLI::App* active_subcommand(const CLI::App& app) {
    for (const auto* s : app.get_subcommands()) return s;
    return nullptr;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact brackets, cohomology, deformations and moduli of L-infinity structures on small graded spaces",
                 "linfty"};
    app.require_subcommand(1, 1);
    State st;
    add_algebra_commands(app, st);
    add_deformation_commands(app, st);
    add_moduli_commands(app, st);
    add_reproduce_command(app, st);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* sub = active_subcommand(app);
        out << (sub ? sub->help() : app.help());
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        const CLI::App* sub = active_subcommand(app);
        err << "usage error: " << e.what() << "\n\n" << (sub ? sub->help() : app.help());
        return exit_usage;
    }
    Output o{out, err, st.opt.format == "json", color_enabled()};
    const CLI::App* sub = active_subcommand(app);
    // In JSON mode failures are also reported as a document on stdout.
    auto fail = [&](const char* kind, const std::string& message, int code) {
        if (o.json_mode) {
            json doc;
            doc["schema_version"] = schema_version;
            doc["command"] = sub ? sub->get_name() : "";
            doc["error"] = json{{"kind", kind}, {"message", message}};
            out << doc.dump(2) << "\n";
        }
        return code;
    };
    try {
        return st.action(o);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n\n" << (sub ? sub->help() : app.help());
        return fail("usage", e.what(), exit_usage);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return fail("domain", e.what(), exit_domain);
    }
}

}  // namespace linfty::cli
