#include "context.hpp"
#include "linfty/cochain_io.hpp"
#include "linfty/cohomology.hpp"
#include "linfty/deformation.hpp"
#include "linfty/errors.hpp"
#include "linfty/linear_auto.hpp"
#include "linfty/moduli.hpp"
#include "linfty/scalar_parse.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#ifndef LINFTY_DEFAULT_FIXTURES
#define LINFTY_DEFAULT_FIXTURES "tests/fixtures/v1"
#endif

namespace linfty::cli {

namespace {

struct CaseResult {
    std::string name;
    bool pass = true;
    json diff = json::object();
};

using Suite = std::vector<CaseResult> (*)(const json& cases);

std::map<std::string, Rational> bindings_of(const json& j) {
    std::map<std::string, Rational> out;
    for (const auto& [k, v] : j.items()) out[k] = parse_ratfun(v.get<std::string>()).to_rational();
    return out;
}

GradedSpace case_space(const json& c) {
    return GradedSpace(c.at("degrees").get<std::vector<int>>(), grading_from(c.value("grading", "Z")));
}

std::vector<std::string> flatten(const json& rows) {
    std::vector<std::string> out;
    for (const auto& r : rows) {
        for (const auto& e : r) out.push_back(e.get<std::string>());
    }
    return out;
}

Matrix<RatFun> matrix_of(const json& rows, const ParamList& p) {
    std::vector<std::vector<RatFun>> m;
    for (const auto& r : rows) {
        std::vector<RatFun> row;
        for (const auto& e : r) row.push_back(parse_ratfun(e.get<std::string>(), p));
        m.push_back(std::move(row));
    }
    return Matrix<RatFun>::from_rows(m);
}

// Exact equality, then agreement at each sample point.
bool same_matrix(const Matrix<RatFun>& a, const Matrix<RatFun>& b, const json& points) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!rf_equals(a(i, j), b(i, j))) return false;
            for (const auto& pt : points) {
                auto bind = bindings_of(pt);
                if (a(i, j).substitute(bind) != b(i, j).substitute(bind)) return false;
            }
        }
    }
    return true;
}

std::vector<CaseResult> suite_matrices(const json& cases) {
    std::vector<CaseResult> out;
    for (const auto& c : cases) {
        CaseResult r{c.at("name").get<std::string>()};
        GradedSpace sp = case_space(c);
        std::vector<std::string> scalars = flatten(c.at("expected"));
        if (c.contains("g")) {
            auto g = flatten(c.at("g"));
            scalars.insert(scalars.end(), g.begin(), g.end());
        }
        ParamList p = params_of({c.at("d").get<std::string>()}, scalars);
        Coderivation d = parse_expr(c.at("d").get<std::string>(), sp, p);
        Matrix<RatFun> expected = matrix_of(c.at("expected"), p);
        const json points = c.value("points", json::array());
        Matrix<RatFun> actual;
        if (c.at("kind") == "coboundary") {
            Matrix<RatFun> m = coboundary_matrix(d, c.at("l").get<int>(), c.at("s").get<int>()).m;
            actual = m;
            if (c.contains("column_map")) {
                const json& map = c.at("column_map");
                actual = Matrix<RatFun>(m.rows(), map.size());
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    for (std::size_t j = 0; j < map.size(); ++j) {
                        actual(i, j) = m(i, map[j].at("column").get<std::size_t>()) * RatFun(map[j].at("sign").get<int>());
                    }
                }
            }
        } else {
            LinearAuto g(sp, matrix_of(c.at("g"), p));
            const int k = c.at("k").get<int>();
            actual = coefficient_matrix(linear_action(g, d), k);
            Matrix<RatFun> conj = g.inverse_matrix() * coefficient_matrix(d, k) * linear_matrix_on_Sk(g, k);
            if (!same_matrix(actual, conj, points)) {
                r.pass = false;
                r.diff["conjugation"] = matrix_json(conj);
            }
        }
        if (!same_matrix(actual, expected, points)) r.pass = false;
        if (!r.pass) {
            r.diff["expected"] = c.at("expected");
            r.diff["actual"] = matrix_json(actual);
        }
        out.push_back(std::move(r));
    }
    return out;
}

bool in_span(const std::vector<Coderivation>& basis, const Coderivation& v) {
    std::vector<BasisCochain> coords;
    for (const auto& b : basis) {
        for (const auto& [c, x] : b.terms()) coords.push_back(c);
    }
    for (const auto& [c, x] : v.terms()) coords.push_back(c);
    std::sort(coords.begin(), coords.end(), CanonicalLess{});
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    if (basis.empty()) return v.is_zero();
    std::vector<std::vector<RatFun>> cols;
    for (const auto& b : basis) cols.push_back(b.coordinates(coords));
    return solve(Matrix<RatFun>::from_columns(coords.size(), cols), v.coordinates(coords)).has_value();
}

std::vector<CaseResult> suite_cohomology(const json& cases) {
    std::vector<CaseResult> out;
    for (const auto& c : cases) {
        CaseResult r{c.at("name").get<std::string>()};
        GradedSpace sp = case_space(c);
        ParamList none = make_params({});
        Coderivation d = parse_expr(c.at("d").get<std::string>(), sp, none);
        const int s = c.at("s").get<int>();
        const auto dims = c.at("dims").get<std::vector<std::size_t>>();
        std::vector<std::size_t> got;
        std::vector<CohomologyBasis> hs;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            hs.push_back(cohomology_basis(d, static_cast<int>(i) + 1, s));
            got.push_back(hs.back().dimension());
        }
        if (got != dims) {
            r.pass = false;
            r.diff["dims"] = {{"expected", dims}, {"actual", got}};
        }
        const json reps_by_n = c.value("representatives", json::object());
        for (const auto& [n, reps] : reps_by_n.items()) {
            const int nn = std::stoi(n);
            const CohomologyBasis& h = hs.at(static_cast<std::size_t>(nn - 1));
            std::vector<Coderivation> leads;
            for (const auto& rep : h.representatives) leads.push_back(rep.component(nn));
            for (const auto& e : reps) {
                Coderivation want = parse_expr(e.get<std::string>(), sp, none);
                int top = std::max(h.cutoff, want.max_arity()) + d.max_arity();
                bool ok = bracket(d, want, top).is_zero() && in_span(leads, want.component(nn));
                if (!ok) {
                    r.pass = false;
                    json shown = json::array();
                    for (const auto& rep : h.representatives) shown.push_back(print_cochain(rep));
                    r.diff["representatives"][n] = {{"expected", e}, {"actual", shown}};
                }
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

bool proportional(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return (a / b).is_numeric();
}

std::vector<CaseResult> suite_miniversal(const json& cases) {
    std::vector<CaseResult> out;
    for (const auto& c : cases) {
        CaseResult r{c.at("name").get<std::string>()};
        GradedSpace sp = case_space(c);
        DeformationResult def = miniversal(parse_expr(c.at("d").get<std::string>(), sp, make_params({})),
                                           c.at("max_order").get<int>(), c.at("cutoff").get<int>());
        std::vector<std::string> names;
        for (const auto& e : def.params.entries) {
            if (e.kind == ParameterKind::cohomology) names.push_back(e.name);
        }
        if (names != c.at("parameters").get<std::vector<std::string>>()) {
            r.pass = false;
            r.diff["parameters"] = {{"expected", c.at("parameters")}, {"actual", names}};
        }
        for (const auto& [name, formula] : c.at("corrections").items()) {
            auto it = def.corrections.find(name);
            if (it == def.corrections.end() ||
                !rf_equals(it->second, parse_ratfun(formula.get<std::string>(), def.base_params))) {
                r.pass = false;
                r.diff["corrections"][name] = {{"expected", formula},
                                               {"actual", it == def.corrections.end() ? "missing" : it->second.str()}};
            }
        }
        std::vector<RatFun> want;
        for (const auto& e : c.at("relations")) want.push_back(parse_ratfun(e.get<std::string>(), def.mixed_params));
        std::vector<bool> used(want.size(), false);
        bool ok = def.relations.size() == want.size();
        for (const auto& rel : def.relations) {
            bool found = false;
            for (std::size_t i = 0; i < want.size() && !found; ++i) {
                if (!used[i] && proportional(rel.mixed, want[i])) used[i] = found = true;
            }
            ok = ok && found;
        }
        if (!ok) {
            r.pass = false;
            json got = json::array();
            for (const auto& rel : def.relations) got.push_back(rel.mixed.str());
            r.diff["relations"] = {{"expected", c.at("relations")}, {"actual", got}};
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CaseResult> suite_identify(const json& cases) {
    std::vector<CaseResult> out;
    for (const auto& c : cases) {
        CaseResult r{c.at("name").get<std::string>()};
        SpaceProfile profile = SpaceProfile::parse(c.at("profile").get<std::string>());
        auto b = bindings_of(c.at("bindings"));
        IdentifiedPoint id = identify_deformation_point(profile, ClassLabel::parse(c.at("base").get<std::string>()), b);
        ClassLabel expected = ClassLabel::parse(c.at("expected").get<std::string>());
        if (!(id.label == expected)) {
            r.pass = false;
            r.diff["label"] = {{"expected", expected.str()}, {"actual", id.label.str()}};
        }
        if (c.contains("alpha_formula")) {
            auto vals = bindings_of(c.at("formula_values"));
            vals.insert(b.begin(), b.end());
            RatFun f = parse_ratfun(c.at("alpha_formula").get<std::string>());
            for (const auto& n : *f.params()) vals.try_emplace(n, Rational(0));
            Rational alpha = rf_substitute(f, vals);
            if (!expected.alpha || *expected.alpha != alpha) {
                r.pass = false;
                r.diff["formula"] = {{"expected", expected.alpha ? expected.alpha->str() : "none"},
                                     {"formula_value", alpha.str()}};
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CaseResult> suite_z2map(const json& cases) {
    std::vector<CaseResult> out;
    for (const auto& c : cases) {
        CaseResult r{c.at("name").get<std::string>()};
        if (c.at("kind") == "verdict") {
            ModuliReport rep = moduli_report(SpaceProfile::parse(c.at("profile").get<std::string>()),
                                             c.at("kmax").get<int>());
            if (rep.verdict != c.at("expected").get<std::string>()) {
                r.pass = false;
                r.diff = {{"expected", c.at("expected")}, {"actual", rep.verdict}};
            }
        } else {
            GradedSpace sp = case_space(c);
            ParamList none = make_params({});
            EquivalenceResult e = equivalence_witness(parse_expr(c.at("d1").get<std::string>(), sp, none),
                                                      parse_expr(c.at("d2").get<std::string>(), sp, none),
                                                      sp.mode());
            std::string got = e.witness && e.witness->verified ? "witness"
                              : e.certified_inequivalent         ? "certified_inequivalent"
                                                                 : "undecided";
            if (got != c.at("expected").get<std::string>()) r.pass = false;
            if (r.pass && c.contains("witness")) {
                Matrix<RatFun> want = matrix_of(c.at("witness"), none);
                const auto& chain = e.witness->chain;
                r.pass = chain.size() == 1 && chain[0].is_linear() && chain[0].linear->matrix() == want;
            }
            if (!r.pass) r.diff = {{"expected", c.at("expected")}, {"actual", got}, {"certificate", e.certificate}};
        }
        out.push_back(std::move(r));
    }
    return out;
}

Rational small_nonzero(std::mt19937& gen) {
    std::uniform_int_distribution<int> num(1, 5), den(1, 3), sign(0, 1);
    Rational x(num(gen), den(gen));
    return sign(gen) ? -x : x;
}

std::vector<CaseResult> suite_blocks(const json& cases) {
    std::vector<CaseResult> out;
    for (const auto& c : cases) {
        CaseResult r{c.at("name").get<std::string>()};
        GradedSpace sp = GradedSpace(c.at("degrees").get<std::vector<int>>(), Grading::Z).as_z2();
        std::mt19937 gen(c.at("seed").get<unsigned>());
        const int samples = c.at("samples").get<int>(), kmax = c.at("kmax").get<int>();
        int mismatches = 0, codifferentials = 0;
        json first = nullptr;
        for (int t = 0; t < samples; ++t) {
            const int k = 1 + t % kmax;
            const int shape = (t / kmax) % 3;
            Coderivation d(sp);
            for (const auto& b : enumerate_cochain_basis(sp, k, 1)) {
                bool even_target = sp.parity(b.target) == 0;
                if ((shape == 0 && !even_target) || (shape == 1 && even_target)) continue;
                if (std::uniform_int_distribution<int>(0, 2)(gen) == 0) continue;
                d.add(b, RatFun(small_nonzero(gen)));
            }
            if (d.is_zero()) d.add(enumerate_cochain_basis(sp, k, 1).front(), RatFun(1));
            BlockSplit split = block_split(d);
            bool codiff = bracket(d, d).is_zero();
            codifferentials += codiff ? 1 : 0;
            if (codiff != (split.a1_zero || split.a2_zero)) {
                ++mismatches;
                if (first.is_null()) first = print_cochain(d);
            }
        }
        r.pass = mismatches == 0;
        if (!r.pass) r.diff = {{"mismatches", mismatches}, {"first", first}};
        r.diff["codifferentials"] = codifferentials;
        r.diff["samples"] = samples;
        out.push_back(std::move(r));
    }
    return out;
}

const std::map<std::string, Suite>& suites() {
    static const std::map<std::string, Suite> s = {
        {"matrices", suite_matrices},   {"cohomology-tables", suite_cohomology}, {"miniversal", suite_miniversal},
        {"identify", suite_identify},   {"z2map", suite_z2map},                 {"blocks", suite_blocks}};
    return s;
}

std::string fixtures_dir(const Options& opt) {
    if (!opt.fixtures.empty()) return opt.fixtures;
    if (const char* env = std::getenv("LINFTY_FIXTURES")) return env;
    return LINFTY_DEFAULT_FIXTURES;
}

}  // namespace

void add_reproduce_command(CLI::App& app, State& st) {
    auto* sub = app.add_subcommand("reproduce", "Run a golden-file suite");
    auto name = std::make_shared<std::string>();
    std::string names;
    for (const auto& [n, f] : suites()) names += (names.empty() ? "" : ", ") + n;
    sub->add_option("suite", *name, "One of: " + names)->required();
    sub->add_option("--fixtures", st.opt.fixtures, "Fixture directory (default: $LINFTY_FIXTURES or the source tree)");
    add_format_option(sub, st.opt);
    sub->callback([&st, name]() {
        st.action = [&st, name](const Output& o) {
            auto it = suites().find(*name);
            if (it == suites().end()) throw UsageError("unknown suite '" + *name + "'");
            std::string path = fixtures_dir(st.opt) + "/" + *name + ".json";
            std::ifstream in(path);
            if (!in) throw DomainError("cannot open fixture file " + path);
            json doc = json::parse(in);
            std::vector<CaseResult> results;
            for (const auto& c : doc.at("cases")) {
                json one = json::array({c});
                try {
                    auto r = it->second(one);
                    results.insert(results.end(), r.begin(), r.end());
                } catch (const DomainError& e) {
                    results.push_back({c.value("name", "?"), false, json{{"error", e.what()}}});
                }
            }
            int passed = 0, failed = 0;
            json cases = json::array();
            std::ostringstream os;
            const char* green = o.color ? "\033[32m" : "";
            const char* red = o.color ? "\033[31m" : "";
            const char* reset = o.color ? "\033[0m" : "";
            for (const auto& r : results) {
                (r.pass ? passed : failed)++;
                json entry{{"name", r.name}, {"pass", r.pass}};
                if (!r.pass) entry["diff"] = r.diff;
                cases.push_back(entry);
                os << (r.pass ? green : red) << (r.pass ? "PASS " : "FAIL ") << reset << r.name << "\n";
                if (!r.pass) os << "     " << r.diff.dump() << "\n";
            }
            os << *name << ": " << passed << " passed, " << failed << " failed\n";
            o.emit("reproduce", json{{"suite", *name}, {"passed", passed}, {"failed", failed}, {"cases", cases}},
                   os.str());
            return failed == 0 ? 0 : 1;
        };
    });
}

}  // namespace linfty::cli
