#pragma once

#include "linfty/cochain.hpp"
#include "linfty/linalg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace linfty::cli {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string degrees;
    std::string grading = "Z";
    std::string profile;
    int cutoff = 0;
    int max_order = 8;
    std::string format = "text";
    unsigned seed = 1;
    int kmax = 3;
    std::string fixtures;
};

struct Output {
    std::ostream& out;
    std::ostream& err;
    bool json_mode = false;
    bool color = false;

    // Writes {schema_version, command, result} in JSON mode, `text` otherwise.
    void emit(const std::string& command, const json& result, const std::string& text) const;
};

struct State {
    Options opt;
    std::function<int(const Output&)> action;
};

// Options shared by the algebraic commands.
void add_space_options(CLI::App* sub, Options& opt);
void add_format_option(CLI::App* sub, Options& opt);

GradedSpace space_from(const Options& opt);
Grading grading_from(const std::string& g);

// Declared parameter list: the names occurring in any of the texts, in order of appearance.
ParamList params_of(const std::vector<std::string>& cochains, const std::vector<std::string>& scalars = {});
Coderivation parse_expr(const std::string& text, const GradedSpace& sp, const ParamList& params);
// Row-major matrix "a,b,c;d,e,f;g,h,i".
Matrix<RatFun> parse_matrix(const std::string& text, const ParamList& params);
std::vector<std::string> matrix_entries(const std::string& text);

json space_json(const GradedSpace& sp);
json terms_json(const Coderivation& d);
json cochain_result(const Coderivation& d);
json matrix_json(const Matrix<RatFun>& m);
std::string matrix_text(const Matrix<RatFun>& m);

void add_algebra_commands(CLI::App& app, State& st);
void add_deformation_commands(CLI::App& app, State& st);
void add_moduli_commands(CLI::App& app, State& st);
void add_reproduce_command(CLI::App& app, State& st);

}  // namespace linfty::cli
