#include "cli.hpp"
#include "context.hpp"
#include "linfty/cochain_io.hpp"
#include "linfty/scalar_parse.hpp"

#include <doctest.h>

#include <sstream>

using namespace linfty;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

cli::json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    Run r = run(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return cli::json::parse(r.out);
}

const GradedSpace onebar2({0, -1, 1}, Grading::Z);

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::exit_usage);
    CHECK(run({"bracket"}).code == cli::exit_usage);
    CHECK(run({"nosuchcommand"}).code == cli::exit_usage);
    CHECK(run({"reproduce", "nosuchsuite"}).code == cli::exit_usage);
    CHECK(run({"bracket", "--degrees", "0,x", "ps[1,0;1]", "same"}).code == cli::exit_usage);
    CHECK(run({"bracket", "--grading", "Q", "--degrees", "0", "ps[1;1]", "same"}).code == cli::exit_usage);
    CHECK(run({"bracket", "--degrees", "0,-1,1", "ps[1,1,0;4]", "same"}).code == cli::exit_domain);
    CHECK(run({"classify", "--profile", "onebar2_x0", "ps[1,1,0;1]*a"}).code == cli::exit_domain);
    Run help = run({"bracket", "--help"});
    CHECK(help.code == cli::exit_ok);
    CHECK(help.out.find("--degrees") != std::string::npos);
}

TEST_CASE("bracket of the general odd cochain of order 2") {
    cli::json doc = run_json({"bracket", "--degrees", "0,-1,1", "--grading", "Z",
                              "ps[1,1,0;1]*a + ps[2,0,0;3]*b + ps[0,1,1;3]*c", "same"});
    CHECK(doc["schema_version"] == cli::schema_version);
    CHECK(doc["command"] == "bracket");
    const auto& res = doc["result"];
    ParamList p = make_params({"a", "b", "c"});
    Coderivation got = parse_cochain(res["cochain"].get<std::string>(), onebar2, p);
    CHECK(got == parse_cochain("ph[2,1,0;3]*(2*b*(2*a-c))", onebar2, p));
    CHECK(res["parameters"] == cli::json::array({"a", "b", "c"}));
}

TEST_CASE("json output round-trips through the parser") {
    const std::string d = "ps[2,1,0;1]*lambda + ps[1,1,1;3]*mu";
    cli::json doc = run_json({"act", "--profile", "onebar2_x0", "--auto", "2,0,0;0,1,0;0,0,1/3", d});
    ParamList p = make_params({"lambda", "mu"});
    Coderivation from_text = parse_cochain(doc["result"]["cochain"].get<std::string>(), onebar2, p);
    Coderivation from_terms = cochain_from_json(cli::json{{"terms", doc["result"]["terms"]}}.dump(), onebar2);
    CHECK(from_text == from_terms.with_params(p));
    Run text = run({"act", "--profile", "onebar2_x0", "--auto", "2,0,0;0,1,0;0,0,1/3", d});
    CHECK(parse_cochain(text.out, onebar2, p) == from_text);
}

TEST_CASE("classification and identification") {
    cli::json c = run_json({"classify", "--profile", "twobar1_012", "ps[1,0,1;2]"});
    CHECK(c["result"]["label"] == "first_2");
    CHECK(c["result"]["family"] == "first_kind");
    CHECK(c["result"]["k"] == 2);
    Run text = run({"classify", "--profile", "twobar1_012", "ps[1,0,1;2]"});
    CHECK(text.out.rfind("first_2", 0) == 0);

    cli::json id = run_json({"identify", "--profile", "onebar2_x0", "--base", "d_7(1:1/2)", "--bind",
                             "t3=1,t4=1,t5=1,s5=2,s6=1"});
    CHECK(id["result"]["label"] == "d_3,5(-1/8)");
    CHECK(id["result"]["alpha"] == "-1/8");
    CHECK(run({"identify", "--profile", "onebar2_x0", "--base", "d_3(1:2)", "--bind", "t3"}).code == cli::exit_usage);
    CHECK(run({"identify", "--profile", "onebar2_x0", "--base", "d_3(1:2)", "--bind", "q9=1"}).code ==
          cli::exit_domain);
}

TEST_CASE("cohomology and coboundary matrices") {
    cli::json h = run_json({"cohomology", "--profile", "onebar2_x0", "--d", "ps[2,1,0;1] + ps[1,1,1;3]*(1/2)",
                            "--range", "1..5"});
    std::vector<int> dims;
    for (const auto& e : h["result"]["entries"]) dims.push_back(e["dimension"].get<int>());
    CHECK(dims == std::vector<int>{1, 2, 1, 0, 0});

    cli::json m = run_json({"cobmatrix", "--profile", "onebar2_x0", "--d", "ps[1,1,0;1]*lambda + ps[0,1,1;3]*mu",
                            "--l", "1", "--s", "0"});
    CHECK(m["result"]["target"]["l"] == 2);
    CHECK(m["result"]["matrix"].size() == m["result"]["rows"].size());
    CHECK(run({"cohomology", "--profile", "onebar2_x0", "--d", "ps[1,1,0;1]*a", "--n", "1"}).code ==
          cli::exit_domain);
}

TEST_CASE("equivalence and reports") {
    const std::string a = "ps[1,0,1;1]*2 + ps[0,1,1;2]", b = "ps[1,0,1;1] + ps[0,1,1;2]*2";
    cli::json z2 = run_json({"equiv", "--profile", "twobar1_m2m10", "--grading", "Z2", a, b});
    CHECK(z2["result"]["equivalent"] == true);
    CHECK(z2["result"]["witness"]["verified"] == true);
    CHECK(z2["result"]["witness"]["chain"][0]["matrix"] ==
          cli::json::array({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}}));
    cli::json z = run_json({"equiv", "--profile", "twobar1_m2m10", a, b});
    CHECK(z["result"]["equivalent"] == false);
    CHECK(z["result"]["certified_inequivalent"] == true);

    cli::json r1 = run_json({"report", "--profile", "twobar1_m2m10", "--kmax", "2", "--seed", "4"});
    cli::json r2 = run_json({"report", "--profile", "twobar1_m2m10", "--kmax", "2", "--seed", "4"});
    CHECK(r1 == r2);
    CHECK(r1["result"]["verdict"] == "not injective");
}

TEST_CASE("json errors") {
    std::ostringstream out, err;
    int code = cli::run({"classify", "--profile", "onebar2_x0", "ps[1,1,0;1]*a", "--format", "json"}, out, err);
    CHECK(code == cli::exit_domain);
    cli::json doc = cli::json::parse(out.str());
    CHECK(doc["error"]["kind"] == "domain");
    CHECK(doc["command"] == "classify");
}
