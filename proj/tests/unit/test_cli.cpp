#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "findim/commands.hpp"
#include "findim/error.hpp"
#include "findim/module_expr.hpp"
#include "support.hpp"

using namespace findim;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode parse_error_code(const std::string& text) {
  try {
    parse_algebra_file(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::InvalidArgument;
}

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--format");
  args.push_back("json");
  Run r = run(args);
  CHECK(r.code == expected_code);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["exit_code"] == expected_code);
  return j;
}

const std::vector<std::string> kValueKeys = {"dim", "L", "pd", "phi", "psi", "pfd_c_m", "s", "card",
                                             "alpha", "beta", "epsilon0", "bound", "psi_dim_bound",
                                             "finitistic_bound", "cardinal_bound"};

}  // namespace

TEST_CASE("corpus files equal the embedded texts") {
  for (const auto& name : corpus_names()) {
    const std::string file = read_file(std::string(FINDIM_SOURCE_DIR) + "/corpus/" + name + ".alg");
    CHECK(parse_algebra_file(file) == corpus_algebra(name));
    CHECK(file == corpus_text(name));
  }
  CHECK_THROWS_AS(corpus_algebra("ex99"), Error);
}

TEST_CASE("corpus shapes") {
  AlgebraSpec ex23 = corpus_algebra("ex23");
  CHECK(ex23.vertices.size() == 2);
  CHECK(ex23.arrows.size() == 3);
  CHECK(ex23.relations.size() == 4);
  AlgebraSpec ex53 = corpus_algebra("ex53");
  CHECK(ex53.vertices.size() == 3);
  CHECK(ex53.arrows.size() == 4);
  REQUIRE(ex53.relations.size() == 4);
  CHECK(ex53.relations[0].terms[0].path == std::vector<std::string>{"g", "d", "b"});
  AlgebraSpec ex54 = corpus_algebra("ex54");
  const SpecRelation& last = ex54.relations.back();
  REQUIRE(last.terms.size() == 2);
  CHECK(last.terms[0].coefficient == 1);
  CHECK(last.terms[0].path == std::vector<std::string>{"g", "a"});
  CHECK(last.terms[1].coefficient == -1);
  CHECK(last.terms[1].path == std::vector<std::string>{"g", "b", "a"});
}

TEST_CASE("render and re-parse round trip") {
  for (const auto& name : corpus_names()) {
    AlgebraSpec spec = corpus_algebra(name);
    CHECK(parse_algebra_file(render_algebra_spec(spec)) == spec);
  }
  AlgebraSpec s = parse_algebra_file(
      "field 7\nvertices 1 2 3\narrow x 1 2\narrow y 1 2\narrow z 2 3\nrel 3*z*x - 2*z*y + z*x\n");
  CHECK(s.relations[0].terms.size() == 3);
  CHECK(s.relations[0].terms[1].coefficient == -2);
  CHECK(parse_algebra_file(render_algebra_spec(s)) == s);
}

TEST_CASE("algebra file errors") {
  CHECK(parse_error_code("field 7\nvertices 1 2\narrow x 1 2\nrel x\n") == ErrorCode::SyntaxError);
  CHECK(parse_error_code("vertices 1 2\n") == ErrorCode::SyntaxError);
  CHECK(parse_error_code("field 7\nvertices 1 3\n") == ErrorCode::SyntaxError);
  CHECK(parse_error_code("field 7\nvertices 1 2\narrow x 1 5\n") == ErrorCode::SyntaxError);
  CHECK(parse_error_code("field 7\nvertices 1 2\narrow x 1 2\nrel x*q\n") == ErrorCode::UnknownArrow);
  CHECK(parse_error_code("field 7\nvertices 1 2\narrow x 1 2\narrow y 2 1\narrow z 1 1\n"
                         "rel y*x - z*z\nrel y*x + x*y\n") == ErrorCode::NonParallelRelation);
  CHECK(parse_error_code("field 7\nvertices 1 2\narrow x 1 2\nrel x*x\n") == ErrorCode::BadRelation);
  try {
    parse_algebra_file("field 7\nvertices 1 2\narrow x 1 2\nrel x\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  // Comments and blank lines are ignored.
  CHECK_NOTHROW(parse_algebra_file("# header\n\nfield 7 # p\nvertices 1\n"));
}

TEST_CASE("module expressions") {
  ModuleExpr e = parse_module_expr("omega^1(D(2)) + omega^2(D(1))");
  CHECK(e.kind == ModuleExpr::Kind::Sum);
  CHECK(e.children.size() == 2);
  CHECK(render_module_expr(e) == "omega^1(D(2)) + omega^2(D(1))");
  CHECK(parse_module_expr(render_module_expr(e)) == e);
  CHECK(parse_module_expr("radq(1)+radq(2)").children.size() == 2);
  CHECK(parse_module_expr(" mt( -3 ) ").args == std::vector<std::int64_t>{-3});
  CHECK_THROWS_AS(parse_module_expr("S(1"), Error);
  CHECK_THROWS_AS(parse_module_expr("omega(S(1))"), Error);
  CHECK_THROWS_AS(parse_module_expr("S(1) S(2)"), Error);

  auto a = test::corpus("ex53");
  EvalContext ctx{a, nullptr, nullptr, "ex53"};
  ClassRegistry reg(a);
  Module mp = eval_module_expr(e, ctx);
  Module expected = direct_sum({reg.info(reg.register_module(syzygy(simple(a, 2)))).witness, syzygy(simple(a, 1), 2)}, a);
  CHECK(is_isomorphic(mp, expected));
  CHECK(eval_module_expr("radq(1) + radq(2)", ctx).dims() == std::vector<int>{3, 3, 4});

  auto code_of = [&](const std::string& text) {
    try {
      eval_module_expr(text, ctx);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of("S(1)+P(9)") == ErrorCode::IndexError);
  CHECK(code_of("Q(1)") == ErrorCode::MissingContext);
  CHECK(code_of("mt(1)") == ErrorCode::MissingContext);
  CHECK(code_of("frob(1)") == ErrorCode::ParseError);
}

TEST_CASE("ex54 expressions") {
  auto a = test::corpus("ex54");
  EvalContext ctx{a, nullptr, nullptr, "ex54"};
  Module m = eval_module_expr("mt(0)", ctx);
  CHECK(m.dims() == std::vector<int>{4, 8, 0});
  CHECK(m.satisfies_relations());
}

TEST_CASE("command: bound ex53") {
  auto j = run_json({"bound", "ex53"}, 0);
  CHECK(j["values"]["s"] == 0);
  CHECK(j["values"]["alpha"] == 1);
  CHECK(j["values"]["beta"] == 0);
  CHECK(j["values"]["bound"] == 2);
  CHECK(j["status"] == "ok");
  CHECK(j["error"].is_null());
}

TEST_CASE("command: radcube-bound and pd") {
  auto j = run_json({"radcube-bound", "ex53"}, 0);
  CHECK(j["values"]["bound"] == 4);
  CHECK(j["values"]["psi"] == 2);
  auto p = run_json({"pd", "ex53", "--module", "S(2)"}, 0);
  CHECK(p["status"] == "infinite");
  CHECK_FALSE(p["result"]["pd"]["cycle"].empty());
  CHECK(p["values"]["pd"].is_null());
}

TEST_CASE("values are present on every command") {
  const std::vector<std::vector<std::string>> commands = {
      {"check", "ex53"},
      {"projectives", "ex53"},
      {"standard", "ex23"},
      {"pd", "ex53", "--module", "P(1)"},
      {"phi", "ex53", "--module", "S(1)"},
      {"psi", "ex53", "--module", "S(1)"},
      {"decompose", "ex53", "--module", "radq(2)"},
      {"ss-check", "ex53"},
      {"epss", "ex53"},
      {"filtration", "ex54", "--module", "mt(2)"},
      {"bound", "ex54"},
      {"radcube-bound", "ex53"},
      {"pd", "ex53", "--module", "S(9)"},
  };
  for (const auto& args : commands) {
    std::vector<std::string> full = args;
    full.push_back("--format");
    full.push_back("json");
    Run r = run(full);
    auto j = nlohmann::json::parse(r.out);
    for (const auto& key : kValueKeys) CHECK_MESSAGE(j["values"].contains(key), args.front() << " lacks " << key);
    for (const char* key : {"command", "algebra", "prime", "version", "status", "exit_code", "inconclusive", "error",
                            "values", "result"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["exit_code"] == r.code);
    CHECK((r.code == 2) == j["inconclusive"].get<bool>());
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"pd", "ex53", "--module", "S(1)+P(9)"}).code == 1);
  CHECK(run({"pd", "ex53"}).code == 1);
  CHECK(run({"check", "no-such-algebra"}).code == 1);
  CHECK(run({"frobnicate", "ex53"}).code == 1);
  CHECK(run({"check", "ex53", "--prime", "32001"}).code == 1);
  CHECK(run({"radcube-bound", "ex54"}).code == 1);
  auto j = run_json({"pd", "ex53", "--module", "S(2)", "--depth", "1"}, 2);
  CHECK(j["status"] == "unknown");
  auto k = run_json({"psi", "ex53", "--module", "S(2)", "--depth", "1"}, 2);
  CHECK(k["status"] == "undecided");
  CHECK(k["error"]["code"] == "Undecided");
  auto s = run_json({"ss-check", "ex53"}, 0);
  CHECK(s["status"] == "nonmember");
}

TEST_CASE("prime precedence") {
  auto j = run_json({"check", "ex53", "--prime", "101"}, 0);
  CHECK(j["prime"] == 101);
  setenv("FINDIM_PRIME", "103", 1);
  CHECK(run_json({"check", "ex53"}, 0)["prime"] == 103);
  CHECK(run_json({"check", "ex53", "--prime", "107"}, 0)["prime"] == 107);
  unsetenv("FINDIM_PRIME");
  CHECK(run_json({"check", "ex53"}, 0)["prime"] == 32003);
}

TEST_CASE("custom systems and algebra files") {
  auto j = run_json({"bound", "ex53", "--system", "S(1); S(2); P(3)"}, 0);
  CHECK(j["values"]["bound"] == 2);
  CHECK(run({"bound", "ex53", "--system", "S(1); P(1)"}).code == 1);
  const std::string path = std::string(FINDIM_SOURCE_DIR) + "/corpus/ex23x3.alg";
  CHECK(run({"bound", path}).code == 1);
  auto b = run_json({"bound", path, "--assume", "3-cardinal"}, 0);
  CHECK(b["values"]["card"] == 3);
  CHECK_FALSE(b["values"]["cardinal_bound"].is_null());
  CHECK(b["values"]["finitistic_bound"].is_null());
}

TEST_CASE("identical inputs give identical reports") {
  Run a = run({"bound", "ex53", "--format", "json"});
  Run b = run({"bound", "ex53", "--format", "json"});
  CHECK(a.out == b.out);
  Run c = run({"three-props", std::string(FINDIM_SOURCE_DIR) + "/corpus/ex23x3.alg", "--format", "json", "--seed", "4"});
  Run d = run({"three-props", std::string(FINDIM_SOURCE_DIR) + "/corpus/ex23x3.alg", "--format", "json", "--seed", "4"});
  CHECK(c.out == d.out);
}

TEST_CASE("text output") {
  Run r = run({"bound", "ex53"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bound = 2") != std::string::npos);
  Run v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(kVersion) != std::string::npos);
  CHECK(run({"--help"}).out.find("Usage") != std::string::npos);
  Run e = run({"pd", "ex53", "--module", "S(7)"});
  CHECK(e.err.find("IndexError") != std::string::npos);
}
