#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tropfan/json_io.hpp"
#include "fixtures.hpp"

using namespace tropfan;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim_nl(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(TROPFAN_CLI_PATH) + " " + args +
                    " >/dev/null 2>/dev/null";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string data_file(const std::string& name) {
  return std::string(TROPFAN_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("bundled samples round trip byte for byte") {
  for (const char* name :
       {"fan_join.json", "fan_plane_union.json", "fan_two_line_sum.json"}) {
    std::string text = slurp(data_file(name));
    WeightedFan f = parse_fan(text);
    CHECK(serialize(f) == trim_nl(text));
    CHECK(validate(f).empty());
    CHECK(check_balanced(f).balanced);
  }
  for (const char* name :
       {"fn_max_x1.json", "fn_max_x3.json", "fn_t1.json", "fn_t2.json"}) {
    std::string text = slurp(data_file(name));
    TRFunction t = parse_function(text);
    CHECK(serialize(t) == trim_nl(text));
  }
}

TEST_CASE("in-memory round trips reproduce the fan") {
  for (const WeightedFan& f :
       {fx::join_fan(), fx::plane_union_fan(), fx::two_line_sum()}) {
    WeightedFan g = parse_fan(serialize(f));
    CHECK(g.n == f.n);
    CHECK(g.dim == f.dim);
    CHECK(g.rays == f.rays);
    CHECK(g.cones == f.cones);
    CHECK(g.weights == f.weights);
    CHECK(serialize(g) == serialize(f));
  }
}

TEST_CASE("an empty fan needs an explicit dimension") {
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[],"n":2,"rays":[],"weights":[]})"), SchemaError);
  WeightedFan z =
      parse_fan(R"({"cones":[],"dim":2,"n":2,"rays":[],"weights":[]})");
  CHECK(z.dim == 2);
  CHECK(z.rays.empty());
  CHECK(serialize(z) ==
        R"({"cones":[],"dim":2,"n":2,"rays":[],"weights":[]})");
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[],"dim":3,"n":2,"rays":[],"weights":[]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[[0]],"dim":2,"n":1,"rays":[[1]],"weights":[1]})"),
      SchemaError);
}

TEST_CASE("fan schema violations are reported precisely") {
  // non-primitive ray, unless normalization is requested
  std::string np = R"({"cones":[[0]],"n":3,"rays":[[2,4,6]],"weights":[1]})";
  CHECK_THROWS_AS(parse_fan(np), SchemaError);
  WeightedFan f = parse_fan(np, true);
  CHECK(f.rays[0] == LatticeVector{1, 2, 3});

  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[[0]],"n":2,"rays":[[0,0]],"weights":[1]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(
          R"({"cones":[[0],[0,1]],"n":2,"rays":[[1,0],[0,1]],"weights":[1,1]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[[0]],"n":2,"rays":[[1,0]],"weights":[1,2]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(
          R"({"cones":[[0]],"n":2,"rays":[[1,0]],"weights":[1],"extra":3})"),
      SchemaError);
  CHECK_THROWS_AS(parse_fan(R"({"cones":[[0]],"n":2,"rays":[[1,0]]})"),
                  SchemaError);
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[[0]],"n":1.5,"rays":[[1,0]],"weights":[1]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[[0]],"n":2,"rays":[[1,0.5]],"weights":[1]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[[3]],"n":2,"rays":[[1,0]],"weights":[1]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(
          R"({"cones":[[0,0]],"n":2,"rays":[[1,0],[0,1]],"weights":[1]})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse_fan(R"({"cones":[[0]],"n":2,"rays":[[1,0]],"weights":[0]})"),
      SchemaError);
  CHECK_THROWS_AS(parse_fan(R"([1,2,3])"), SchemaError);
}

TEST_CASE("malformed JSON raises a parse error") {
  CHECK_THROWS_AS(parse_fan(R"({"cones":)"), ParseError);
  CHECK_THROWS_AS(parse_function("not json"), ParseError);
  CHECK_THROWS_AS(load_fan("/nonexistent/path.json"), ParseError);
}

TEST_CASE("function schema") {
  TRFunction t = parse_function(R"({"functionals":[[0,0],[1,0]]})");
  CHECK(t.functionals.size() == 2);
  CHECK(parse_function(serialize(t)) == t);
  CHECK_THROWS_AS(parse_function(R"({"functionals":[]})"), SchemaError);
  CHECK_THROWS_AS(parse_function(R"({"functionals":[[1,0],[1]]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_function(R"({"functionals":[[1,0]],"n":2})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_function(R"({"functionals":[[1,0.5]]})"), SchemaError);
}

TEST_CASE("command line wiring") {
  CHECK(run_cli("validate --fan " + data_file("fan_join.json")) == 0);
  CHECK(run_cli("balance --fan " + data_file("fan_plane_union.json")) == 0);

  // schema problem: usage error
  spit("cli_bad_fan.json",
       R"({"cones":[[0]],"n":2,"rays":[[0,0]],"weights":[1]})");
  CHECK(run_cli("validate --fan cli_bad_fan.json") == 2);
  CHECK(run_cli("validate --fan cli_missing_file.json") == 2);
  CHECK(run_cli("no-such-subcommand") == 2);

  // computational finding: exit 1 with an error report
  spit("cli_halfline.json",
       R"({"cones":[[0]],"n":1,"rays":[[1]],"weights":[1]})");
  CHECK(run_cli("balance --fan cli_halfline.json") == 1);

  CHECK(run_cli("product --fan " + data_file("fan_join.json") +
                " --function " + data_file("fn_max_x1.json") +
                " --function " + data_file("fn_max_x3.json") +
                " -o cli_prod_out.json") == 0);
  std::string out = slurp("cli_prod_out.json");
  CHECK(out.find("\"number\":1") != std::string::npos);

  CHECK(run_cli("product --fan " + data_file("fan_join.json") +
                " --function " + data_file("fn_max_x3.json") +
                " --stable --seed 99 -o cli_stable_out.json") == 0);
  std::string sout = slurp("cli_stable_out.json");
  CHECK(sout.find("\"cycle\"") != std::string::npos);
  CHECK(sout.find("\"seed\":99") != std::string::npos);

  CHECK(run_cli("classify-1d --fan " + data_file("fan_two_line_sum.json") +
                " -o cli_classify_out.json") == 0);
  std::string cout_text = slurp("cli_classify_out.json");
  CHECK(cout_text.find("\"classes\"") != std::string::npos);
  CHECK(cout_text.find("\"minimal_model\"") != std::string::npos);

  CHECK(run_cli("enumerate-planes --t1 " + data_file("fn_t1.json") +
                " --t2 " + data_file("fn_t2.json") +
                " -o cli_enum_out.json") == 0);
  std::string eout = slurp("cli_enum_out.json");
  CHECK(eout.find("\"two_lines\"") != std::string::npos);

  std::remove("cli_bad_fan.json");
  std::remove("cli_halfline.json");
  std::remove("cli_prod_out.json");
  std::remove("cli_stable_out.json");
  std::remove("cli_classify_out.json");
  std::remove("cli_enum_out.json");
}
