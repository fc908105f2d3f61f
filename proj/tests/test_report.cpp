#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace ckf;
using namespace ckt;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ckf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "ckforms_test_" + name + ".json";
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("grid parsing") {
  CHECK(parse_grid("").empty());
  CHECK(parse_grid("  ").empty());
  CHECK(parse_grid("-1,0,1/2") == std::vector<std::string>{"-1", "0", "1/2"});
  CHECK(parse_grid("0:1/2:3/2") == std::vector<std::string>{"0", "1/2", "1", "3/2"});
  CHECK(parse_grid("1:-1:-1") == std::vector<std::string>{"1", "0", "-1"});
  CHECK(parse_grid("0:0.25:0.5") == std::vector<std::string>{"0", "0.25", "0.5"});
  CHECK_THROWS_AS(parse_grid("0:0:1"), InputError);
  CHECK_THROWS_AS(parse_grid("1,,2"), InputError);
  CHECK_THROWS_AS(parse_grid("0:1"), InputError);
}

TEST_CASE("algebra JSON input") {
  const auto in = parse_algebra_json(
      R"({"label":"t6","brackets":[{"i":1,"j":2,"v":["0","0","1","0"]},{"i":1,"j":3,"v":["0","-1","0","0"]}]})");
  CHECK(in.exact());
  CHECK(resolve_backend(Backend::automatic, in) == Backend::rational);
  const auto g = build_algebra<Q>(in);
  CHECK(g.bracket(0, 1) == e(3));
  CHECK(g.bracket(0, 2) == -e(2));

  const auto dec = parse_algebra_json(R"({"brackets":[{"i":1,"j":2,"v":["0","0","0.5","0"]}]})");
  CHECK_FALSE(dec.exact());
  CHECK(resolve_backend(Backend::automatic, dec) == Backend::floating);
  CHECK_THROWS_AS(resolve_backend(Backend::rational, dec), InputError);

  CHECK_THROWS_AS(parse_algebra_json("{"), InputError);
  CHECK_THROWS_AS(parse_algebra_json("[]"), InputError);
  CHECK_THROWS_AS(parse_algebra_json(R"({"brackets":[{"i":1,"j":2,"v":["0","1"]}]})"), InputError);
  CHECK_THROWS_AS(build_algebra<Q>(parse_algebra_json(R"({"brackets":[{"i":1,"j":1,"v":["0","0","0","0"]}]})")),
                  InputError);
  CHECK_THROWS_AS(build_algebra<Q>(parse_algebra_json(
                      R"({"brackets":[{"i":1,"j":2,"v":["0","0","1","0"]},{"i":2,"j":1,"v":["0","0","1","0"]}]})")),
                  InputError);
}

TEST_CASE("family input") {
  CHECK_THROWS_AS(family_input("nope", {}), InputError);
  CHECK_THROWS_AS(family_input("gab", {{"a", "1"}}), InputError);
  CHECK_THROWS_AS(family_input("type6", {{"a", "1"}}), InputError);
  CHECK_THROWS_AS(build_algebra<Q>(family_input("type2", {{"c", "0"}})), InputError);
  CHECK(family_parameter_names("type4") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("report content") {
  const auto r = analyze(family_input("gab", {{"a", "1/2"}, {"b", "1"}}), Backend::automatic);
  CHECK(r.backend == "rational");
  CHECK(r.theorem_case == "2");
  CHECK(r.ck_plus == 8);
  CHECK(r.ck_minus == 1);
  CHECK(r.weyl_vanishing_side == "plus");
  CHECK(r.scalar_curvature == "-6");
  CHECK(r.weyl_plus.zero);
  CHECK(r.weyl_minus.char_poly == std::array<std::string, 3>{"0", "-3/4", "1/4"});
  CHECK(r.weyl_minus.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(r.dimension_weyl_check);
  CHECK(r.lck.size() == 4);

  const auto t = analyze(family_input("type6", {}), Backend::automatic);
  CHECK(t.theorem_case == "1");
  CHECK(t.ck_plus == 10);
  CHECK(t.ck_minus == 10);
}

TEST_CASE("describe names frame complex structures") {
  CHECK(describe(gab_complex_structure<Q>(1)) == "Je1=e4,Je2=e3");
  CHECK(describe(gab_complex_structure<Q>(-1)) == "Je1=e4,Je2=-e3");
  CHECK(describe(frame_complex_structure<Q>(1, -1, 1)) == "Je1=-e2,Je3=e4");
}

TEST_CASE("report JSON round-trips and is deterministic") {
  for (const auto& in : {family_input("gab", {{"a", "2"}, {"b", "1"}}), family_input("abelian", {}),
                         family_input("gab", {{"a", "0.5"}, {"b", "1"}})}) {
    const auto r = analyze(in, Backend::automatic, {Tolerance{}, true});
    const auto j = to_json(r);
    CHECK(report_from_json(j) == r);
    CHECK(report_from_json(ordered_json::parse(j.dump())) == r);
    CHECK(to_json(analyze(in, Backend::automatic, {Tolerance{}, true})).dump() == j.dump());
  }
  CHECK_THROWS_AS(report_from_json(ordered_json::parse(R"({"label":"x"})")), InputError);
}

TEST_CASE("Jacobi failures surface as validation errors") {
  const auto in = parse_algebra_json(
      R"({"label":"bad","brackets":[{"i":1,"j":2,"v":["1","0","1","0"]},{"i":1,"j":3,"v":["0","-1","0","0"]}]})");
  try {
    analyze(in, Backend::automatic);
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    REQUIRE(err.lines().size() == 1);
    CHECK(err.lines()[0] == "(e1,e2,e3): -e2");
  }
}

TEST_CASE("sweeps") {
  const auto s = run_sweep("gab", {{"a", {"-1", "0", "1/2", "1", "2"}}, {"b", {"0", "1"}}}, Backend::automatic);
  REQUIRE(s.rows.size() == 10);
  CHECK(s.checked == 10);
  CHECK(s.dimension_weyl_check);
  CHECK(s.rows[1].parameters == std::vector<std::pair<std::string, std::string>>{{"a", "-1"}, {"b", "1"}});
  CHECK(s.rows[4].report->theorem_case == "2");
  CHECK(s.rows[9].report->theorem_case == "3");

  const auto t3 = run_sweep("type3", {{"alpha", {"0", "1", "3/2"}}}, Backend::automatic);
  for (const auto& row : t3.rows) CHECK(row.report->theorem_case == "1");

  const auto empty = run_sweep("gab", {{"a", {}}, {"b", {"1"}}}, Backend::automatic);
  CHECK(empty.rows.empty());

  const auto partial = run_sweep("type3", {{"alpha", {"-1", "1"}}}, Backend::automatic);
  CHECK_FALSE(partial.rows[0].report.has_value());
  CHECK_FALSE(partial.rows[0].error.empty());
  CHECK(partial.rows[1].report.has_value());
  CHECK(sweep_json(partial)["summary"]["analyzed"] == 1);
}

TEST_CASE("command line exit statuses") {
  SUBCASE("analyze") {
    const Run ok = invoke({"analyze", "--family", "gab", "--a", "1/2", "--b", "1", "--format", "json"});
    CHECK(ok.code == 0);
    const auto j = ordered_json::parse(ok.out);
    CHECK(j["theorem_case"] == "2");
    CHECK(j["ck_dims"]["plus"] == 8);
    CHECK(invoke({"analyze", "--family", "type6"}).code == 0);
    CHECK(invoke({"analyze", "--family", "gab", "--a", "1/2"}).code == cli::parse_error);
    CHECK(invoke({"analyze", "--family", "gab", "--a", "x", "--b", "1"}).code == cli::parse_error);
    CHECK(invoke({"analyze", "--family", "gab", "--a", "0.5", "--b", "1", "--backend", "rational"}).code ==
          cli::parse_error);
    CHECK(invoke({"analyze", "--family", "nope"}).code == cli::parse_error);
    CHECK(invoke({"analyze"}).code == cli::parse_error);
    CHECK(invoke({"frobnicate"}).code == cli::parse_error);
    CHECK(invoke({"analyze", "missing_file.json"}).code == cli::parse_error);
    // a tolerance far below the rounding noise leaves rank decisions borderline
    const Run shaky = invoke({"analyze", "--family", "gab", "--a", "2.1", "--b", "1.3", "--tol", "1e-12"});
    CHECK(shaky.code == cli::low_confidence);
    CHECK(shaky.out.find("Warnings") != std::string::npos);
  }
  SUBCASE("analyze a file") {
    const std::string bad = write_temp(
        "bad", R"({"label":"bad","brackets":[{"i":1,"j":2,"v":["1","0","1","0"]},{"i":1,"j":3,"v":["0","-1","0","0"]}]})");
    const Run r = invoke({"analyze", bad});
    CHECK(r.code == cli::validation_error);
    CHECK(r.err.find("(e1,e2,e3): -e2") != std::string::npos);
    const std::string good = write_temp("good", R"({"label":"t6","brackets":[{"i":1,"j":2,"v":["0","0","1","0"]}]})");
    CHECK(invoke({"analyze", good}).code == 0);
    std::remove(bad.c_str());
    std::remove(good.c_str());
  }
  SUBCASE("sweep") {
    const Run r = invoke({"sweep", "--family", "type3", "--alpha", "0,1,3/2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("| summary |") != std::string::npos);
    const Run empty = invoke({"sweep", "--family", "gab", "--a", "", "--b", "0,1", "--format", "json"});
    CHECK(empty.code == 0);
    CHECK(ordered_json::parse(empty.out)["rows"].empty());
    CHECK(invoke({"sweep", "--family", "gab", "--a", "1"}).code == cli::parse_error);
  }
  SUBCASE("selftest") {
    const Run bad = invoke({"selftest", "--trials", "3", "--inject", "reconstruction-sign"});
    CHECK(bad.code == cli::selftest_failed);
    CHECK(bad.out.find("FAIL reconstruction") != std::string::npos);
    const Run fl = invoke({"selftest", "--trials", "3", "--backend", "float"});
    CHECK(fl.code == 0);
    CHECK(fl.out.find("exact backend is preferred") != std::string::npos);
  }
}
