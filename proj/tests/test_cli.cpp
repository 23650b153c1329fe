#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "seqforms/cli.hpp"
#include "seqforms/serialize.hpp"

using namespace seqforms;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("seqforms_test_" + name);
  std::ofstream(p) << body;
  return p.string();
}

Json first_line_json(const std::string& s) { return Json::parse(s.substr(0, s.find('\n'))); }

}  // namespace

TEST_CASE("classify an orthonormal basis") {
  const std::string spec = write_temp("onb.json", R"({"rule": "onb"})");
  const auto r = run({"classify", "--spec", spec, "--dim", "16"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == kSchema);
  CHECK(j["command"] == "classify");
  CHECK(j["report"]["riesz_basis"] == true);
  CHECK(j["report"]["lower_bound"].get<double>() == doctest::Approx(1.0));
  CHECK(j["input"]["eq_tol"].get<double>() == doctest::Approx(1e-10));
  // Runtime is reported on stderr only.
  CHECK(r.out.find("runtime") == std::string::npos);
  CHECK(Json::parse(r.err)["metadata"]["command"] == "classify");
}

TEST_CASE("classify with a ladder and partner") {
  const std::string up = write_temp("up.json", R"({"rule": "diagonal", "params": {"weight": "n"}})");
  const std::string down = write_temp("down.json", R"({"rule": "diagonal", "params": {"weight": "1/n"}})");
  const auto r = run({"classify", "--spec", up, "--dim", "8", "--ladder", "16,64,256", "--partner", down});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["report"]["biorthogonal_partner_checked"] == true);
  CHECK(j["report"]["asymptotic"]["inferred_class"] == "LowerSemiFrame");
}

TEST_CASE("output is byte-identical across runs") {
  const std::string spec = write_temp("fd.json", R"({"rule": "finite-difference"})");
  const auto a = run({"reconstruct", "--spec", spec, "--dim", "6", "--seed", "3"});
  const auto b = run({"reconstruct", "--spec", spec, "--dim", "6", "--seed", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("form-assess and reconstruct a weight-inverse pair") {
  const std::string up = write_temp("up2.json", R"({"rule": "diagonal", "params": {"weight": "n"}})");
  const std::string down = write_temp("down2.json", R"({"rule": "diagonal", "params": {"weight": "1/n"}})");
  const auto f = run({"form-assess", "--left", up, "--right", down, "--dim", "8", "--lambda", "1,2:1"});
  REQUIRE(f.code == 0);
  const Json fj = Json::parse(f.out);
  CHECK(fj["report"]["zero_closed"] == true);
  CHECK(fj["report"]["routes_agree"] == true);

  const auto r = run({"reconstruct", "--left", up, "--right", down, "--dim", "8"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("reproducing_left") != std::string::npos);
  CHECK(r.out.find("reproducing_right") != std::string::npos);
}

TEST_CASE("scenario and list") {
  const auto s = run({"scenario", "--id", "weight-inverse-pair", "--dense-ladder", "8,16,32"});
  REQUIRE(s.code == 0);
  CHECK(Json::parse(s.out)["report"]["all_passed"] == true);
  const auto l = run({"list"});
  REQUIRE(l.code == 0);
  CHECK(l.out.find("weighted-riesz") != std::string::npos);
}

TEST_CASE("csv output") {
  const std::string spec = write_temp("onb2.json", R"({"rule": "onb"})");
  const auto r = run({"classify", "--spec", spec, "--dim", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("field,value\n", 0) == 0);
  CHECK(r.out.find("report.riesz_basis,true") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  const std::string spec = write_temp("onb3.json", R"({"rule": "onb"})");
  const fs::path out = fs::temp_directory_path() / "seqforms_test_out.json";
  const auto r = run({"classify", "--spec", spec, "--dim", "4", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  CHECK(Json::parse(in)["command"] == "classify");
}

TEST_CASE("usage errors exit with 2") {
  const std::string spec = write_temp("onb4.json", R"({"rule": "onb"})");
  const std::string bad = write_temp("bad.json", R"({"rule": )");
  const std::string unknown = write_temp("unknown.json", R"({"rule": "spiral"})");
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"classify", "--spec", spec, "--dim", "0"}).code == 2);
  CHECK(run({"classify", "--spec", spec}).code == 2);  // infinite family needs --dim
  CHECK(run({"classify", "--spec", bad, "--dim", "3"}).code == 2);
  CHECK(run({"classify", "--spec", unknown, "--dim", "3"}).code == 2);
  CHECK(run({"classify", "--spec", "/nonexistent/spec.json", "--dim", "3"}).code == 2);
  CHECK(run({"classify", "--spec", spec, "--dim", "3", "--tol-eq", "-1"}).code == 2);
  CHECK(run({"classify", "--spec", spec, "--dim", "3", "--format", "xml"}).code == 2);
  const auto r = run({"classify", "--spec", bad, "--dim", "3"});
  const Json e = first_line_json(r.err);
  CHECK(e["schema"] == kSchema);
  CHECK(e["error"]["kind"] == "usage");
}

TEST_CASE("domain errors exit with 1") {
  const std::string spec = write_temp("onb5.json", R"({"rule": "onb"})");
  const auto r = run({"classify", "--spec", spec, "--dim", "4", "--count", "3"});
  REQUIRE(r.code == 0);  // finite bounds are fine with count < dim
  const auto c = run({"reconstruct", "--spec", spec, "--dim", "4", "--count", "3"});
  CHECK(c.code == 1);
  CHECK(first_line_json(c.err)["error"]["kind"] == "NotLowerSemiFrame");
  const auto s = run({"scenario", "--id", "nope"});
  CHECK(s.code == 1);
  const auto big = run({"scenario", "--id", "weight-inverse-pair", "--dense-ladder", "8,16,4096"});
  CHECK(big.code == 1);
  CHECK(first_line_json(big.err)["error"]["kind"] == "ResourceLimit");
}
