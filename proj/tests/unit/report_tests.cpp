#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "forcing/corpus.hpp"
#include "forcing/errors.hpp"
#include "forcing/parse.hpp"
#include "forcing/report.hpp"
#include "support/schema_check.hpp"
#include "support/test_util.hpp"

using namespace forcing;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string env_or(const char* name, const char* fallback) {
  const char* value = std::getenv(name);
  return value && *value ? value : fallback;
}

json run_to_json(const std::string& job_text, bool certificates = true) {
  JobSpec job = parse_job(job_text);
  Report report = run_job(job);
  return json::parse(report_to_json(report, certificates));
}

json strip_timing(json j) {
  j.erase("timing_ms");
  return j;
}

}  // namespace

TEST_CASE("report JSON carries the pinned decomposition shape") {
  json j = run_to_json(
      "ring: Q[x,y];[T]\nideal: [x^2*y]\nf: -x*y\nmode: global\n");
  CHECK(j["verdict"]["connected"] == true);
  const json& dec = j["decomposition"];
  CHECK(dec["d"] == "x*y");
  CHECK(dec["h_prime"] == "x*T - 1");
  CHECK(dec["vertical"].size() == 2);
  CHECK(dec["edges"] == json::parse("[[0,1]]"));
  CHECK(dec["h_edges"] == json::parse("[1]"));
  CHECK(dec["groups"] == json::parse("[[0,1]]"));
  CHECK(dec["verdict"] == "connected");
  CHECK(j["tool"]["name"] == "forcing");
}

TEST_CASE("reports validate against the shipped schema") {
  std::string schema_path = env_or("FORCING_SCHEMA", "schemas/report.schema.json");
  std::ifstream in(schema_path);
  REQUIRE_MESSAGE(in.good(), "schema not found at ", schema_path);
  json schema = json::parse(in);

  const char* jobs[] = {
      "ring: Q[x];[T]\nideal: [x^2]\nf: -x\nmode: global\n",
      "ring: Q[x,y];[T]\nideal: [x^2*y]\nf: -x*y\nmode: local\nlocal_at: [x]\n",
      "ring: Q[x]\nideal: [x^2]\nf: x\nmode: closure\nclosure: radical\n",
      "ring: Q[x,y]\nideal: [x^2, y^2]\nf: x*y\nmode: closure\nclosure: integral\n",
      "ring: Q[x,y];[T1,T2]\nmode: fiber\nideal: [x, y]\nf: -1\npoint: x=0, y=0\n",
      "ring: Z;[T]\nideal: [4]\nf: 2\nmode: global\n",
  };
  for (const char* job : jobs) {
    for (bool certs : {false, true}) {
      json report = run_to_json(job, certs);
      std::string violation = testutil::schema_violation(schema, report);
      CHECK_MESSAGE(violation.empty(), violation, " in ", report.dump(2));
    }
  }
}

TEST_CASE("identical inputs give identical JSON apart from timing") {
  const char* job =
      "ring: Q[x,y];[T]\nideal: [x^2*y]\nf: -x*y\nmode: global\n";
  json a = strip_timing(run_to_json(job));
  json b = strip_timing(run_to_json(job));
  CHECK(a.dump() == b.dump());
}

TEST_CASE("factorizations serialize with unit and verified flags") {
  auto R = testutil::ring_of("Q[x,y]");
  Factorization fz = factor_prime(testutil::pp("2*x^2*y", R));
  json j = json::parse(factorization_to_json(fz));
  CHECK(j["unit"] == "2");
  REQUIRE(j["factors"].size() == 2);
  CHECK(j["factors"][0]["factor"] == "x");
  CHECK(j["factors"][0]["multiplicity"] == 2);
  CHECK(j["factors"][0]["verified"] == true);
}

TEST_CASE("the shipped corpus passes through the library runner") {
  std::string dir = env_or("FORCING_CORPUS_DIR", "corpus");
  CorpusResult result = run_corpus(dir);
  for (const auto& entry : result.entries)
    CHECK_MESSAGE(entry.passed, entry.name, ": ", entry.detail);
  CHECK(result.all_passed());
  CHECK(result.entries.size() >= 20);
}

TEST_CASE("corpus runner flags flipped expectations and bad directories") {
  fs::path tmp = fs::temp_directory_path() / "forcing_corpus_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  {
    std::ofstream job(tmp / "flip.job");
    job << "ring: Q[x];[T]\nideal: [x^2]\nf: -x\nmode: global\n";
    std::ofstream expect(tmp / "flip.expect.json");
    expect << "{\"verdict\": {\"connected\": true}}\n";
  }
  CorpusResult flipped = run_corpus(tmp.string());
  REQUIRE(flipped.entries.size() == 1);
  CHECK(!flipped.entries[0].passed);
  CHECK(!flipped.all_passed());
  CHECK(flipped.entries[0].name == "flip");

  // missing expectation sidecar
  fs::remove(tmp / "flip.expect.json");
  CHECK_THROWS_AS((void)run_corpus(tmp.string()), Error);

  // empty directory
  fs::remove(tmp / "flip.job");
  CHECK_THROWS_AS((void)run_corpus(tmp.string()), Error);
  fs::remove_all(tmp);
}

TEST_CASE("exit codes") {
  JobSpec connected = parse_job(
      "ring: Q[x,y];[T]\nideal: [x^2*y]\nf: -x*y\nmode: global\n");
  CHECK(report_exit_code(run_job(connected)) == 0);
  JobSpec disconnected =
      parse_job("ring: Q[x];[T]\nideal: [x^2]\nf: -x\nmode: global\n");
  CHECK(report_exit_code(run_job(disconnected)) == 3);
  CHECK(error_exit_code(Error(Errc::unsupported_closure, "")) == 4);
  CHECK(error_exit_code(Error(Errc::parse, "")) == 1);
}

TEST_CASE("the CLI binary returns the documented exit codes") {
  std::string cli = env_or("FORCING_CLI", "");
  REQUIRE_MESSAGE(!cli.empty(),
                  "FORCING_CLI must point at the built binary (set by ctest)");
  auto exit_of = [&](const std::string& args) {
    std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(exit_of("analyze --ring \"Q[x];[T]\" --ideal [x^2] --f -x") == 3);
  CHECK(exit_of("analyze --ring \"Q[x,y];[T]\" --ideal [x^2*y] --f -x*y") == 0);
  CHECK(exit_of("member --ring Q[x] --ideal [x^2] --f x --closure radical") ==
        0);
  CHECK(exit_of("member --ring Q[x] --ideal [x^2] --f x --closure integral") ==
        3);
  CHECK(exit_of("analyze --ring \"Q[x];[T]\" --ideal [x^^2] --f x") == 1);
  CHECK(exit_of("member --ring \"Q[x,y]\" --ideal [x+y^2] --f x "
                "--closure integral") == 4);
  CHECK(exit_of("fiber --ring \"Q[x,y];[T1,T2]\" --ideal [x,y] --f -1 "
                "--point x=0,y=0") == 0);
}

TEST_CASE("point_range sweeps a rational grid") {
  json j = run_to_json(
      "ring: Q[x,y];[T1,T2]\nmode: fiber\nideal: [x, y]\nf: -1\n"
      "point_range: -1..1\n");
  CHECK(j["fibers"].size() == 9);
  int empty = 0;
  for (const auto& fiber : j["fibers"])
    if (fiber["status"] == "empty") ++empty;
  CHECK(empty == 1);  // only the origin
}

TEST_CASE("trusted factors reach the decomposition through the job file") {
  json j = run_to_json(
      "ring: Q[x,y];[T]\n"
      "ideal: [(x^4 + y^4 + 1)^2]\n"
      "f: (x^4 + y^4 + 1)*(x^4 + y^4 + 1)\n"
      "mode: global\n"
      "trusted_factors: [x^4 + y^4 + 1]\n");
  CHECK(j["verdict"]["connected"] == true);
  CHECK(j["verdict"]["criterion"] == "section");
  CHECK(j["decomposition"]["vertical"].size() == 1);
}
