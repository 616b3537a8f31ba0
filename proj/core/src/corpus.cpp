#include "forcing/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "forcing/errors.hpp"
#include "forcing/parse.hpp"
#include "forcing/report.hpp"

namespace forcing {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// expected must be contained in actual: objects key-wise (recursing), arrays
// element-wise with equal length, scalars exactly
bool subset_match(const json& expected, const json& actual, std::string path,
                  std::string& mismatch) {
  if (expected.is_object()) {
    if (!actual.is_object()) {
      mismatch = path + ": expected an object";
      return false;
    }
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) {
        mismatch = path + "/" + it.key() + ": missing";
        return false;
      }
      if (!subset_match(it.value(), actual.at(it.key()),
                        path + "/" + it.key(), mismatch))
        return false;
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) {
      mismatch = path + ": expected an array of size " +
                 std::to_string(expected.size()) + ", got " + actual.dump();
      return false;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!subset_match(expected[i], actual[i],
                        path + "[" + std::to_string(i) + "]", mismatch))
        return false;
    }
    return true;
  }
  if (expected != actual) {
    mismatch = path + ": expected " + expected.dump() + ", got " + actual.dump();
    return false;
  }
  return true;
}

}  // namespace

bool CorpusResult::all_passed() const {
  if (entries.empty()) return false;
  return std::all_of(entries.begin(), entries.end(),
                     [](const Entry& e) { return e.passed; });
}

CorpusResult run_corpus(const std::string& directory, const Limits& limits) {
  fs::path dir(directory);
  if (!fs::is_directory(dir))
    fail(Errc::io, directory + " is not a directory");

  std::vector<fs::path> jobs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".job") jobs.push_back(entry.path());
  }
  std::sort(jobs.begin(), jobs.end());
  if (jobs.empty()) fail(Errc::io, "no .job files in " + directory);

  CorpusResult result;
  for (const auto& job_path : jobs) {
    CorpusResult::Entry entry;
    entry.name = job_path.stem().string();
    fs::path expect_path = job_path;
    expect_path.replace_extension(".expect.json");
    if (!fs::exists(expect_path))
      fail(Errc::validation,
           "missing expectation " + expect_path.filename().string());
    try {
      JobSpec job = parse_job(read_file(job_path));
      Report report = run_job(job, limits);
      json actual = json::parse(report_to_json(report, true));
      json expected = json::parse(read_file(expect_path));
      std::string mismatch;
      entry.passed = subset_match(expected, actual, "", mismatch);
      entry.detail = mismatch;
    } catch (const Error& e) {
      entry.passed = false;
      entry.detail = e.what();
    } catch (const json::exception& e) {
      entry.passed = false;
      entry.detail = e.what();
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

std::string corpus_to_text(const CorpusResult& result) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& entry : result.entries) {
    out += entry.passed ? "[pass] " : "[FAIL] ";
    out += entry.name;
    if (!entry.passed && !entry.detail.empty()) out += "  (" + entry.detail + ")";
    out += "\n";
    if (entry.passed) ++passed;
  }
  out += std::to_string(passed) + "/" + std::to_string(result.entries.size()) +
         " passed\n";
  return out;
}

std::string corpus_to_json(const CorpusResult& result) {
  json j;
  json entries = json::array();
  std::size_t passed = 0;
  for (const auto& entry : result.entries) {
    json e;
    e["name"] = entry.name;
    e["status"] = entry.passed ? "pass" : "fail";
    if (!entry.passed) e["detail"] = entry.detail;
    entries.push_back(std::move(e));
    if (entry.passed) ++passed;
  }
  j["results"] = std::move(entries);
  j["passed"] = passed;
  j["failed"] = result.entries.size() - passed;
  return j.dump(2);
}

}  // namespace forcing
