#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "forcing/corpus.hpp"
#include "forcing/errors.hpp"
#include "forcing/limits.hpp"
#include "forcing/parse.hpp"
#include "forcing/report.hpp"
#include "forcing/version.hpp"

namespace {

struct CommonOptions {
  std::string job_file;
  std::string ring;
  std::string ideal;
  std::string f;
  std::string mode = "global";
  std::string local_at;
  std::string closure;
  std::string matrix;
  std::string vector_entries;
  std::string point;
  std::string point_range;
  bool generic = false;
  bool json = false;
  bool certificate = false;
};

void add_limit_flags(CLI::App* cmd, forcing::Limits& limits) {
  cmd->add_option("--max-degree", limits.max_degree,
                  "total-degree guard for basis computations");
  cmd->add_option("--max-steps", limits.max_steps,
                  "reduction-step guard for basis computations");
  cmd->add_option("--max-factor-degree", limits.max_factor_degree,
                  "univariate factorization degree cap");
  cmd->add_option("--max-multivar-degree", limits.max_multivar_degree,
                  "multivariate factorization total-degree cap");
}

void add_output_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_flag("--json", opt.json, "emit the JSON report");
  cmd->add_flag("--certificate", opt.certificate,
                "include machine-checkable witnesses");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) forcing::fail(forcing::Errc::io, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// inline flags are assembled into the job grammar so both surfaces share one
// validation path
std::string assemble_job(const CommonOptions& opt, const std::string& mode) {
  if (!opt.job_file.empty()) return read_file(opt.job_file);
  std::string text;
  if (opt.ring.empty())
    forcing::fail(forcing::Errc::validation, "--ring or --job is required");
  text += "ring: " + opt.ring + "\n";
  text += "mode: " + mode + "\n";
  if (!opt.ideal.empty()) text += "ideal: " + opt.ideal + "\n";
  if (!opt.f.empty()) text += "f: " + opt.f + "\n";
  if (!opt.local_at.empty()) text += "local_at: " + opt.local_at + "\n";
  if (!opt.closure.empty()) text += "closure: " + opt.closure + "\n";
  if (!opt.matrix.empty()) text += "matrix: " + opt.matrix + "\n";
  if (!opt.vector_entries.empty())
    text += "vector: " + opt.vector_entries + "\n";
  if (opt.generic)
    text += "point: generic\n";
  else if (!opt.point.empty())
    text += "point: " + opt.point + "\n";
  if (!opt.point_range.empty())
    text += "point_range: " + opt.point_range + "\n";
  return text;
}

int run_report_command(const CommonOptions& opt, const std::string& mode,
                       std::initializer_list<forcing::JobMode> allowed,
                       const forcing::Limits& limits) {
  forcing::JobSpec job = forcing::parse_job(assemble_job(opt, mode));
  bool mode_ok = false;
  for (auto m : allowed) mode_ok = mode_ok || job.mode == m;
  if (!mode_ok)
    forcing::fail(forcing::Errc::validation,
                  "job mode '" + forcing::to_string(job.mode) +
                      "' does not belong to this subcommand");
  forcing::Report report = forcing::run_job(job, limits);
  if (opt.json)
    std::cout << forcing::report_to_json(report, opt.certificate) << "\n";
  else
    std::cout << forcing::report_to_text(report, opt.certificate);
  return forcing::report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"connectedness, components, fibers and closure membership for "
               "forcing algebras over Q[x...], Fp[x...] and Z"};
  app.set_version_flag("--version", std::string(forcing::kToolName) + " " +
                                        forcing::kToolVersion);
  app.require_subcommand(1);

  forcing::Limits limits = forcing::Limits::from_env();

  CommonOptions analyze_opt;
  CLI::App* analyze =
      app.add_subcommand("analyze", "decide connectedness of Spec A");
  analyze->add_option("--job", analyze_opt.job_file, "job file");
  analyze->add_option("--ring", analyze_opt.ring, "ring, e.g. Q[x,y];[T]");
  analyze->add_option("--ideal", analyze_opt.ideal, "ideal, e.g. [x^2]");
  analyze->add_option("--f", analyze_opt.f, "forced element");
  analyze->add_option("--mode", analyze_opt.mode, "global or local");
  analyze->add_option("--local-at", analyze_opt.local_at,
                      "prime generators for local mode, e.g. [x, y]");
  add_output_flags(analyze, analyze_opt);
  add_limit_flags(analyze, limits);

  CommonOptions member_opt;
  CLI::App* member = app.add_subcommand(
      "member", "ideal / radical / integral-closure membership");
  member->add_option("--job", member_opt.job_file, "job file");
  member->add_option("--ring", member_opt.ring, "ring");
  member->add_option("--ideal", member_opt.ideal, "ideal");
  member->add_option("--f", member_opt.f, "element to test");
  member->add_option("--closure", member_opt.closure,
                     "ideal, radical or integral");
  add_output_flags(member, member_opt);
  add_limit_flags(member, limits);

  CommonOptions fiber_opt;
  CLI::App* fiber =
      app.add_subcommand("fiber", "fiber dimensions over points");
  fiber->add_option("--job", fiber_opt.job_file, "job file");
  fiber->add_option("--ring", fiber_opt.ring, "ring");
  fiber->add_option("--ideal", fiber_opt.ideal, "single-row data");
  fiber->add_option("--f", fiber_opt.f, "single-row right-hand side");
  fiber->add_option("--matrix", fiber_opt.matrix, "matrix, e.g. [[x,y]]");
  fiber->add_option("--vector", fiber_opt.vector_entries,
                    "right-hand side vector, e.g. [-1]");
  fiber->add_option("--point", fiber_opt.point, "point, e.g. x=0, y=0");
  fiber->add_option("--point-range", fiber_opt.point_range,
                    "integer sweep a..b over all base variables");
  fiber->add_flag("--generic", fiber_opt.generic, "use the generic point");
  add_output_flags(fiber, fiber_opt);
  add_limit_flags(fiber, limits);

  CommonOptions corpus_opt;
  std::string corpus_dir;
  CLI::App* corpus = app.add_subcommand(
      "corpus", "run a directory of jobs with expectations");
  corpus->add_option("dir", corpus_dir, "directory of .job/.expect.json pairs")
      ->required();
  corpus->add_flag("--json", corpus_opt.json, "emit the JSON summary");
  add_limit_flags(corpus, limits);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      std::string mode = analyze_opt.job_file.empty() ? analyze_opt.mode : "";
      return run_report_command(
          analyze_opt, mode,
          {forcing::JobMode::global, forcing::JobMode::local}, limits);
    }
    if (*member) {
      if (member_opt.job_file.empty() && member_opt.closure.empty())
        forcing::fail(forcing::Errc::validation, "--closure is required");
      return run_report_command(member_opt, "closure",
                                {forcing::JobMode::closure}, limits);
    }
    if (*fiber) {
      return run_report_command(fiber_opt, "fiber", {forcing::JobMode::fiber},
                                limits);
    }
    if (*corpus) {
      forcing::CorpusResult result = forcing::run_corpus(corpus_dir, limits);
      if (corpus_opt.json)
        std::cout << forcing::corpus_to_json(result) << "\n";
      else
        std::cout << forcing::corpus_to_text(result);
      return result.all_passed() ? 0 : 1;
    }
  } catch (const forcing::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return forcing::error_exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
