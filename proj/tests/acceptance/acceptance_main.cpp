// Acceptance gate: one pass/fail line per criterion, exit 0 only when every
// criterion holds. All comparisons are exact; random suites run on fixed
// seeds.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "forcing/closure.hpp"
#include "forcing/components.hpp"
#include "forcing/corpus.hpp"
#include "forcing/errors.hpp"
#include "forcing/factor.hpp"
#include "forcing/groebner.hpp"
#include "forcing/parse.hpp"
#include "forcing/report.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace forcing;
using nlohmann::json;
using testutil::pp;
using testutil::pplist;
using testutil::ring_of;

namespace {

int checks_failed = 0;

void expect(bool ok, const std::string& what, std::string& detail) {
  if (!ok) {
    ++checks_failed;
    if (detail.empty()) detail = what;
  }
}

std::string env_or(const char* name, const char* fallback) {
  const char* value = std::getenv(name);
  return value && *value ? value : fallback;
}

ForcingData make_data(const RingPtr& ring,
                      const std::vector<std::string>& ideal,
                      const std::string& f) {
  ForcingData data;
  data.ring = ring;
  data.ideal = pplist(ideal, ring);
  data.f = pp(f, ring);
  return data;
}

// ---------------------------------------------------------------------------
// 1. golden corpus
// ---------------------------------------------------------------------------

bool golden_corpus(std::string& detail) {
  auto Q1 = ring_of("Q[x];[T]");
  auto Q2 = ring_of("Q[x,y];[T]");
  auto Q22 = ring_of("Q[x,y];[T1,T2]");

  auto ex1 = is_connected(make_data(Q1, {"x^2"}, "-x"));
  expect(!ex1.connected, "x^2*T - x must be disconnected", detail);
  expect(ex1.decomposition->vertical.size() == 1 &&
             ex1.decomposition->vertical[0].first == pp("x", Q1) &&
             *ex1.decomposition->h_prime == pp("x*T - 1", Q1),
         "x^2*T - x components are (x) and (x*T - 1)", detail);

  auto ex2 = is_connected(make_data(Q2, {"x"}, "y"));
  expect(ex2.connected && ex2.decomposition->vertical.empty() &&
             ex2.decomposition->d.is_one(),
         "x*T + y is connected with d = 1 and no vertical component", detail);

  auto ex3 = is_connected_local(make_data(Q2, {"x*y"}, "-x"),
                                pplist({"x", "y"}, Q2));
  expect(ex3.connected, "x*y*T - x is connected at the origin", detail);

  expect(is_connected(make_data(Q2, {"x^2"}, "x*y")).connected,
         "x(xT + y) is connected", detail);
  expect(!is_connected(make_data(Q2, {"x^2"}, "x^2 + x")).connected,
         "x(xT + x + 1) is disconnected", detail);
  expect(is_connected(make_data(Q22, {"x^2*y", "x*y^2"}, "3*x*y")).connected,
         "xy(xT1 + yT2 + c) is connected for constant c != 0", detail);

  auto ce = is_connected(make_data(Q2, {"x^2*y"}, "-x*y"));
  expect(ce.connected, "x^2*y*T - x*y is connected", detail);
  expect(ce.decomposition->edges ==
                 std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}} &&
             ce.decomposition->h_edges == std::vector<std::size_t>{1},
         "x^2*y*T - x*y has edges exactly {x,y} and h_edges exactly {y}",
         detail);

  auto ce2 = is_connected_local(make_data(Q2, {"x^2*y"}, "-x*y"),
                                pplist({"x"}, Q2));
  expect(!ce2.connected, "x^2*y*T - x*y is disconnected locally at (x)",
         detail);

  CorpusResult corpus = run_corpus(env_or("FORCING_CORPUS_DIR", "corpus"));
  for (const auto& entry : corpus.entries)
    expect(entry.passed, "corpus entry " + entry.name + ": " + entry.detail,
           detail);
  if (detail.empty())
    detail = std::to_string(corpus.entries.size()) + " corpus entries";
  return checks_failed == 0;
}

// ---------------------------------------------------------------------------
// 2. closure corpus
// ---------------------------------------------------------------------------

bool closure_corpus(std::string& detail) {
  auto Q1 = ring_of("Q[x]");
  auto Q2 = ring_of("Q[x,y]");
  auto x2 = pplist({"x^2"}, Q1);
  auto x = pp("x", Q1);

  expect(!closure_member(x, x2, ClosureKind::ideal).answer, "x not in (x^2)",
         detail);
  auto rad = closure_member(x, x2, ClosureKind::radical);
  expect(rad.answer && rad.radical_exponent == 2, "x in rad(x^2) at power 2",
         detail);
  expect(rad.membership &&
             verify_certificate(*rad.membership, x2, x),
         "radical certificate re-verifies", detail);
  expect(!closure_member(x, x2, ClosureKind::integral).answer,
         "x outside the integral closure of (x^2)", detail);

  auto in = closure_member(pp("x*y", Q2), pplist({"x^2", "y^2"}, Q2),
                           ClosureKind::integral);
  expect(in.answer, "xy inside the integral closure of (x^2, y^2)", detail);
  bool lambda_ok = in.polyhedron.size() == 1;
  if (lambda_ok) {
    const auto& cert = in.polyhedron[0].certificate;
    lambda_ok =
        cert.lambdas == std::vector<Coeff>{Coeff(1, 2), Coeff(1, 2)};
    mpq_class total(0);
    for (const auto& l : cert.lambdas) total += l;
    lambda_ok = lambda_ok && total == 1 &&
                cert.lambdas[0] * 2 + cert.slack[0] == 1 &&
                cert.lambdas[1] * 2 + cert.slack[1] == 1;
  }
  expect(lambda_ok, "lambda certificate (1/2, 1/2) verified", detail);

  expect(!closure_member(pp("x*y", Q2), pplist({"x^3", "y^3"}, Q2),
                         ClosureKind::integral)
              .answer,
         "xy outside the integral closure of (x^3, y^3)", detail);
  if (detail.empty()) detail = "all five verdicts from the worked sentence";
  return checks_failed == 0;
}

// ---------------------------------------------------------------------------
// 3. fiber checks
// ---------------------------------------------------------------------------

bool fiber_checks(std::string& detail) {
  auto R = ring_of("Q[x,y];[T1,T2]");
  ForcingData line;
  line.ring = R;
  line.matrix = {{pp("x", R), pp("y", R)}};
  line.rhs = {pp("-1", R)};

  auto origin = fiber_at(line, parse_point("x=0, y=0", R));
  expect(origin.empty, "x*T1 + y*T2 - 1 has an empty fiber at the origin",
         detail);

  std::mt19937_64 rng(19937);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  int nonzero_checked = 0;
  while (nonzero_checked < 20) {
    Coeff a(num(rng), den(rng));
    Coeff b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (a == 0 && b == 0) continue;
    PointSpec point;
    point.coords = {{0, a}, {1, b}};
    point.text = "x=" + a.get_str() + ", y=" + b.get_str();
    auto fiber = fiber_at(line, point);
    expect(!fiber.empty && fiber.dimension == 1,
           "dimension 1 at nonzero point " + point.text, detail);
    ++nonzero_checked;
  }

  PointSpec generic;
  generic.generic = true;
  auto gen = fiber_at(line, generic);
  expect(!gen.empty && gen.dimension == 1, "dimension 1 at the generic point",
         detail);

  ForcingData diag;
  diag.ring = R;
  diag.matrix = {{pp("x", R), pp("0", R)}, {pp("0", R), pp("y", R)}};
  diag.rhs = pplist({"-x*y", "-x*y"}, R);
  expect(fiber_at(diag, parse_point("x=0, y=0", R)).dimension == 2,
         "diag fiber dimension 2 at (0,0)", detail);
  expect(fiber_at(diag, parse_point("x=1, y=0", R)).dimension == 1,
         "diag fiber dimension 1 at (1,0)", detail);
  expect(fiber_at(diag, parse_point("x=1, y=1", R)).dimension == 0,
         "diag fiber dimension 0 at (1,1)", detail);
  if (detail.empty())
    detail = "origin + 20 random nonzero points + generic + 3 matrix points";
  return checks_failed == 0;
}

// ---------------------------------------------------------------------------
// 4. property suites
// ---------------------------------------------------------------------------

int certificates_verified = 0;

void verify_or_fail(const Certificate& cert, std::span<const Polynomial> gens,
                    const Polynomial& target, std::string& detail) {
  expect(verify_certificate(cert, gens, target), "certificate re-verification",
         detail);
  ++certificates_verified;
}

bool homogeneous_law(std::string& detail) {
  std::mt19937_64 rng(101);
  auto R = ring_of("Q[x,y];[T1,T2]");
  for (int i = 0; i < 200; ++i) {
    ForcingData data;
    data.ring = R;
    data.ideal = {testutil::random_poly(rng, R, 3, 3, 5),
                  testutil::random_poly(rng, R, 3, 3, 5)};
    data.f = Polynomial::zero(R);
    expect(is_connected(data).connected, "homogeneous data must be connected",
           detail);
  }
  if (detail.empty()) detail = "200/200 connected";
  return checks_failed == 0;
}

bool section_law(std::string& detail) {
  std::mt19937_64 rng(202);
  auto R = ring_of("Q[x,y];[T1,T2]");
  for (int i = 0; i < 200; ++i) {
    ForcingData data;
    data.ring = R;
    data.ideal = {testutil::random_poly(rng, R, 3, 3, 5),
                  testutil::random_poly(rng, R, 3, 3, 5)};
    data.f = testutil::random_poly(rng, R, 2, 2, 3) * data.ideal[0] +
             testutil::random_poly(rng, R, 2, 2, 3) * data.ideal[1];
    expect(is_connected(data).connected, "f in I must give a connected space",
           detail);
  }
  if (detail.empty()) detail = "200/200 connected";
  return checks_failed == 0;
}

Polynomial random_prime_product(std::mt19937_64& rng, const RingPtr& R,
                                const std::vector<std::string>& primes,
                                bool integers) {
  if (integers) {
    static const long ps[] = {2, 3, 5};
    long value = 1;
    for (long p : ps) {
      std::uniform_int_distribution<int> e(0, 2);
      for (int k = e(rng); k > 0; --k) value *= p;
    }
    return Polynomial::constant(R, Coeff(value));
  }
  Polynomial value = Polynomial::constant(R, Coeff(1));
  for (const auto& p : primes) {
    std::uniform_int_distribution<int> e(0, 2);
    for (int k = e(rng); k > 0; --k) value = value * pp(p, R);
  }
  return value;
}

bool pid_triple(std::string& detail) {
  std::mt19937_64 rng(303);
  auto QX = ring_of("Q[x];[T1,T2]");
  auto Z = ring_of("Z;[T1,T2]");
  const std::vector<std::string> primes = {"x", "x + 1", "x - 1"};
  int runs = 0;
  for (int i = 0; i < 100; ++i) {
    for (const auto& R : {QX, Z}) {
      bool integers = R->domain() == Domain::integers;
      ForcingData data;
      data.ring = R;
      data.ideal = {random_prime_product(rng, R, primes, integers),
                    random_prime_product(rng, R, primes, integers)};
      data.f = random_prime_product(rng, R, primes, integers);
      auto global = is_connected(data);
      auto pid = is_connected_pid(data);
      bool conjunction = true;
      for (const auto& [prime, ok] : local_profile(data))
        conjunction = conjunction && ok;
      expect(global.connected == pid.connected,
             "global and gcd verdicts agree", detail);
      expect(global.connected == conjunction,
             "global verdict equals the local conjunction", detail);
      ++runs;
    }
  }
  if (detail.empty())
    detail = std::to_string(runs) + " instances over Q[x] and Z";
  return checks_failed == 0;
}

bool dedekind_equivalence(std::string& detail) {
  std::mt19937_64 rng(404);
  auto R = ring_of("Q[x];[T1,T2]");
  const std::vector<std::string> primes = {"x", "x + 1", "x - 1"};
  for (int i = 0; i < 100; ++i) {
    ForcingData data;
    data.ring = R;
    data.ideal = {random_prime_product(rng, R, primes, false),
                  random_prime_product(rng, R, primes, false)};
    // f inside the radical: a multiple of the squarefree kernel of gcd(I)
    Polynomial g = poly_gcd(data.ideal[0], data.ideal[1]);
    Polynomial kernel = Polynomial::constant(R, Coeff(1));
    for (const auto& part : squarefree(g).factors)
      if (!part.factor.is_constant()) kernel = kernel * part.factor;
    data.f = kernel * random_prime_product(rng, R, primes, false);

    auto in_radical = radical_member(data.f, data.ideal);
    expect(in_radical.answer, "constructed f must lie in rad I", detail);
    if (in_radical.answer)
      verify_or_fail(in_radical.certificate, data.ideal, data.f, detail);

    bool connected = is_connected(data).connected;
    auto member = closure_member(data.f, data.ideal, ClosureKind::ideal);
    auto integral = closure_member(data.f, data.ideal, ClosureKind::integral);
    bool dvr_all = true;
    for (const auto& p : primes)
      dvr_all = dvr_all && dvr_check(data, pp(p, R)).answer;
    expect(connected == member.answer, "connected iff f in I", detail);
    expect(connected == integral.answer,
           "connected iff f in the integral closure", detail);
    expect(connected == dvr_all, "connected iff every valuation check passes",
           detail);
    if (member.answer && member.membership)
      verify_or_fail(*member.membership, data.ideal, data.f, detail);
  }
  if (detail.empty()) detail = "100 instances, four-way equivalence";
  return checks_failed == 0;
}

bool certificate_verification(std::string& detail) {
  std::mt19937_64 rng(505);
  auto R = ring_of("Q[x,y]");
  for (int i = 0; i < 40; ++i) {
    auto g1 = testutil::random_nonzero_poly(rng, R, 2, 3, 4);
    auto g2 = testutil::random_nonzero_poly(rng, R, 2, 3, 4);
    std::vector<Polynomial> gens = {g1, g2};
    auto member = g1 * testutil::random_poly(rng, R, 1, 2, 3) +
                  g2 * testutil::random_poly(rng, R, 1, 2, 3);
    auto verdict = ideal_member(member, gens);
    expect(verdict.answer, "constructed membership holds", detail);
    if (verdict.answer)
      verify_or_fail(verdict.certificate, gens, member, detail);
  }
  // unit-ideal witnesses
  auto RU = ring_of("Q[x,y];[T]");
  for (const auto& gens :
       {pplist({"x*T + x + 1", "x"}, RU), pplist({"1"}, RU),
        pplist({"x*T - 1", "x"}, RU)}) {
    auto unit = is_unit_ideal(gens);
    expect(unit.answer, "unit ideal recognized", detail);
    if (unit.answer)
      verify_or_fail(unit.certificate, gens,
                     Polynomial::constant(RU, Coeff(1)), detail);
  }
  // radical witnesses with known exponents
  auto RQ = ring_of("Q[x]");
  for (unsigned e = 2; e <= 5; ++e) {
    auto gens = pplist({"x^" + std::to_string(e)}, RQ);
    auto rad = radical_member(pp("x", RQ), gens);
    expect(rad.answer && rad.exponent == e,
           "radical exponent matches the power", detail);
    if (rad.answer)
      verify_or_fail(rad.certificate, gens, pp("x", RQ), detail);
  }
  // polyhedron multipliers on random monomial instances
  std::uniform_int_distribution<std::uint32_t> entry(0, 4);
  for (int i = 0; i < 60; ++i) {
    std::vector<std::vector<std::uint32_t>> gens(
        2 + static_cast<std::size_t>(i % 3), std::vector<std::uint32_t>(2));
    for (auto& g : gens)
      for (auto& c : g) c = entry(rng);
    std::vector<std::uint32_t> v = {entry(rng), entry(rng)};
    auto cert = newton_contains(v, gens);
    if (!cert) continue;
    mpq_class total(0);
    bool ok = true;
    for (const auto& l : cert->lambdas) {
      ok = ok && l >= 0;
      total += l;
    }
    ok = ok && total == 1;
    for (std::size_t j = 0; j < v.size(); ++j) {
      mpq_class used(0);
      for (std::size_t g = 0; g < gens.size(); ++g)
        used += cert->lambdas[g] * static_cast<long>(gens[g][j]);
      ok = ok && used + cert->slack[j] == static_cast<long>(v[j]) &&
           cert->slack[j] >= 0;
    }
    expect(ok, "polyhedron multipliers satisfy the constraints", detail);
    ++certificates_verified;
  }
  if (detail.empty())
    detail =
        std::to_string(certificates_verified) + " certificates, 0 failures";
  return checks_failed == 0;
}

bool edge_oracle(std::string& detail) {
  std::mt19937_64 rng(606);
  auto R = ring_of("Fp(5)[x,y]");
  auto random_irreducible = [&](unsigned degree_bound) {
    while (true) {
      auto f = testutil::random_poly(rng, R, degree_bound, 4, 4);
      if (f.is_zero() || f.is_constant()) continue;
      if (is_irreducible(f) == Irreducibility::yes) return f.normalized();
    }
  };
  auto check_pair = [&](const Polynomial& q1, const Polynomial& q2) {
    unsigned bound =
        q1.total_degree().value_or(1) * q2.total_degree().value_or(1);
    bool comaximal = is_unit_ideal(std::vector<Polynomial>{q1, q2}).answer;
    bool zero = testutil::common_zero_up_to(q1, q2, bound);
    expect(comaximal == !zero,
           "comaximality vs common-zero search disagree on " + q1.to_string() +
               " / " + q2.to_string(),
           detail);
    return comaximal;
  };

  // pinned pairs: parallel lines are disjoint; x^2 + 2 meets y - x only over
  // F_25, exercising the extension sweep
  bool saw_disjoint = check_pair(pp("x + y", R), pp("x + y + 1", R));
  expect(saw_disjoint, "parallel lines must be comaximal", detail);
  bool deep = check_pair(pp("x^2 + 2", R), pp("y - x", R));
  expect(!deep, "x^2 + 2 meets y - x over F_25", detail);

  std::uniform_int_distribution<unsigned> degree_dist(1, 3);
  int pairs = 2, disjoint = 0, meeting = 0;
  while (pairs < 100) {
    auto q1 = random_irreducible(degree_dist(rng));
    auto q2 = random_irreducible(degree_dist(rng));
    if (q1 == q2) continue;
    if (check_pair(q1, q2))
      ++disjoint;
    else
      ++meeting;
    ++pairs;
  }
  expect(disjoint > 0 && meeting > 0, "both outcomes must occur", detail);
  if (detail.empty())
    detail = "100 factor pairs (" + std::to_string(disjoint) + " disjoint, " +
             std::to_string(meeting) + " meeting), fields up to 5^9";
  return checks_failed == 0;
}

bool factorization_oracle(std::string& detail) {
  auto F3 = ring_of("Fp(3)[x]");
  int inputs = 0;
  for (unsigned degree = 1; degree <= 4; ++degree) {
    std::vector<unsigned> coeffs(degree, 0);
    while (true) {
      std::vector<Term> terms;
      Monomial lead(F3->arity());
      lead[0] = degree;
      terms.push_back(Term{lead, Coeff(1)});
      for (unsigned i = 0; i < degree; ++i) {
        if (coeffs[i] == 0) continue;
        Monomial m(F3->arity());
        m[0] = i;
        terms.push_back(Term{m, Coeff(coeffs[i])});
      }
      Polynomial f = Polynomial::from_terms(F3, terms);
      auto mine = factor_prime(f);
      auto brute = testutil::brute_force_fp_factor(f);
      bool same = mine.factors.size() == brute.factors.size();
      for (std::size_t k = 0; same && k < mine.factors.size(); ++k)
        same = mine.factors[k].factor == brute.factors[k].factor &&
               mine.factors[k].multiplicity == brute.factors[k].multiplicity;
      expect(same, "factorization differs on " + f.to_string(), detail);
      expect(mine.reassemble(F3) == f,
             "reassembly differs on " + f.to_string(), detail);
      ++inputs;
      std::size_t k = 0;
      while (k < degree && ++coeffs[k] == 3) coeffs[k++] = 0;
      if (k == degree) break;
    }
  }
  if (detail.empty())
    detail = std::to_string(inputs) + " monic polynomials over F_3";
  return checks_failed == 0;
}

// ---------------------------------------------------------------------------
// 5. determinism
// ---------------------------------------------------------------------------

std::string strip_timing(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"timing_ms\"") != std::string::npos) continue;
    out << line << "\n";
  }
  return out.str();
}

std::string run_cli(const std::string& command, int index) {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() /
                 ("forcing_acceptance_" + std::to_string(index) + ".json");
  std::string full = command + " > " + tmp.string() + " 2>/dev/null";
  (void)std::system(full.c_str());
  std::ifstream in(tmp);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  fs::remove(tmp);
  return buffer.str();
}

bool determinism(std::string& detail) {
  namespace fs = std::filesystem;
  std::string corpus_dir = env_or("FORCING_CORPUS_DIR", "corpus");
  std::string cli = env_or("FORCING_CLI", "");
  if (cli.empty()) {
    detail = "FORCING_CLI is not set (run through ctest)";
    ++checks_failed;
    return false;
  }

  std::vector<fs::path> jobs;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.path().extension() == ".job") jobs.push_back(entry.path());
  std::sort(jobs.begin(), jobs.end());
  expect(!jobs.empty(), "corpus directory has jobs", detail);

  int compared = 0;
  for (const auto& job_path : jobs) {
    std::string text;
    {
      std::ifstream in(job_path);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      text = buffer.str();
    }
    std::string subcommand = "analyze";
    if (text.find("mode: closure") != std::string::npos)
      subcommand = "member";
    else if (text.find("mode: fiber") != std::string::npos)
      subcommand = "fiber";
    std::string command = cli + " " + subcommand + " --job " +
                          job_path.string() + " --json --certificate";
    std::string first = strip_timing(run_cli(command, 1));
    std::string second = strip_timing(run_cli(command, 2));
    expect(!first.empty(), "CLI produced output for " + job_path.string(),
           detail);
    expect(first == second,
           "byte-identical JSON for " + job_path.filename().string(), detail);

    JobSpec job = parse_job(text);
    std::string a = strip_timing(report_to_json(run_job(job), true));
    std::string b = strip_timing(report_to_json(run_job(job), true));
    expect(a == b, "library JSON deterministic for " + job_path.string(),
           detail);
    ++compared;
  }
  if (detail.empty())
    detail = std::to_string(compared) + " jobs, CLI and library runs";
  return checks_failed == 0;
}

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 golden-corpus", golden_corpus},
      {"2 closure-corpus", closure_corpus},
      {"3 fiber-checks", fiber_checks},
      {"4a homogeneous-implies-connected", homogeneous_law},
      {"4b section-law", section_law},
      {"4c pid-triple-agreement", pid_triple},
      {"4d dedekind-equivalence", dedekind_equivalence},
      {"4e certificate-verification", certificate_verification},
      {"4f edge-oracle", edge_oracle},
      {"4g factorization-oracle", factorization_oracle},
      {"5 determinism", determinism},
  };

  bool all_ok = true;
  for (auto& criterion : criteria) {
    checks_failed = 0;
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.name;
    if (!detail.empty()) std::cout << " - " << detail;
    std::cout << "\n";
    all_ok = all_ok && ok;
  }
  std::cout << (all_ok ? "acceptance: all criteria passed"
                       : "acceptance: FAILURES above")
            << "\n";
  return all_ok ? 0 : 1;
}
