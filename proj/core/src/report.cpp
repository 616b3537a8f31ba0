#include "forcing/report.hpp"

#include <chrono>

#include <json.hpp>

#include "forcing/errors.hpp"
#include "forcing/version.hpp"

namespace forcing {
namespace {

using json = nlohmann::ordered_json;

json poly_list(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

json job_echo(const JobSpec& job) {
  json j;
  j["ring"] = job.ring->to_string();
  j["mode"] = to_string(job.mode);
  if (!job.ideal.empty()) j["ideal"] = poly_list(job.ideal);
  if (job.mode != JobMode::fiber) j["f"] = job.f.to_string();
  if (!job.local_at.empty()) j["local_at"] = poly_list(job.local_at);
  if (job.closure) j["closure"] = to_string(*job.closure);
  if (job.matrix) {
    json rows = json::array();
    for (const auto& row : *job.matrix) rows.push_back(poly_list(row));
    j["matrix"] = rows;
    j["vector"] = poly_list(job.rhs);
  }
  if (job.point) j["point"] = job.point->generic ? "generic" : job.point->text;
  if (job.point_range)
    j["point_range"] = std::to_string(job.point_range->first) + ".." +
                       std::to_string(job.point_range->second);
  return j;
}

json decomposition_json(const Decomposition& dec) {
  json j;
  j["d"] = dec.d.to_string();
  j["h_prime"] = dec.h_prime ? json(dec.h_prime->to_string()) : json(nullptr);
  json vertical = json::array();
  for (const auto& [prime, mult] : dec.vertical) {
    json entry;
    entry["prime"] = prime.to_string();
    entry["multiplicity"] = mult;
    vertical.push_back(std::move(entry));
  }
  j["vertical"] = std::move(vertical);
  json edges = json::array();
  for (const auto& [a, b] : dec.edges) edges.push_back(json::array({a, b}));
  j["edges"] = std::move(edges);
  j["h_edges"] = dec.h_edges;
  j["groups"] = dec.groups;
  j["verdict"] = dec.connected ? "connected" : "disconnected";
  j["criterion"] = dec.criterion;
  return j;
}

json certificate_json(const Certificate& cert) {
  json j;
  switch (cert.kind) {
    case Certificate::Kind::membership:
      j["kind"] = "membership";
      break;
    case Certificate::Kind::unit:
      j["kind"] = "unit";
      break;
    case Certificate::Kind::radical:
      j["kind"] = "radical";
      j["exponent"] = cert.exponent;
      break;
  }
  j["cofactors"] = poly_list(cert.cofactors);
  return j;
}

json rational_list(const std::vector<Coeff>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.get_str());
  return out;
}

json closure_certificate_json(const ClosureVerdict& verdict) {
  if (verdict.membership) return certificate_json(*verdict.membership);
  if (!verdict.polyhedron.empty()) {
    json entries = json::array();
    for (const auto& witness : verdict.polyhedron) {
      json entry;
      entry["monomial"] = witness.monomial.to_string();
      entry["lambdas"] = rational_list(witness.certificate.lambdas);
      entry["slack"] = rational_list(witness.certificate.slack);
      entries.push_back(std::move(entry));
    }
    json j;
    j["kind"] = "polyhedron";
    j["monomials"] = std::move(entries);
    return j;
  }
  return json(nullptr);
}

json fiber_json(const FiberReport& fiber) {
  json j;
  j["point"] = fiber.point;
  j["status"] = fiber.empty ? "empty" : "affine";
  j["dimension"] = fiber.empty ? json(nullptr) : json(fiber.dimension);
  j["rank"] = fiber.rank;
  j["n"] = fiber.n;
  return j;
}

json report_json(const Report& report, bool include_certificates) {
  json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["job"] = job_echo(report.job);
  j["mode"] = to_string(report.job.mode);

  std::vector<std::string> warnings;
  if (report.connect) {
    const auto& c = *report.connect;
    j["verdict"] = {{"connected", c.connected}, {"criterion", c.criterion}};
    j["decomposition"] = c.decomposition
                             ? decomposition_json(*c.decomposition)
                             : json(nullptr);
    if (include_certificates) {
      json cert;
      if (!c.eliminated.empty() || c.local_witness) {
        cert["eliminated"] = poly_list(c.eliminated);
        cert["witness"] =
            c.local_witness ? json(c.local_witness->to_string()) : json(nullptr);
      }
      j["certificate"] = cert.is_null() ? json(nullptr) : cert;
    }
    warnings = c.warnings;
  } else if (report.closure) {
    const auto& c = *report.closure;
    json verdict;
    verdict["kind"] = to_string(c.kind);
    verdict["answer"] = c.answer;
    if (c.kind == ClosureKind::radical && c.answer)
      verdict["exponent"] = c.radical_exponent;
    verdict["certificate"] =
        include_certificates ? closure_certificate_json(c) : json(nullptr);
    verdict["universally_connected"] =
        c.universally_connected ? json(*c.universally_connected) : json(nullptr);
    j["verdict"] = std::move(verdict);
  } else {
    json fibers = json::array();
    for (const auto& f : report.fibers) fibers.push_back(fiber_json(f));
    j["fibers"] = std::move(fibers);
  }
  j["warnings"] = warnings;
  j["timing_ms"] = report.timing_ms;
  return j;
}

std::vector<PointSpec> sweep_points(const JobSpec& job) {
  std::vector<PointSpec> points;
  if (job.point) {
    points.push_back(*job.point);
    return points;
  }
  const auto [lo, hi] = *job.point_range;
  const std::size_t n = job.ring->base_count();
  std::vector<long> cursor(n, lo);
  while (true) {
    PointSpec point;
    std::string text;
    for (std::size_t v = 0; v < n; ++v) {
      point.coords.emplace_back(v, Coeff(cursor[v]));
      if (!text.empty()) text += ", ";
      text += job.ring->variable(v) + "=" + std::to_string(cursor[v]);
    }
    point.text = text;
    points.push_back(std::move(point));
    std::size_t v = 0;
    while (v < n && ++cursor[v] > hi) cursor[v++] = lo;
    if (v == n) break;
  }
  return points;
}

}  // namespace

Report run_job(const JobSpec& job, const Limits& limits) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.job = job;
  ForcingData data = ForcingData::from_job(job);
  switch (job.mode) {
    case JobMode::global:
      report.connect = is_connected(data, limits);
      break;
    case JobMode::local:
      report.connect = is_connected_local(data, job.local_at, limits);
      break;
    case JobMode::closure:
      report.closure = closure_member(job.f, job.ideal, *job.closure, limits);
      break;
    case JobMode::fiber: {
      for (const auto& point : sweep_points(job))
        report.fibers.push_back(fiber_at(data, point, limits));
      break;
    }
  }
  auto end = std::chrono::steady_clock::now();
  report.timing_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start)
          .count();
  return report;
}

std::string report_to_json(const Report& report, bool include_certificates) {
  return report_json(report, include_certificates).dump(2);
}

std::string report_to_text(const Report& report, bool include_certificates) {
  std::string out;
  out += std::string(kToolName) + " " + kToolVersion + "\n";
  out += "ring: " + report.job.ring->to_string() + "\n";
  out += "mode: " + to_string(report.job.mode) + "\n";
  if (report.connect) {
    const auto& c = *report.connect;
    out += std::string("verdict: ") +
           (c.connected ? "connected" : "disconnected") + " (criterion: " +
           c.criterion + ")\n";
    if (c.decomposition) {
      const auto& dec = *c.decomposition;
      out += "d: " + dec.d.to_string() + "\n";
      if (dec.h_prime) out += "h': " + dec.h_prime->to_string() + "\n";
      for (std::size_t j = 0; j < dec.vertical.size(); ++j) {
        out += "vertical[" + std::to_string(j) +
               "]: " + dec.vertical[j].first.to_string() +
               " (multiplicity " + std::to_string(dec.vertical[j].second) +
               (std::find(dec.h_edges.begin(), dec.h_edges.end(), j) !=
                        dec.h_edges.end()
                    ? ", meets horizontal)"
                    : ")") +
               "\n";
      }
    }
    if (include_certificates && c.local_witness)
      out += "witness outside the prime: " + c.local_witness->to_string() +
             "\n";
    for (const auto& w : c.warnings) out += "warning: " + w + "\n";
  } else if (report.closure) {
    const auto& c = *report.closure;
    out += "closure: " + to_string(c.kind) + "\n";
    out += std::string("verdict: ") + (c.answer ? "member" : "non-member") +
           "\n";
    if (c.kind == ClosureKind::radical && c.answer)
      out += "exponent: " + std::to_string(c.radical_exponent) + "\n";
    if (c.universally_connected)
      out += std::string("universally connected: ") +
             (*c.universally_connected ? "yes" : "no") + "\n";
    if (include_certificates && c.membership) {
      out += "cofactors:\n";
      for (const auto& cof : c.membership->cofactors)
        out += "  " + cof.to_string() + "\n";
    }
  } else {
    for (const auto& f : report.fibers) {
      out += "fiber at " + f.point + ": ";
      out += f.empty ? "empty"
                     : "affine of dimension " + std::to_string(f.dimension);
      out += " (rank " + std::to_string(f.rank) + ", n " +
             std::to_string(f.n) + ")\n";
    }
  }
  out += "time: " + std::to_string(report.timing_ms) + " ms\n";
  return out;
}

int report_exit_code(const Report& report) {
  if (report.connect) return report.connect->connected ? 0 : 3;
  if (report.closure) return report.closure->answer ? 0 : 3;
  return 0;
}

int error_exit_code(const Error& error) {
  switch (error.code()) {
    case Errc::unsupported_base:
    case Errc::unsupported_closure:
    case Errc::unsupported_range:
      return 4;
    default:
      return 1;
  }
}

std::string factorization_to_json(const Factorization& fz) {
  json j;
  j["unit"] = fz.unit.get_str();
  json factors = json::array();
  for (const auto& part : fz.factors) {
    json entry;
    entry["factor"] = part.factor.to_string();
    entry["multiplicity"] = part.multiplicity;
    entry["verified"] = part.verified;
    factors.push_back(std::move(entry));
  }
  j["factors"] = std::move(factors);
  return j.dump(2);
}

}  // namespace forcing
