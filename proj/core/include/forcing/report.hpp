#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forcing/closure.hpp"
#include "forcing/components.hpp"
#include "forcing/errors.hpp"
#include "forcing/factor.hpp"
#include "forcing/job.hpp"
#include "forcing/limits.hpp"

namespace forcing {

/// One job's outcome: exactly one of the payloads is populated, matching the
/// job mode. JSON output is schema-stable and, apart from timing_ms,
/// deterministic for a fixed input.
struct Report {
  JobSpec job;
  std::optional<ConnectednessVerdict> connect;
  std::optional<ClosureVerdict> closure;
  std::vector<FiberReport> fibers;
  long long timing_ms = 0;
};

Report run_job(const JobSpec& job, const Limits& limits = {});

std::string report_to_json(const Report& report, bool include_certificates);
std::string report_to_text(const Report& report, bool include_certificates);

/// 0 connected/member, 3 disconnected/non-member, otherwise 0 (fiber).
int report_exit_code(const Report& report);

/// Exit status for an error: 4 for unsupported inputs, 1 otherwise.
int error_exit_code(const Error& error);

/// unit + array of {factor, multiplicity, verified}.
std::string factorization_to_json(const Factorization& fz);

}  // namespace forcing
