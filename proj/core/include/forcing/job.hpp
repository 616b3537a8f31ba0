#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forcing/polynomial.hpp"
#include "forcing/ring.hpp"

namespace forcing {

enum class JobMode { global, local, fiber, closure };
enum class ClosureKind { ideal, radical, integral };

std::string to_string(JobMode mode);
std::string to_string(ClosureKind kind);

/// A fiber-query point: either the generic point or a full coordinate
/// assignment for the base variables.
struct PointSpec {
  bool generic = false;
  std::vector<std::pair<std::size_t, Coeff>> coords;  // variable index, value
  std::string text;                                   // echo form
};

/// Fully validated job description (parser module output).
struct JobSpec {
  RingPtr ring;
  std::vector<Polynomial> ideal;
  Polynomial f;
  JobMode mode = JobMode::global;
  std::vector<Polynomial> local_at;
  std::optional<ClosureKind> closure;
  std::optional<std::vector<std::vector<Polynomial>>> matrix;
  std::vector<Polynomial> rhs;  // matrix-mode vector (f_1..f_m)
  std::optional<PointSpec> point;
  std::optional<std::pair<long, long>> point_range;
  std::vector<Polynomial> trusted_factors;  // optional factorization of d
};

}  // namespace forcing
