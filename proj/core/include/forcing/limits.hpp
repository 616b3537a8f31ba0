#pragma once

namespace forcing {

/// Resource guards for the computations that can blow up on pathological
/// input. All of them abort with Errc::resource_limit (or
/// Errc::unsupported_range for the factorization bounds) instead of running
/// away. Overridable per call, by CLI flags, and by the FORCING_MAX_*
/// environment variables.
struct Limits {
  unsigned max_degree = 60;             // total-degree cap inside basis computations
  unsigned long max_steps = 1000000;    // reduction-step cap per basis computation
  unsigned max_factor_degree = 20;      // univariate factorization cap over Q
  unsigned max_multivar_degree = 8;     // total-degree cap for multivariate factorization

  static Limits from_env();
};

}  // namespace forcing
