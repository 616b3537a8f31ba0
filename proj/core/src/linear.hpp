#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace forcing::detail {

// one inequality sum(a[i] * x[i]) <= b
struct LinRow {
  std::vector<mpq_class> a;
  mpq_class b;
};

// Exact Fourier-Motzkin elimination with back-substitution; returns a
// feasible point (midpoints of the successive bound intervals) or nullopt.
// Requires the feasible region to be bounded in every variable.
std::optional<std::vector<mpq_class>> fourier_motzkin(
    std::vector<LinRow> rows, std::size_t nvars);

// Exact phase-1 simplex (Bland's rule) for A x = b, x >= 0, b >= 0.
// Returns a feasible x or nullopt.
std::optional<std::vector<mpq_class>> simplex_phase1(
    const std::vector<std::vector<mpq_class>>& A,
    const std::vector<mpq_class>& b);

}  // namespace forcing::detail
