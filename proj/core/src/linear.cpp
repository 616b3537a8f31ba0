#include "linear.hpp"

#include <algorithm>

#include "forcing/errors.hpp"

namespace forcing::detail {

std::optional<std::vector<mpq_class>> fourier_motzkin(
    std::vector<LinRow> rows, std::size_t nvars) {
  // levels[t] holds the system over variables x_0..x_t
  std::vector<std::vector<LinRow>> levels(nvars);
  for (std::size_t t = nvars; t-- > 0;) {
    levels[t] = rows;
    // eliminate x_t
    std::vector<LinRow> next;
    std::vector<const LinRow*> pos, neg;
    for (const auto& row : rows) {
      if (row.a[t] > 0)
        pos.push_back(&row);
      else if (row.a[t] < 0)
        neg.push_back(&row);
      else {
        LinRow kept = row;
        kept.a.resize(t);
        next.push_back(std::move(kept));
      }
    }
    for (const auto* p : pos) {
      for (const auto* n : neg) {
        // p: a_t x_t <= b_p - rest_p ; n: x_t >= (rest_n - b_n)/(-a_t)
        LinRow combined;
        combined.a.resize(t);
        mpq_class scale_p = -n->a[t];  // positive
        mpq_class scale_n = p->a[t];   // positive
        for (std::size_t i = 0; i < t; ++i)
          combined.a[i] = scale_p * p->a[i] + scale_n * n->a[i];
        combined.b = scale_p * p->b + scale_n * n->b;
        next.push_back(std::move(combined));
      }
    }
    rows = std::move(next);
  }
  // constant rows: 0 <= b
  for (const auto& row : rows)
    if (row.b < 0) return std::nullopt;

  // back-substitute, picking the midpoint of each bound interval
  std::vector<mpq_class> x(nvars, mpq_class(0));
  for (std::size_t t = 0; t < nvars; ++t) {
    bool has_lo = false, has_hi = false;
    mpq_class lo(0), hi(0);
    for (const auto& row : levels[t]) {
      if (row.a[t] == 0) continue;
      mpq_class rest = row.b;
      for (std::size_t i = 0; i < t; ++i) rest -= row.a[i] * x[i];
      mpq_class bound = rest / row.a[t];
      if (row.a[t] > 0) {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      } else {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      }
    }
    if (!has_lo && !has_hi) {
      x[t] = 0;
    } else if (!has_lo) {
      x[t] = hi;
    } else if (!has_hi) {
      x[t] = lo;
    } else {
      if (lo > hi) return std::nullopt;  // can only happen on empty systems
      x[t] = (lo + hi) / 2;
    }
  }
  return x;
}

std::optional<std::vector<mpq_class>> simplex_phase1(
    const std::vector<std::vector<mpq_class>>& A,
    const std::vector<mpq_class>& b) {
  const std::size_t m = A.size();
  if (m == 0) return std::vector<mpq_class>{};
  const std::size_t n = A[0].size();
  const std::size_t total = n + m;  // structural + artificial

  // tableau rows: [A | I | b]; objective minimizes the artificial sum
  std::vector<std::vector<mpq_class>> t(m, std::vector<mpq_class>(total + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0) fail(Errc::invalid_argument, "negative right-hand side");
    for (std::size_t c = 0; c < n; ++c) t[r][c] = A[r][c];
    t[r][n + r] = 1;
    t[r][total] = b[r];
    basis[r] = n + r;
  }
  // reduced costs: cost 1 on artificials, 0 on structurals, minus the
  // contribution of the (artificial) starting basis
  std::vector<mpq_class> obj(total + 1, mpq_class(0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c <= total; ++c) obj[c] -= t[r][c];
  for (std::size_t r = 0; r < m; ++r) obj[n + r] += 1;

  while (true) {
    // Bland: smallest index with a negative reduced cost
    std::size_t enter = total;
    for (std::size_t c = 0; c < total; ++c) {
      if (obj[c] < 0) {
        enter = c;
        break;
      }
    }
    if (enter == total) break;
    // ratio test, Bland tie-break on the leaving basis index
    std::size_t leave = m;
    mpq_class best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      mpq_class ratio = t[r][total] / t[r][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == m) return std::nullopt;  // unbounded phase-1 cannot happen
    // pivot
    mpq_class inv = 1 / t[leave][enter];
    for (auto& v : t[leave]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      mpq_class factor = t[r][enter];
      for (std::size_t c = 0; c <= total; ++c)
        t[r][c] -= factor * t[leave][c];
    }
    if (obj[enter] != 0) {
      mpq_class factor = obj[enter];
      for (std::size_t c = 0; c <= total; ++c) obj[c] -= factor * t[leave][c];
    }
    basis[leave] = enter;
  }

  if (obj[total] != 0) return std::nullopt;  // artificials not driven to zero
  std::vector<mpq_class> x(n, mpq_class(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) x[basis[r]] = t[r][total];
  return x;
}

}  // namespace forcing::detail
