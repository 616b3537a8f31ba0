#include "forcing/components.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "forcing/errors.hpp"
#include "forcing/factor.hpp"
#include "forcing/groebner.hpp"

namespace forcing {
namespace {

void require_supported_base(const Ring& ring) {
  switch (ring.domain()) {
    case Domain::rationals:
    case Domain::prime_field:
    case Domain::integers:
      return;
  }
  fail(Errc::unsupported_base, "unsupported base ring");
}

bool is_pid_base(const Ring& ring) {
  if (ring.domain() == Domain::integers) return true;
  return ring.base_count() == 1;
}

std::vector<Polynomial> to_base_ring(std::span<const Polynomial> polys,
                                     const RingPtr& base) {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.to_ring(base));
  return out;
}

// membership f in (f_1, ..., f_n) inside the base ring; over Z this is
// divisibility by the gcd, over fields a basis computation
bool base_ideal_member(const Polynomial& f, std::span<const Polynomial> gens,
                       const Limits& limits) {
  const Ring& ring = f.ring();
  std::vector<Polynomial> nonzero;
  for (const auto& g : gens)
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) return f.is_zero();
  if (ring.domain() == Domain::integers) {
    Polynomial g = Polynomial::zero(f.ring_ptr());
    for (const auto& gi : nonzero) g = g.is_zero() ? gi : poly_gcd(g, gi);
    return f.divided_exactly(g).has_value();
  }
  RingPtr base = f.ring_ptr()->base_only();
  return ideal_member(f.to_ring(base), to_base_ring(nonzero, base), limits)
      .answer;
}

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// comaximality edges among the vertical primes; over a PID base distinct
// primes are automatically comaximal
std::vector<std::pair<std::size_t, std::size_t>> comaximality_edges(
    const std::vector<std::pair<Polynomial, unsigned>>& vertical,
    const Ring& ring, const Limits& limits) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (vertical.size() < 2) return edges;
  const bool pid = is_pid_base(ring);
  RingPtr base;
  if (!pid) base = vertical.front().first.ring_ptr()->base_only();
  for (std::size_t i = 0; i < vertical.size(); ++i) {
    for (std::size_t j = i + 1; j < vertical.size(); ++j) {
      bool comaximal;
      if (pid) {
        comaximal = true;  // distinct primes in a PID
      } else {
        std::vector<Polynomial> pair = {vertical[i].first.to_ring(base),
                                        vertical[j].first.to_ring(base)};
        comaximal = is_unit_ideal(pair, limits).answer;
      }
      if (!comaximal) edges.emplace_back(i, j);
    }
  }
  return edges;
}

std::vector<std::vector<std::size_t>> connected_groups(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  DisjointSet dsu(n);
  for (const auto& [i, j] : edges) dsu.unite(i, j);
  std::map<std::size_t, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < n; ++i) grouped[dsu.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [root, members] : grouped) {
    std::sort(members.begin(), members.end());
    groups.push_back(std::move(members));
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

bool groups_all_meet(const std::vector<std::vector<std::size_t>>& groups,
                     const std::vector<std::size_t>& h_edges) {
  for (const auto& group : groups) {
    bool meets = false;
    for (std::size_t j : group)
      meets = meets ||
              std::find(h_edges.begin(), h_edges.end(), j) != h_edges.end();
    if (!meets) return false;
  }
  return true;
}

// vertical-only decomposition for the I = 0 case: components of V(f)
Decomposition i_zero_decomposition(const ForcingData& data,
                                   const Limits& limits) {
  Decomposition dec;
  dec.d = data.f;
  dec.criterion = "i_zero";
  if (data.f.is_zero()) {
    dec.connected = true;  // the whole polynomial ring
    return dec;
  }
  if (data.f.is_constant()) {
    // V(unit) is empty, and the empty space is not connected
    if (data.ring->coeff_is_unit(*data.f.constant_value())) {
      dec.connected = false;
      return dec;
    }
  }
  Factorization fz = factor_prime(data.f, limits, data.trusted_factors);
  for (const auto& part : fz.factors)
    dec.vertical.emplace_back(part.factor, part.multiplicity);
  dec.edges = comaximality_edges(dec.vertical, *data.ring, limits);
  dec.groups = connected_groups(dec.vertical.size(), dec.edges);
  dec.connected = dec.groups.size() == 1;
  return dec;
}

}  // namespace

ForcingData ForcingData::from_job(const JobSpec& job) {
  ForcingData data;
  data.ring = job.ring;
  data.ideal = job.ideal;
  data.f = job.f;
  data.matrix = job.matrix;
  data.rhs = job.rhs;
  data.trusted_factors = job.trusted_factors;
  return data;
}

Polynomial ForcingData::forcing_equation() const {
  Polynomial h = f;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    std::size_t t = ring->base_count() + i;
    if (t >= ring->arity())
      fail(Errc::validation, "more generators than forcing variables");
    h = h + ideal[i] * Polynomial::variable(ring, t);
  }
  return h;
}

bool ForcingData::ideal_is_zero() const {
  for (const auto& g : ideal)
    if (!g.is_zero()) return false;
  return true;
}

std::pair<Polynomial, Polynomial> split_equation(const ForcingData& data,
                                                 const Limits& limits) {
  (void)limits;
  require_supported_base(*data.ring);
  if (data.ideal_is_zero())
    fail(Errc::invalid_argument,
         "split_equation needs some nonzero ideal generator (I = 0 has only "
         "vertical components)");
  std::vector<Polynomial> all = data.ideal;
  all.push_back(data.f);
  ContentSplit split = content_and_primitive(all);
  Polynomial h_prime = split.primitive.back();  // f / d
  for (std::size_t i = 0; i < data.ideal.size(); ++i) {
    std::size_t t = data.ring->base_count() + i;
    h_prime =
        h_prime + split.primitive[i] * Polynomial::variable(data.ring, t);
  }
  return {split.content, h_prime};
}

std::optional<bool> h_edge_fast(std::span<const Polynomial> f_primes,
                                const Polynomial& q) {
  for (const auto& fp : f_primes) {
    if (fp.is_zero()) continue;
    if (!fp.divided_exactly(q).has_value()) return true;
  }
  return std::nullopt;
}

bool h_edge_full(const Polynomial& h_prime, const Polynomial& q,
                 const Limits& limits) {
  std::vector<Polynomial> pair = {h_prime, q.to_ring(h_prime.ring_ptr())};
  return !is_unit_ideal(pair, limits).answer;
}

Decomposition decompose(const ForcingData& data, const Limits& limits) {
  require_supported_base(*data.ring);
  if (data.ideal_is_zero()) return i_zero_decomposition(data, limits);

  auto [d, h_prime] = split_equation(data, limits);
  Decomposition dec;
  dec.d = d;
  dec.h_prime = h_prime;

  Factorization fz = factor_prime(d, limits, data.trusted_factors);
  for (const auto& part : fz.factors)
    dec.vertical.emplace_back(part.factor, part.multiplicity);

  dec.edges = comaximality_edges(dec.vertical, *data.ring, limits);

  // primitive coefficients f'_i for the Zusam coefficient test
  std::vector<Polynomial> f_primes;
  f_primes.reserve(data.ideal.size());
  for (const auto& fi : data.ideal) f_primes.push_back(fi.exact_div(d));

  bool used_full = false;
  for (std::size_t j = 0; j < dec.vertical.size(); ++j) {
    const Polynomial& q = dec.vertical[j].first;
    bool edge;
    if (auto fast = h_edge_fast(f_primes, q)) {
      edge = *fast;
    } else if (is_pid_base(*data.ring)) {
      // every f'_i vanishes mod q, and f' is a unit in the residue field
      edge = false;
    } else {
      edge = h_edge_full(h_prime, q, limits);
      used_full = true;
    }
    if (edge) dec.h_edges.push_back(j);
  }

  dec.groups = connected_groups(dec.vertical.size(), dec.edges);
  dec.connected = groups_all_meet(dec.groups, dec.h_edges);
  // the coefficient criterion only ever concludes "connected"
  dec.criterion = (!used_full && dec.connected) ? "zusam" : "theorem";
  return dec;
}

ConnectednessVerdict is_connected(const ForcingData& data,
                                  const Limits& limits) {
  require_supported_base(*data.ring);
  if (data.matrix)
    fail(Errc::unsupported_base,
         "connectedness of matrix (module) forcing data is not supported; "
         "only fiber analysis handles matrices");

  ConnectednessVerdict verdict;
  if (data.ideal_is_zero()) {
    Decomposition dec = i_zero_decomposition(data, limits);
    verdict.connected = dec.connected;
    verdict.criterion = "i_zero";
    if (data.f.is_constant() && !data.f.is_zero() &&
        data.ring->coeff_is_unit(*data.f.constant_value()))
      verdict.warnings.push_back("V(f) is empty: the zero ring is not connected");
    verdict.decomposition = std::move(dec);
    return verdict;
  }

  Decomposition dec = decompose(data, limits);
  if (data.f.is_zero()) {
    verdict.connected = true;
    verdict.criterion = "homogeneous";
  } else if (base_ideal_member(data.f, data.ideal, limits)) {
    verdict.connected = true;
    verdict.criterion = "section";
  } else if (dec.vertical.empty()) {
    verdict.connected = true;
    verdict.criterion = "domain";  // d is a unit, h = h' is prime
  } else {
    verdict.connected = dec.connected;
    verdict.criterion = dec.criterion;
  }
  verdict.decomposition = std::move(dec);
  return verdict;
}

ConnectednessVerdict is_connected_pid(const ForcingData& data,
                                      const Limits& limits) {
  require_supported_base(*data.ring);
  if (!is_pid_base(*data.ring))
    fail(Errc::unsupported_base,
         "the gcd criterion needs a PID base (Z or one variable over a field)");
  if (data.ideal_is_zero())
    fail(Errc::invalid_argument, "the gcd criterion needs I != 0");

  auto [d, h_prime] = split_equation(data, limits);
  (void)h_prime;
  Polynomial g = d;
  for (const auto& fi : data.ideal) {
    if (fi.is_zero()) continue;
    g = poly_gcd(g, fi.exact_div(d));
    if (g.is_one()) break;
  }
  ConnectednessVerdict verdict;
  verdict.connected = g.is_one();
  verdict.criterion = "pid_gcd";
  return verdict;
}

std::vector<std::pair<Polynomial, bool>> local_profile(const ForcingData& data,
                                                       const Limits& limits) {
  require_supported_base(*data.ring);
  if (!is_pid_base(*data.ring))
    fail(Errc::unsupported_base, "local profiles need a one-dimensional base");
  if (data.ideal_is_zero())
    fail(Errc::invalid_argument, "local profiles need I != 0");
  Decomposition dec = decompose(data, limits);
  std::vector<std::pair<Polynomial, bool>> profile;
  profile.reserve(dec.vertical.size());
  for (std::size_t j = 0; j < dec.vertical.size(); ++j) {
    bool locally_connected =
        std::find(dec.h_edges.begin(), dec.h_edges.end(), j) !=
        dec.h_edges.end();
    profile.emplace_back(dec.vertical[j].first, locally_connected);
  }
  return profile;
}

namespace {

// affine-linear generators describe a prime exactly when the linear system
// is consistent (an affine subspace is irreducible)
enum class PrimalityCheck { prime, inconsistent, unverified };

PrimalityCheck check_linear_prime(std::span<const Polynomial> gens,
                                  const RingPtr& base) {
  for (const auto& g : gens) {
    auto deg = g.total_degree();
    if (!deg || *deg > 1) return PrimalityCheck::unverified;
    if (*deg == 0) return PrimalityCheck::inconsistent;  // nonzero constant
  }
  const std::size_t n = base->base_count();
  std::vector<std::vector<Coeff>> rows;
  for (const auto& g : gens) {
    std::vector<Coeff> row(n + 1, Coeff(0));
    for (const auto& t : g.terms()) {
      if (t.mono.is_one()) {
        row[n] = t.coeff;
        continue;
      }
      for (std::size_t v = 0; v < n; ++v)
        if (t.mono[v] == 1) row[v] = t.coeff;
    }
    rows.push_back(std::move(row));
  }
  // eliminate; inconsistent iff a row reduces to 0 = nonzero
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Coeff factor = base->coeff_div(rows[r][c], rows[rank][c]);
      for (std::size_t k = c; k <= n; ++k)
        rows[r][k] = base->sub(rows[r][k], base->mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  for (const auto& row : rows) {
    bool zero_lhs = true;
    for (std::size_t c = 0; c < n; ++c) zero_lhs = zero_lhs && row[c] == 0;
    if (zero_lhs && row[n] != 0) return PrimalityCheck::inconsistent;
  }
  return PrimalityCheck::prime;
}

}  // namespace

ConnectednessVerdict is_connected_local(const ForcingData& data,
                                        std::span<const Polynomial> prime_gens,
                                        const Limits& limits) {
  require_supported_base(*data.ring);
  if (data.ring->domain() == Domain::integers || data.ring->base_count() == 0)
    fail(Errc::unsupported_base,
         "local mode needs a polynomial base ring over a field");
  if (prime_gens.empty())
    fail(Errc::invalid_argument, "local mode needs prime generators");

  ConnectednessVerdict verdict;
  verdict.criterion = "local";

  RingPtr base = data.ring->base_only();
  std::vector<Polynomial> m_gens = to_base_ring(prime_gens, base);
  switch (check_linear_prime(m_gens, base)) {
    case PrimalityCheck::prime:
      break;
    case PrimalityCheck::inconsistent:
      fail(Errc::validation, "local_at generates the unit ideal, not a prime");
    case PrimalityCheck::unverified:
      verdict.warnings.push_back(
          "local_at has nonlinear generators; primality is trusted, not "
          "verified");
      break;
  }

  GroebnerBasis m_basis = buchberger(m_gens, limits);
  auto in_m = [&](const Polynomial& g) {
    return m_basis.reduce(g.to_ring(base), limits).remainder.is_zero();
  };

  // hypothesis I, f in m; outside it the localized algebra is a domain (or
  // empty when I = 0), which the paper's statement does not cover
  bool ideal_in_m = true;
  for (const auto& fi : data.ideal) ideal_in_m = ideal_in_m && in_m(fi);
  bool f_in_m = in_m(data.f);

  if (data.ideal_is_zero()) {
    if (!f_in_m) {
      verdict.connected = false;
      verdict.criterion = "i_zero";
      verdict.warnings.push_back(
          "f is a unit at the prime: the localized spectrum is empty");
      return verdict;
    }
    // all surviving vertical components meet at the closed point
    verdict.connected = true;
    verdict.criterion = "i_zero";
    return verdict;
  }

  if (!ideal_in_m || !f_in_m) {
    verdict.connected = true;
    verdict.criterion = "domain";
    verdict.warnings.push_back(
        !ideal_in_m
            ? "I is not contained in the prime: a coefficient becomes a unit "
              "and the localized algebra is a domain"
            : "f is not contained in the prime: no vertical component "
              "survives localization");
    verdict.decomposition = decompose(data, limits);
    return verdict;
  }

  auto [d, h_prime] = split_equation(data, limits);
  std::vector<Polynomial> j_gens = {h_prime};
  for (const auto& fi : data.ideal) j_gens.push_back(fi);
  j_gens.push_back(data.f);

  std::vector<std::size_t> drop;
  for (std::size_t v = data.ring->base_count(); v < data.ring->arity(); ++v)
    drop.push_back(v);
  std::vector<Polynomial> contraction = eliminate(j_gens, drop, limits);

  verdict.connected = true;
  for (const auto& g : contraction) {
    verdict.eliminated.push_back(g);
    if (!in_m(g)) {
      verdict.connected = false;
      if (!verdict.local_witness) verdict.local_witness = g;
    }
  }
  verdict.decomposition = decompose(data, limits);
  return verdict;
}

// ---------------------------------------------------------------------------
// fibers
// ---------------------------------------------------------------------------

namespace {

struct RankResult {
  unsigned rank_coefficient = 0;  // rank of M
  bool consistent = true;         // rank [M | -F] == rank M
};

// Gaussian elimination over the coefficient field on the augmented matrix
RankResult field_rank(const Ring& ring, std::vector<std::vector<Coeff>> m,
                      std::size_t ncols) {
  RankResult result;
  const std::size_t rows = m.size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Coeff factor = ring.coeff_div(m[r][c], m[rank][c]);
      for (std::size_t k = c; k <= ncols; ++k)
        m[r][k] = ring.sub(m[r][k], ring.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  result.rank_coefficient = static_cast<unsigned>(rank);
  for (std::size_t r = 0; r < rows; ++r) {
    bool zero_lhs = true;
    for (std::size_t c = 0; c < ncols; ++c) zero_lhs = zero_lhs && m[r][c] == 0;
    if (zero_lhs && m[r][ncols] != 0) result.consistent = false;
  }
  return result;
}

// fraction-free (Bareiss) rank of a polynomial matrix over the fraction field
unsigned bareiss_rank(std::vector<std::vector<Polynomial>> m,
                      const RingPtr& ring) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  Polynomial prev = Polynomial::constant(ring, Coeff(1));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k)
        m[r][k] = (m[r][k] * m[rank][c] - m[r][c] * m[rank][k]).exact_div(prev);
      m[r][c] = Polynomial::zero(ring);
    }
    prev = m[rank][c];
    ++rank;
  }
  return static_cast<unsigned>(rank);
}

}  // namespace

FiberReport fiber_at(const ForcingData& data, const PointSpec& point,
                     const Limits& limits) {
  (void)limits;
  require_supported_base(*data.ring);
  if (!data.matrix)
    fail(Errc::invalid_argument, "fiber analysis needs matrix-form data");
  const auto& matrix = *data.matrix;
  const std::size_t mrows = matrix.size();
  const std::size_t n = data.ring->forcing_count();

  FiberReport report;
  report.point = point.generic ? "generic" : point.text;
  report.n = static_cast<unsigned>(n);

  if (point.generic) {
    std::vector<std::vector<Polynomial>> coeff(mrows);
    std::vector<std::vector<Polynomial>> augmented(mrows);
    for (std::size_t r = 0; r < mrows; ++r) {
      coeff[r] = matrix[r];
      augmented[r] = matrix[r];
      augmented[r].push_back(-data.rhs[r]);
    }
    unsigned rank = bareiss_rank(coeff, data.ring);
    unsigned rank_aug = bareiss_rank(augmented, data.ring);
    report.rank = rank;
    report.empty = rank_aug > rank;
    report.dimension = report.empty ? 0 : static_cast<unsigned>(n) - rank;
    return report;
  }

  if (data.ring->domain() == Domain::integers)
    fail(Errc::unsupported_base,
         "closed-point fibers need a polynomial base over a field");

  std::vector<std::vector<Coeff>> m(mrows, std::vector<Coeff>(n + 1, Coeff(0)));
  for (std::size_t r = 0; r < mrows; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Polynomial value = matrix[r][c].evaluate(point.coords);
      auto constant = value.constant_value();
      if (!constant)
        fail(Errc::invalid_argument, "point does not evaluate entries fully");
      m[r][c] = *constant;
    }
    auto rhs = (-data.rhs[r]).evaluate(point.coords).constant_value();
    if (!rhs)
      fail(Errc::invalid_argument, "point does not evaluate the vector fully");
    m[r][n] = *rhs;
  }
  RankResult rr = field_rank(*data.ring, std::move(m), n);
  report.rank = rr.rank_coefficient;
  report.empty = !rr.consistent;
  report.dimension = report.empty ? 0 : static_cast<unsigned>(n) - rr.rank_coefficient;
  return report;
}

}  // namespace forcing
