#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forcing/job.hpp"
#include "forcing/limits.hpp"
#include "forcing/polynomial.hpp"

namespace forcing {

/// Forcing data (f_1..f_n; f) over a supported factorial base ring, plus the
/// optional matrix form used by fiber queries. The f_i and f live in the
/// base variables only; h = f_1*T_1 + ... + f_n*T_n + f.
struct ForcingData {
  RingPtr ring;
  std::vector<Polynomial> ideal;
  Polynomial f;
  std::optional<std::vector<std::vector<Polynomial>>> matrix;
  std::vector<Polynomial> rhs;
  std::vector<Polynomial> trusted_factors;

  static ForcingData from_job(const JobSpec& job);
  Polynomial forcing_equation() const;
  bool ideal_is_zero() const;
};

/// The component model: h = d * h', vertical prime factors q_j of d, the
/// comaximality edges among them, the subset meeting the horizontal
/// component, and the connected groups of the vertical locus.
struct Decomposition {
  Polynomial d;
  std::optional<Polynomial> h_prime;  // absent on the I = 0 path
  std::vector<std::pair<Polynomial, unsigned>> vertical;  // prime, multiplicity
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // indices, i < j
  std::vector<std::size_t> h_edges;
  std::vector<std::vector<std::size_t>> groups;
  bool connected = false;
  std::string criterion;  // "theorem" or "zusam" (no full-ring basis needed)
};

struct ConnectednessVerdict {
  bool connected = false;
  std::string criterion;
  std::optional<Decomposition> decomposition;
  std::vector<std::string> warnings;
  // local mode evidence: generators of the contraction of (h') + (I, f) and,
  // when disconnected, one of them missing from the local prime
  std::vector<Polynomial> eliminated;
  std::optional<Polynomial> local_witness;
};

struct FiberReport {
  std::string point;
  bool empty = false;
  unsigned dimension = 0;  // meaningful when not empty
  unsigned rank = 0;
  unsigned n = 0;
};

/// h = d * h' with d = gcd(f_1, ..., f_n, f) and h' primitive (hence
/// irreducible). Requires some f_i != 0.
std::pair<Polynomial, Polynomial> split_equation(const ForcingData& data,
                                                 const Limits& limits = {});

Decomposition decompose(const ForcingData& data, const Limits& limits = {});

/// Global connectedness of Spec A. Fast paths: I = 0 (vertical components
/// only), f = 0 (homogeneous: a section exists), f in I (section), d a unit
/// (domain); otherwise the component criterion.
ConnectednessVerdict is_connected(const ForcingData& data,
                                  const Limits& limits = {});

/// gcd(d, f_1/d, ..., f_n/d) = 1 over a PID base (Z or univariate over a
/// field) is equivalent to connectedness.
ConnectednessVerdict is_connected_pid(const ForcingData& data,
                                      const Limits& limits = {});

/// Connectedness of the localization at the prime generated by prime_gens,
/// decided by eliminating the forcing variables from (h') + (I, f) and
/// testing containment in the prime.
ConnectednessVerdict is_connected_local(const ForcingData& data,
                                        std::span<const Polynomial> prime_gens,
                                        const Limits& limits = {});

/// Per vertical prime: is the localization there connected? Over a
/// one-dimensional base the global verdict equals the conjunction.
std::vector<std::pair<Polynomial, bool>> local_profile(
    const ForcingData& data, const Limits& limits = {});

/// Fiber over a closed rational point or the generic point: empty or an
/// affine space of dimension n - rank.
FiberReport fiber_at(const ForcingData& data, const PointSpec& point,
                     const Limits& limits = {});

/// Coefficient fast path for the horizontal-meets-vertical test: definitely
/// true when some primitive coefficient f'_i avoids (q); inconclusive
/// (nullopt) when q divides every f'_i.
std::optional<bool> h_edge_fast(std::span<const Polynomial> f_primes,
                                const Polynomial& q);

/// Full-ring ideal test (h', q) != (1); field bases only.
bool h_edge_full(const Polynomial& h_prime, const Polynomial& q,
                 const Limits& limits = {});

}  // namespace forcing
