#pragma once

#include <span>
#include <string>
#include <vector>

#include "forcing/limits.hpp"
#include "forcing/polynomial.hpp"

namespace forcing {

/// unit * product(factors[i].factor ^ factors[i].multiplicity) == input,
/// exactly. Factors are pairwise non-associate and normalized; `verified`
/// is false only for user-supplied factorizations accepted above the
/// configured degree bounds (multiplicative identity still checked).
struct Factorization {
  struct Part {
    Polynomial factor;
    unsigned multiplicity = 1;
    bool verified = true;
  };
  Coeff unit = Coeff(1);
  std::vector<Part> factors;

  Polynomial reassemble(const RingPtr& ring) const;
};

enum class Irreducibility { yes, no, unknown };

/// Squarefree decomposition: parts pairwise coprime, each squarefree.
/// Over prime fields the univariate parts are split into irreducibles
/// (cheap there, and what the downstream prime decomposition wants).
Factorization squarefree(const Polynomial& f, const Limits& limits = {});

/// Irreducible factorization over the supported domains: integers,
/// univariate over Q and F_p, multivariate over Q/F_p within the configured
/// total-degree bound. Units yield an empty factor list. Throws
/// Errc::unsupported_range beyond the bounds unless `trusted` supplies a
/// factor list, which is verified multiplicatively and marked unverified.
Factorization factor_prime(const Polynomial& d, const Limits& limits = {},
                           std::span<const Polynomial> trusted = {});

/// Never wrong: `unknown` outside the supported domains.
Irreducibility is_irreducible(const Polynomial& f, const Limits& limits = {});

}  // namespace forcing
