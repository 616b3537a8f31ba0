#pragma once

#include <optional>
#include <span>
#include <vector>

#include "forcing/components.hpp"
#include "forcing/groebner.hpp"
#include "forcing/job.hpp"
#include "forcing/limits.hpp"
#include "forcing/polynomial.hpp"

namespace forcing {

/// Rational multipliers witnessing membership in the Newton polyhedron:
/// lambdas >= 0, sum(lambdas) = 1, sum(lambda_g * g) <= v with the given
/// componentwise slack.
struct NewtonCertificate {
  std::vector<Coeff> lambdas;
  std::vector<Coeff> slack;
};

enum class LpMethod { automatic, fourier_motzkin, simplex };

/// Is v inside conv(gens) + R_{>=0}^m? Exact rational feasibility;
/// Fourier-Motzkin in small dimension, simplex above (automatic routing by
/// the number of eliminated multipliers).
std::optional<NewtonCertificate> newton_contains(
    const std::vector<std::uint32_t>& v,
    const std::vector<std::vector<std::uint32_t>>& gens,
    LpMethod method = LpMethod::automatic);

struct ClosureVerdict {
  ClosureKind kind = ClosureKind::ideal;
  bool answer = false;
  std::optional<Certificate> membership;  // ideal/radical and PID integral
  unsigned radical_exponent = 0;
  struct MonomialWitness {
    Polynomial monomial;  // the term of f being certified, coefficient 1
    NewtonCertificate certificate;
  };
  std::vector<MonomialWitness> polyhedron;  // monomial integral closure
  std::optional<bool> universally_connected;  // set for the integral kind
};

/// Ideal / radical / integral-closure membership. Integral closure is
/// decided for monomial ideals over field polynomial rings (Newton
/// polyhedron, monomial-wise) and for any ideal over a PID base (where the
/// integral closure equals the ideal); everything else is declined with
/// Errc::unsupported_closure.
ClosureVerdict closure_member(const Polynomial& f,
                              std::span<const Polynomial> gens,
                              ClosureKind kind, const Limits& limits = {});

struct DvrVerdict {
  bool answer = false;
  std::optional<unsigned> min_ideal_valuation;  // nullopt = +infinity
  std::optional<unsigned> f_valuation;
};

/// Valuation test at a prime p of a PID base: f lies in I R_(p) iff the
/// minimal valuation over the generators is at most v_p(f).
DvrVerdict dvr_check(const ForcingData& data, const Polynomial& p,
                     const Limits& limits = {});

struct FractionVerdict {
  bool integral = false;
  std::optional<Polynomial> quotient;
};

/// r/s is integral over a normal base ring iff s divides r exactly; the
/// answer mirrors universal connectedness of the forcing algebra of (s; r).
FractionVerdict fraction_integral(const Polynomial& r, const Polynomial& s);

}  // namespace forcing
