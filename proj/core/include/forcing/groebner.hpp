#pragma once

#include <span>
#include <string>
#include <vector>

#include "forcing/limits.hpp"
#include "forcing/polynomial.hpp"

namespace forcing {

/// Machine-checkable witness. membership: sum(cofactors[i] * gens[i]) equals
/// the target exactly; unit: the combination equals 1; radical: target^exponent
/// has the attached membership certificate.
struct Certificate {
  enum class Kind { membership, unit, radical };
  Kind kind = Kind::membership;
  std::vector<Polynomial> cofactors;  // aligned with the original generators
  unsigned exponent = 0;              // radical only
};

/// Re-verifies a certificate by plain arithmetic, with no reliance on the
/// computation that produced it.
bool verify_certificate(const Certificate& cert,
                        std::span<const Polynomial> gens,
                        const Polynomial& target);

/// Reduced Groebner basis. Each basis element carries its representation
/// over the original generators, so membership certificates can be expressed
/// against the caller's input.
class GroebnerBasis {
 public:
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Polynomial>& origin() const { return origin_; }
  const std::vector<std::vector<Polynomial>>& representations() const {
    return reps_;
  }
  bool is_unit_basis() const {
    return gens_.size() == 1 && gens_[0].is_one();
  }

  /// Normal form plus the quotients over the basis elements.
  struct Reduction {
    Polynomial remainder;
    std::vector<Polynomial> quotients;
  };
  Reduction reduce(const Polynomial& f, const Limits& limits = {}) const;

  /// Cofactors over the *original* generators for a polynomial with zero
  /// normal form.
  std::vector<Polynomial> express(const Polynomial& f,
                                  const Limits& limits = {}) const;

 private:
  friend GroebnerBasis buchberger(std::span<const Polynomial>,
                                  const MonomialOrder&, const Limits&);
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> origin_;
  std::vector<std::vector<Polynomial>> reps_;
};

/// Buchberger's algorithm (normal pair-selection strategy, coprime-criterion
/// pruning), auto-reduced monic result, deterministic for fixed input and
/// order. Field coefficients only.
GroebnerBasis buchberger(std::span<const Polynomial> gens,
                         const MonomialOrder& order, const Limits& limits = {});

GroebnerBasis buchberger(std::span<const Polynomial> gens,
                         const Limits& limits = {});

struct MembershipVerdict {
  bool answer = false;
  Certificate certificate;  // meaningful when answer is true
};

MembershipVerdict ideal_member(const Polynomial& f,
                               std::span<const Polynomial> gens,
                               const Limits& limits = {});
MembershipVerdict ideal_member(const Polynomial& f, const GroebnerBasis& basis,
                               const Limits& limits = {});

MembershipVerdict is_unit_ideal(std::span<const Polynomial> gens,
                                const Limits& limits = {});

/// Generators of the contraction to the subring without `drop_vars`.
/// drop_vars must be a suffix block of the declared variable order.
std::vector<Polynomial> eliminate(std::span<const Polynomial> gens,
                                  std::span<const std::size_t> drop_vars,
                                  const Limits& limits = {});

struct RadicalVerdict {
  bool answer = false;
  unsigned exponent = 0;
  Certificate certificate;  // membership certificate for f^exponent
};

/// Rabinowitsch: f lies in the radical iff 1 lies in (gens, 1 - W*f) in the
/// ring extended by a fresh variable. The reported exponent is minimized.
RadicalVerdict radical_member(const Polynomial& f,
                              std::span<const Polynomial> gens,
                              const Limits& limits = {});

}  // namespace forcing
