#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forcing {

/// Exact coefficient value. Rationals are kept in lowest terms with a
/// positive denominator (gmp keeps mpq_class canonical); prime-field
/// residues are stored as integers in [0, p); integers have denominator 1.
using Coeff = mpq_class;

enum class Domain { rationals, prime_field, integers };

struct MonomialOrder {
  enum class Kind { grevlex, lex, block_elim };
  Kind kind = Kind::grevlex;
  // block_elim: variables with index >= elim_from form the dominant block
  // (compared first, grevlex within each block).
  std::size_t elim_from = 0;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Ring descriptor: coefficient domain, ordered base variables, forcing
/// variables, and the active monomial order. Immutable; polynomials share
/// their descriptor by pointer. Equality is structural.
class Ring {
 public:
  static RingPtr rationals(std::vector<std::string> base_vars,
                           std::vector<std::string> forcing_vars,
                           MonomialOrder order = {});
  static RingPtr prime_field(mpz_class p, std::vector<std::string> base_vars,
                             std::vector<std::string> forcing_vars,
                             MonomialOrder order = {});
  static RingPtr integers(std::vector<std::string> forcing_vars,
                          MonomialOrder order = {});

  Domain domain() const { return domain_; }
  const mpz_class& modulus() const { return p_; }
  bool is_field() const { return domain_ != Domain::integers; }

  std::size_t arity() const { return vars_.size(); }
  std::size_t base_count() const { return base_count_; }
  std::size_t forcing_count() const { return vars_.size() - base_count_; }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& variable(std::size_t i) const { return vars_[i]; }
  std::optional<std::size_t> find_variable(std::string_view name) const;
  bool is_forcing_variable(std::size_t i) const { return i >= base_count_; }

  const MonomialOrder& order() const { return order_; }

  RingPtr with_order(MonomialOrder order) const;
  /// Ring extended by one fresh forcing-side variable (Rabinowitsch).
  RingPtr with_extra_variable(std::string name) const;
  /// Ring restricted to the base variables.
  RingPtr base_only() const;
  /// Same ring under the block order that eliminates the forcing variables.
  RingPtr elimination_ring() const;

  bool same_structure(const Ring& o) const;  // domain, modulus, variables
  bool operator==(const Ring& o) const;      // same structure and same order

  // --- coefficient arithmetic in the declared domain ---
  Coeff canonical(const Coeff& a) const;
  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  Coeff inverse(const Coeff& a) const;  // fields; over Z only for units
  bool coeff_divides(const Coeff& a, const Coeff& b) const;  // a | b
  Coeff coeff_div(const Coeff& b, const Coeff& a) const;     // exact b/a
  Coeff coeff_pow(const Coeff& a, unsigned long e) const;
  bool coeff_is_unit(const Coeff& a) const;

  std::string coeff_to_string(const Coeff& a) const;
  /// Ring descriptor text, e.g. "Q[x,y];[T]"; parseable by parse_ring.
  std::string to_string() const;

 private:
  Ring(Domain d, mpz_class p, std::vector<std::string> vars,
       std::size_t base_count, MonomialOrder order);

  Domain domain_;
  mpz_class p_;
  std::vector<std::string> vars_;  // base variables then forcing variables
  std::size_t base_count_;
  MonomialOrder order_;
};

/// Modular inverse with validation: p must be prime and a nonzero mod p.
Coeff fp_inverse(const Coeff& a, const mpz_class& p);

bool is_probable_prime(const mpz_class& n);

}  // namespace forcing
