#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forcing/monomial.hpp"
#include "forcing/ring.hpp"

namespace forcing {

struct Term {
  Monomial mono;
  Coeff coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial in canonical form: terms sorted in
/// descending monomial order, no zero coefficients, coefficients canonical
/// for the ring's domain. Values are immutable after construction.
class Polynomial {
 public:
  Polynomial() = default;  // empty shell, only valid as a container slot

  static Polynomial zero(RingPtr ring);
  static Polynomial constant(RingPtr ring, Coeff value);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, Coeff c);
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring_ptr() const { return ring_; }
  const Ring& ring() const { return *ring_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  std::optional<Coeff> constant_value() const;

  /// Total degree; nullopt is the distinguished sentinel for the zero
  /// polynomial (never -1 arithmetic).
  std::optional<std::uint32_t> total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;  // 0 for the zero polynomial
  std::uint32_t degree_in_block(std::size_t lo, std::size_t hi) const;
  bool uses_variable(std::size_t var) const;
  bool uses_any_variable(std::size_t lo, std::size_t hi) const;

  const Term& leading_term() const;  // error on the zero polynomial
  Coeff coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const Coeff& c) const;
  Polynomial term_multiplied(const Monomial& m, const Coeff& c) const;
  Polynomial pow(unsigned long e) const;

  std::optional<Polynomial> divided_exactly(const Polynomial& b) const;
  Polynomial exact_div(const Polynomial& b) const;  // throws inexact_division

  /// Substitutes values for a subset of variables; unassigned variables
  /// remain.
  Polynomial evaluate(
      std::span<const std::pair<std::size_t, Coeff>> values) const;
  Polynomial derivative(std::size_t var) const;

  /// Monic over fields, positive leading coefficient over Z.
  Polynomial normalized() const;
  /// Unit u with normalized() * u == *this.
  Coeff leading_unit() const;

  /// Converts into a structurally compatible ring: the same domain with a
  /// different monomial order, extra appended variables, or fewer variables
  /// provided the dropped ones are unused.
  Polynomial to_ring(RingPtr target) const;

  /// Canonical text form (descending order, `coeff*x^e*...`, lowest terms,
  /// unary minus attached to the coefficient, `1*` and `^1` suppressed).
  std::string to_string() const;

  /// Dense coefficient list with respect to one variable; index = degree in
  /// that variable, entries are polynomials in the remaining variables.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;
  static Polynomial from_coefficients_in(RingPtr ring, std::size_t var,
                                         std::span<const Polynomial> coeffs);

 private:
  RingPtr ring_;
  std::vector<Term> terms_;  // descending in the ring's monomial order
};

enum class ArithOp { add, sub, mul, exact_div };

/// Spec-surface arithmetic entry point (checks ring compatibility).
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op);

/// Greatest common divisor via primitive pseudo-remainder sequences,
/// recursing on the last variable. Normalized (monic over fields, positive
/// leading coefficient over Z). gcd(a, 0) = normalized a.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

struct ContentSplit {
  Polynomial content;                  // gcd of all inputs
  std::vector<Polynomial> primitive;   // inputs divided by the content
};

/// Factors out the gcd of a family; content * primitive[i] == fs[i] exactly.
ContentSplit content_and_primitive(std::span<const Polynomial> fs);

}  // namespace forcing
