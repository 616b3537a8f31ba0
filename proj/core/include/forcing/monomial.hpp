#pragma once

#include <cstdint>
#include <vector>

#include "forcing/ring.hpp"

namespace forcing {

/// Exponent vector; length always matches the arity of the owning ring.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : e_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents)
      : e_(std::move(exponents)) {}

  std::size_t arity() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }

  std::uint32_t total_degree() const;
  std::uint32_t degree_in_block(std::size_t lo, std::size_t hi) const;
  bool is_one() const;
  bool divides(const Monomial& m) const;

  Monomial mul(const Monomial& o) const;
  Monomial div(const Monomial& o) const;  // requires o.divides(*this)
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> e_;
};

/// Three-way comparison under a monomial order: positive when a > b.
int compare(const Monomial& a, const Monomial& b, const MonomialOrder& order);

}  // namespace forcing
