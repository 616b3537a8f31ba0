#include "forcing/monomial.hpp"

#include <algorithm>

#include "forcing/errors.hpp"

namespace forcing {

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto e : e_) d += e;
  return d;
}

std::uint32_t Monomial::degree_in_block(std::size_t lo, std::size_t hi) const {
  std::uint32_t d = 0;
  for (std::size_t i = lo; i < hi && i < e_.size(); ++i) d += e_[i];
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& m) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > m.e_[i]) return false;
  return true;
}

Monomial Monomial::mul(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

Monomial Monomial::div(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (o.e_[i] > e_[i])
      fail(Errc::inexact_division, "monomial quotient is not a monomial");
    r.e_[i] -= o.e_[i];
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::min(e_[i], o.e_[i]);
  return r;
}

namespace {

// grevlex on the index range [lo, hi): higher block degree wins; on ties the
// last variable with differing exponent decides, smaller exponent wins.
int cmp_grevlex_block(const Monomial& a, const Monomial& b, std::size_t lo,
                      std::size_t hi) {
  std::uint32_t da = a.degree_in_block(lo, hi);
  std::uint32_t db = b.degree_in_block(lo, hi);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i > lo; --i) {
    std::uint32_t ea = a[i - 1], eb = b[i - 1];
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

int cmp_lex(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int compare(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
  const std::size_t n = a.arity();
  switch (order.kind) {
    case MonomialOrder::Kind::grevlex:
      return cmp_grevlex_block(a, b, 0, n);
    case MonomialOrder::Kind::lex:
      return cmp_lex(a, b);
    case MonomialOrder::Kind::block_elim: {
      int c = cmp_grevlex_block(a, b, order.elim_from, n);
      if (c != 0) return c;
      return cmp_grevlex_block(a, b, 0, order.elim_from);
    }
  }
  return 0;
}

}  // namespace forcing
