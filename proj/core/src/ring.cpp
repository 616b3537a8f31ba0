#include "forcing/ring.hpp"

#include <algorithm>
#include <set>

#include "forcing/errors.hpp"

namespace forcing {
namespace {

void check_variable_names(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) fail(Errc::invalid_argument, "empty variable name");
    if (!seen.insert(v).second)
      fail(Errc::invalid_argument, "duplicate variable '" + v + "'");
  }
}

std::vector<std::string> concat(std::vector<std::string> a,
                                const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Ring::Ring(Domain d, mpz_class p, std::vector<std::string> vars,
           std::size_t base_count, MonomialOrder order)
    : domain_(d),
      p_(std::move(p)),
      vars_(std::move(vars)),
      base_count_(base_count),
      order_(order) {}

RingPtr Ring::rationals(std::vector<std::string> base_vars,
                        std::vector<std::string> forcing_vars,
                        MonomialOrder order) {
  auto vars = concat(std::move(base_vars), forcing_vars);
  check_variable_names(vars);
  std::size_t base = vars.size() - forcing_vars.size();
  return RingPtr(
      new Ring(Domain::rationals, mpz_class(0), std::move(vars), base, order));
}

RingPtr Ring::prime_field(mpz_class p, std::vector<std::string> base_vars,
                          std::vector<std::string> forcing_vars,
                          MonomialOrder order) {
  if (p < 2 || !is_probable_prime(p))
    fail(Errc::invalid_argument, "modulus " + p.get_str() + " is not prime");
  auto vars = concat(std::move(base_vars), forcing_vars);
  check_variable_names(vars);
  std::size_t base = vars.size() - forcing_vars.size();
  return RingPtr(
      new Ring(Domain::prime_field, std::move(p), std::move(vars), base, order));
}

RingPtr Ring::integers(std::vector<std::string> forcing_vars,
                       MonomialOrder order) {
  check_variable_names(forcing_vars);
  return RingPtr(
      new Ring(Domain::integers, mpz_class(0), std::move(forcing_vars), 0, order));
}

std::optional<std::size_t> Ring::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

RingPtr Ring::with_order(MonomialOrder order) const {
  return RingPtr(new Ring(domain_, p_, vars_, base_count_, order));
}

RingPtr Ring::with_extra_variable(std::string name) const {
  auto vars = vars_;
  vars.push_back(std::move(name));
  check_variable_names(vars);
  return RingPtr(new Ring(domain_, p_, std::move(vars), base_count_, order_));
}

RingPtr Ring::base_only() const {
  std::vector<std::string> vars(vars_.begin(), vars_.begin() + base_count_);
  MonomialOrder order = order_;
  if (order.kind == MonomialOrder::Kind::block_elim) order = MonomialOrder{};
  return RingPtr(new Ring(domain_, p_, std::move(vars), base_count_, order));
}

RingPtr Ring::elimination_ring() const {
  MonomialOrder order{MonomialOrder::Kind::block_elim, base_count_};
  return with_order(order);
}

bool Ring::same_structure(const Ring& o) const {
  return domain_ == o.domain_ && p_ == o.p_ && vars_ == o.vars_ &&
         base_count_ == o.base_count_;
}

bool Ring::operator==(const Ring& o) const {
  return same_structure(o) && order_ == o.order_;
}

Coeff Ring::canonical(const Coeff& a) const {
  switch (domain_) {
    case Domain::rationals:
      return a;
    case Domain::integers:
      if (a.get_den() != 1)
        fail(Errc::invalid_argument,
             "value " + a.get_str() + " is not an integer");
      return a;
    case Domain::prime_field: {
      if (mpz_divisible_p(a.get_den().get_mpz_t(), p_.get_mpz_t()))
        fail(Errc::invalid_argument,
             "denominator of " + a.get_str() + " vanishes mod " + p_.get_str());
      mpz_class num = a.get_num() % p_;
      if (num < 0) num += p_;
      if (a.get_den() != 1) {
        mpz_class den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), a.get_den().get_mpz_t(),
                       p_.get_mpz_t()) == 0)
          fail(Errc::invalid_argument,
               "denominator of " + a.get_str() + " not invertible mod " +
                   p_.get_str());
        num = (num * den_inv) % p_;
      }
      return Coeff(num);
    }
  }
  fail(Errc::invalid_argument, "unknown domain");
}

Coeff Ring::add(const Coeff& a, const Coeff& b) const {
  return canonical(Coeff(a + b));
}

Coeff Ring::sub(const Coeff& a, const Coeff& b) const {
  return canonical(Coeff(a - b));
}

Coeff Ring::mul(const Coeff& a, const Coeff& b) const {
  return canonical(Coeff(a * b));
}

Coeff Ring::neg(const Coeff& a) const { return canonical(Coeff(-a)); }

Coeff Ring::inverse(const Coeff& a) const {
  if (a == 0) fail(Errc::division_by_zero, "inverse of zero");
  switch (domain_) {
    case Domain::rationals:
      return Coeff(1 / a);
    case Domain::integers: {
      if (a == 1 || a == -1) return a;
      fail(Errc::invalid_argument, a.get_str() + " is not a unit in Z");
    }
    case Domain::prime_field: {
      Coeff c = canonical(a);
      if (c == 0) fail(Errc::division_by_zero, "inverse of zero residue");
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), c.get_num().get_mpz_t(), p_.get_mpz_t());
      return Coeff(inv);
    }
  }
  fail(Errc::invalid_argument, "unknown domain");
}

bool Ring::coeff_divides(const Coeff& a, const Coeff& b) const {
  if (a == 0) return b == 0;
  if (domain_ != Domain::integers) return true;
  return mpz_divisible_p(b.get_num().get_mpz_t(), a.get_num().get_mpz_t()) != 0;
}

Coeff Ring::coeff_div(const Coeff& b, const Coeff& a) const {
  if (a == 0) fail(Errc::division_by_zero, "coefficient division by zero");
  if (domain_ == Domain::integers) {
    if (!coeff_divides(a, b))
      fail(Errc::inexact_division,
           a.get_str() + " does not divide " + b.get_str() + " in Z");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), b.get_num().get_mpz_t(),
                 a.get_num().get_mpz_t());
    return Coeff(q);
  }
  return mul(b, inverse(a));
}

Coeff Ring::coeff_pow(const Coeff& a, unsigned long e) const {
  Coeff result(1);
  Coeff base = canonical(a);
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool Ring::coeff_is_unit(const Coeff& a) const {
  if (a == 0) return false;
  if (domain_ == Domain::integers) return a == 1 || a == -1;
  return true;
}

std::string Ring::coeff_to_string(const Coeff& a) const { return a.get_str(); }

std::string Ring::to_string() const {
  std::string out;
  switch (domain_) {
    case Domain::rationals:
      out = "Q";
      break;
    case Domain::prime_field:
      out = "Fp(" + p_.get_str() + ")";
      break;
    case Domain::integers:
      out = "Z";
      break;
  }
  if (domain_ != Domain::integers) {
    out += "[";
    for (std::size_t i = 0; i < base_count_; ++i) {
      if (i > 0) out += ",";
      out += vars_[i];
    }
    out += "]";
  }
  if (forcing_count() > 0) {
    out += ";[";
    for (std::size_t i = base_count_; i < vars_.size(); ++i) {
      if (i > base_count_) out += ",";
      out += vars_[i];
    }
    out += "]";
  }
  return out;
}

Coeff fp_inverse(const Coeff& a, const mpz_class& p) {
  if (p < 2 || !is_probable_prime(p))
    fail(Errc::invalid_argument, p.get_str() + " is not prime");
  if (a.get_den() != 1)
    fail(Errc::invalid_argument, "residue must be an integer");
  mpz_class r = a.get_num() % p;
  if (r < 0) r += p;
  if (r == 0) fail(Errc::division_by_zero, "zero residue has no inverse");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return Coeff(inv);
}

}  // namespace forcing
