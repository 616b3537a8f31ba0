#include "forcing/polynomial.hpp"

#include <algorithm>
#include <map>

#include "forcing/errors.hpp"

namespace forcing {
namespace {

void require_ring(const RingPtr& ring) {
  if (!ring) fail(Errc::invalid_argument, "polynomial without a ring");
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  require_ring(a.ring_ptr());
  require_ring(b.ring_ptr());
  if (!(a.ring() == b.ring()))
    fail(Errc::ring_mismatch, "operands live in different rings");
}

struct DescendingCmp {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare(a, b, *order) > 0;
  }
};

}  // namespace

Polynomial Polynomial::zero(RingPtr ring) {
  require_ring(ring);
  Polynomial p;
  p.ring_ = std::move(ring);
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, Coeff value) {
  require_ring(ring);
  Coeff c = ring->canonical(value);
  Polynomial p;
  p.ring_ = std::move(ring);
  if (c != 0) p.terms_.push_back(Term{Monomial(p.ring_->arity()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  require_ring(ring);
  if (index >= ring->arity())
    fail(Errc::invalid_argument, "variable index out of range");
  Monomial m(ring->arity());
  m[index] = 1;
  return monomial(std::move(ring), std::move(m), Coeff(1));
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, Coeff c) {
  require_ring(ring);
  return from_terms(ring, {Term{std::move(m), std::move(c)}});
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  require_ring(ring);
  std::map<Monomial, Coeff, DescendingCmp> acc(DescendingCmp{&ring->order()});
  for (auto& t : terms) {
    if (t.mono.arity() != ring->arity())
      fail(Errc::invalid_argument, "monomial arity does not match the ring");
    Coeff c = ring->canonical(t.coeff);
    if (c == 0) continue;
    auto [it, inserted] = acc.emplace(std::move(t.mono), c);
    if (!inserted) {
      it->second = ring->add(it->second, c);
      if (it->second == 0) acc.erase(it);
    }
  }
  Polynomial p;
  p.ring_ = std::move(ring);
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) p.terms_.push_back(Term{m, c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

std::optional<Coeff> Polynomial::constant_value() const {
  if (terms_.empty()) return Coeff(0);
  if (is_constant()) return terms_[0].coeff;
  return std::nullopt;
}

std::optional<std::uint32_t> Polynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

std::uint32_t Polynomial::degree_in_block(std::size_t lo, std::size_t hi) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree_in_block(lo, hi));
  return d;
}

bool Polynomial::uses_variable(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var] > 0) return true;
  return false;
}

bool Polynomial::uses_any_variable(std::size_t lo, std::size_t hi) const {
  for (const auto& t : terms_)
    if (t.mono.degree_in_block(lo, hi) > 0) return true;
  return false;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty())
    fail(Errc::invalid_argument, "the zero polynomial has no leading term");
  return terms_.front();
}

Coeff Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return Coeff(0);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = ring_->neg(t.coeff);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_ring(*this, o);
  // merge of two descending term lists
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  const MonomialOrder& ord = ring_->order();
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = compare(terms_[i].mono, o.terms_[j].mono, ord);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Coeff s = ring_->add(terms_[i].coeff, o.terms_[j].coeff);
      if (s != 0) out.push_back(Term{terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  Polynomial r;
  r.ring_ = ring_;
  r.terms_ = std::move(out);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ring(*this, o);
  std::map<Monomial, Coeff, DescendingCmp> acc(DescendingCmp{&ring_->order()});
  for (const auto& ta : terms_) {
    for (const auto& tb : o.terms_) {
      Monomial m = ta.mono.mul(tb.mono);
      Coeff c = ring_->mul(ta.coeff, tb.coeff);
      if (c == 0) continue;
      auto [it, inserted] = acc.emplace(std::move(m), c);
      if (!inserted) {
        it->second = ring_->add(it->second, c);
        if (it->second == 0) acc.erase(it);
      }
    }
  }
  Polynomial r;
  r.ring_ = ring_;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) r.terms_.push_back(Term{m, c});
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!a.ring_ || !b.ring_) return !a.ring_ && !b.ring_;
  return a.ring_->same_structure(*b.ring_) && a.terms_ == b.terms_;
}

Polynomial Polynomial::scaled(const Coeff& c) const {
  Coeff cc = ring_->canonical(c);
  if (cc == 0) return zero(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = ring_->mul(t.coeff, cc);
  return r;
}

Polynomial Polynomial::term_multiplied(const Monomial& m, const Coeff& c) const {
  Coeff cc = ring_->canonical(c);
  if (cc == 0) return zero(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) {
    t.mono = t.mono.mul(m);
    t.coeff = ring_->mul(t.coeff, cc);
  }
  return r;
}

Polynomial Polynomial::pow(unsigned long e) const {
  require_ring(ring_);
  Polynomial result = constant(ring_, Coeff(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    if (e >>= 1) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divided_exactly(const Polynomial& b) const {
  require_same_ring(*this, b);
  if (b.is_zero()) fail(Errc::division_by_zero, "division by zero polynomial");
  Polynomial q = zero(ring_);
  Polynomial r = *this;
  const Term& lead = b.leading_term();
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    if (!lead.mono.divides(lt.mono)) return std::nullopt;
    if (!ring_->coeff_divides(lead.coeff, lt.coeff)) return std::nullopt;
    Monomial m = lt.mono.div(lead.mono);
    Coeff c = ring_->coeff_div(lt.coeff, lead.coeff);
    Polynomial piece = monomial(ring_, std::move(m), c);
    q = q + piece;
    r = r - piece * b;
  }
  return q;
}

Polynomial Polynomial::exact_div(const Polynomial& b) const {
  auto q = divided_exactly(b);
  if (!q)
    fail(Errc::inexact_division,
         b.to_string() + " does not divide " + to_string());
  return *std::move(q);
}

Polynomial Polynomial::evaluate(
    std::span<const std::pair<std::size_t, Coeff>> values) const {
  require_ring(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Coeff c = t.coeff;
    Monomial m = t.mono;
    for (const auto& [var, value] : values) {
      if (var >= ring_->arity())
        fail(Errc::invalid_argument, "assignment to unknown variable");
      if (m[var] == 0) continue;
      c = ring_->mul(c, ring_->coeff_pow(ring_->canonical(value), m[var]));
      m[var] = 0;
    }
    out.push_back(Term{std::move(m), std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::derivative(std::size_t var) const {
  require_ring(ring_);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    Monomial m = t.mono;
    Coeff c = ring_->mul(t.coeff, Coeff(static_cast<long>(m[var])));
    m[var] -= 1;
    out.push_back(Term{std::move(m), std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::normalized() const {
  if (is_zero()) return *this;
  const Coeff& lc = leading_term().coeff;
  if (ring_->is_field()) {
    if (lc == 1) return *this;
    return scaled(ring_->inverse(lc));
  }
  return lc < 0 ? -*this : *this;
}

Coeff Polynomial::leading_unit() const {
  if (is_zero()) return Coeff(1);
  if (ring_->is_field()) return leading_term().coeff;
  return leading_term().coeff < 0 ? Coeff(-1) : Coeff(1);
}

Polynomial Polynomial::to_ring(RingPtr target) const {
  require_ring(ring_);
  require_ring(target);
  if (*ring_ == *target) {
    Polynomial r(*this);
    r.ring_ = std::move(target);
    return r;
  }
  if (ring_->domain() != target->domain() ||
      ring_->modulus() != target->modulus())
    fail(Errc::ring_mismatch, "coefficient domains differ");
  // map variables by name
  std::vector<std::optional<std::size_t>> where(ring_->arity());
  for (std::size_t i = 0; i < ring_->arity(); ++i)
    where[i] = target->find_variable(ring_->variable(i));
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->arity());
    for (std::size_t i = 0; i < ring_->arity(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!where[i])
        fail(Errc::ring_mismatch,
             "variable '" + ring_->variable(i) + "' is absent from the target ring");
      m[*where[i]] = t.mono[i];
    }
    out.push_back(Term{std::move(m), t.coeff});
  }
  return from_terms(std::move(target), std::move(out));
}

std::string Polynomial::to_string() const {
  if (!ring_) return "<invalid>";
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Coeff c = t.coeff;
    bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (negative) c = -c;
    std::string vars;
    for (std::size_t i = 0; i < ring_->arity(); ++i) {
      std::uint32_t e = t.mono[i];
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += ring_->variable(i);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += vars;
    } else {
      out += c.get_str() + "*" + vars;
    }
    first = false;
  }
  return out;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  require_ring(ring_);
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    std::uint32_t e = m[var];
    m[var] = 0;
    buckets[e].push_back(Term{std::move(m), t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

Polynomial Polynomial::from_coefficients_in(RingPtr ring, std::size_t var,
                                            std::span<const Polynomial> coeffs) {
  require_ring(ring);
  Polynomial acc = zero(ring);
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d].is_zero()) continue;
    Monomial m(ring->arity());
    m[var] = static_cast<std::uint32_t>(d);
    acc = acc + coeffs[d].to_ring(ring).term_multiplied(m, Coeff(1));
  }
  return acc;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::exact_div:
      return a.exact_div(b);
  }
  fail(Errc::invalid_argument, "unknown arithmetic operation");
}

}  // namespace forcing
