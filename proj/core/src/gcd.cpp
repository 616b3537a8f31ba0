#include <optional>

#include "forcing/errors.hpp"
#include "forcing/polynomial.hpp"

namespace forcing {
namespace {

// gcd of constants in the coefficient domain, as a constant polynomial
Polynomial constant_gcd(const Polynomial& a, const Polynomial& b) {
  const RingPtr& ring = a.ring_ptr();
  if (ring->is_field()) return Polynomial::constant(ring, Coeff(1));
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.constant_value()->get_num().get_mpz_t(),
          b.constant_value()->get_num().get_mpz_t());
  return Polynomial::constant(ring, Coeff(g));
}

std::optional<std::size_t> top_variable(const Polynomial& a,
                                        const Polynomial& b) {
  const std::size_t n = a.ring().arity();
  for (std::size_t i = n; i > 0; --i) {
    if (a.uses_variable(i - 1) || b.uses_variable(i - 1)) return i - 1;
  }
  return std::nullopt;
}

Polynomial gcd_impl(Polynomial a, Polynomial b);

// gcd of the polynomial coefficients of f with respect to `var`
Polynomial content_wrt(const Polynomial& f, std::size_t var) {
  Polynomial c = Polynomial::zero(f.ring_ptr());
  for (const auto& coeff : f.coefficients_in(var)) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? coeff : gcd_impl(c, coeff);
    if (c.is_one()) break;
  }
  return c;
}

// pseudo-remainder of a by b with respect to `var`; the result is a multiple
// of prem(a, b) by a power of lc(b), which the primitive PRS normalizes away
Polynomial pseudo_rem(Polynomial a, const Polynomial& b, std::size_t var) {
  const std::uint32_t db = b.degree_in(var);
  const Polynomial lcb = b.coefficients_in(var)[db];
  while (!a.is_zero() && a.degree_in(var) >= db) {
    std::uint32_t da = a.degree_in(var);
    Polynomial lca = a.coefficients_in(var)[da];
    Monomial shift(a.ring().arity());
    shift[var] = da - db;
    a = a * lcb - b.term_multiplied(shift, Coeff(1)) * lca;
  }
  return a;
}

Polynomial gcd_impl(Polynomial a, Polynomial b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto var = top_variable(a, b);
  if (!var) return constant_gcd(a, b);
  const std::size_t v = *var;
  if (!a.uses_variable(v)) return gcd_impl(a, content_wrt(b, v));
  if (!b.uses_variable(v)) return gcd_impl(content_wrt(a, v), b);

  Polynomial ca = content_wrt(a, v);
  Polynomial cb = content_wrt(b, v);
  Polynomial c = gcd_impl(ca, cb);
  Polynomial A = a.exact_div(ca);
  Polynomial B = b.exact_div(cb);
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);

  while (true) {
    Polynomial r = pseudo_rem(A, B, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return c;  // coprime in v
    A = std::move(B);
    B = r.exact_div(content_wrt(r, v));
  }
  return c * B.exact_div(content_wrt(B, v));
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (!a.ring_ptr() || !b.ring_ptr())
    fail(Errc::invalid_argument, "gcd of invalid polynomials");
  if (!(a.ring() == b.ring()))
    fail(Errc::ring_mismatch, "gcd operands live in different rings");
  if (a.is_zero() && b.is_zero())
    fail(Errc::invalid_argument, "gcd(0, 0) is undefined");
  return gcd_impl(a, b).normalized();
}

ContentSplit content_and_primitive(std::span<const Polynomial> fs) {
  if (fs.empty()) fail(Errc::invalid_argument, "empty polynomial family");
  Polynomial d = Polynomial::zero(fs.front().ring_ptr());
  bool any = false;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    any = true;
    d = d.is_zero() ? f.normalized() : poly_gcd(d, f);
    if (d.is_one()) break;
  }
  if (!any) fail(Errc::invalid_argument, "all polynomials are zero");
  ContentSplit split;
  split.content = d;
  split.primitive.reserve(fs.size());
  for (const auto& f : fs) split.primitive.push_back(f.exact_div(d));
  return split;
}

}  // namespace forcing
