#include "forcing/factor.hpp"

#include <algorithm>
#include <map>

#include "factor_internal.hpp"
#include "forcing/errors.hpp"

namespace forcing {
namespace {

using detail::FpCtx;
using detail::FpPoly;
using detail::ZPoly;

std::vector<std::size_t> active_variables(const Polynomial& f) {
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < f.ring().arity(); ++v)
    if (f.uses_variable(v)) vars.push_back(v);
  return vars;
}

Polynomial content_wrt(const Polynomial& f, std::size_t v) {
  Polynomial c = Polynomial::zero(f.ring_ptr());
  for (const auto& coeff : f.coefficients_in(v)) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? coeff.normalized() : poly_gcd(c, coeff);
    if (c.is_one()) break;
  }
  return c;
}

// ---------------------------------------------------------------------------
// integers
// ---------------------------------------------------------------------------

mpz_class pollard_rho(const mpz_class& n) {
  // Brent's cycle finding with deterministic restarts
  for (unsigned long c = 1;; ++c) {
    mpz_class x(2), y(2), d(1);
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_integer(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      n /= static_cast<long>(p);
    }
  }
  mpz_class d(17);
  while (n > 1 && d * d <= n && d < 1000000) {
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      ++out[d];
      n /= d;
    }
    d += 2;
  }
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  mpz_class f = pollard_rho(n);
  factor_integer(f, out);
  factor_integer(n / f, out);
}

// ---------------------------------------------------------------------------
// univariate conversions
// ---------------------------------------------------------------------------

// primitive integer image with positive leading coefficient; f == unit * image
ZPoly to_zpoly(const Polynomial& f, std::size_t v, Coeff& unit) {
  mpz_class den(1);
  for (const auto& t : f.terms())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  ZPoly z;
  z.c.assign(f.degree_in(v) + 1, mpz_class(0));
  for (const auto& t : f.terms())
    z.c[t.mono[v]] = t.coeff.get_num() * (den / t.coeff.get_den());
  mpz_class content = detail::z_content(z);
  if (z.c.back() < 0) content = -content;
  for (auto& c : z.c) c /= content;
  unit = Coeff(content, den);
  unit.canonicalize();
  return z;
}

Polynomial from_zpoly(const RingPtr& ring, std::size_t v, const ZPoly& z) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < z.c.size(); ++i) {
    if (z.c[i] == 0) continue;
    Monomial m(ring->arity());
    m[v] = static_cast<std::uint32_t>(i);
    terms.push_back(Term{std::move(m), Coeff(z.c[i])});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

FpCtx fp_context(const Ring& ring) {
  if (!ring.modulus().fits_ulong_p() ||
      ring.modulus().get_ui() >= (1ull << 62))
    fail(Errc::unsupported_range, "prime field modulus too large to factor");
  return FpCtx{ring.modulus().get_ui()};
}

FpPoly to_fppoly(const Polynomial& f, std::size_t v) {
  FpPoly r;
  r.c.assign(f.degree_in(v) + 1, 0);
  for (const auto& t : f.terms()) r.c[t.mono[v]] = t.coeff.get_num().get_ui();
  detail::fp_trim(r);
  return r;
}

Polynomial from_fppoly(const RingPtr& ring, std::size_t v, const FpPoly& f) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    Monomial m(ring->arity());
    m[v] = static_cast<std::uint32_t>(i);
    terms.push_back(Term{std::move(m), Coeff(static_cast<unsigned long>(f.c[i]))});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

// ---------------------------------------------------------------------------
// squarefree decomposition (internal; parts need not be irreducible)
// ---------------------------------------------------------------------------

using Parts = std::vector<std::pair<Polynomial, unsigned>>;

bool has_zero_partials(const Polynomial& f) {
  for (std::size_t v = 0; v < f.ring().arity(); ++v)
    if (!f.derivative(v).is_zero()) return false;
  return true;
}

Polynomial pth_root(const Polynomial& f, unsigned long p) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    for (std::size_t v = 0; v < m.arity(); ++v) {
      if (m[v] % p != 0)
        fail(Errc::invalid_argument, "polynomial is not a p-th power");
      m[v] /= static_cast<std::uint32_t>(p);
    }
    terms.push_back(Term{std::move(m), t.coeff});  // Frobenius fixes F_p
  }
  return Polynomial::from_terms(f.ring_ptr(), std::move(terms));
}

void squarefree_decompose(const Polynomial& f, unsigned mult_scale, Parts& out,
                          Coeff& unit);

// Musser loop with respect to one variable; the residual collects factors
// whose multiplicity vanishes against the derivative (char p) and is handled
// recursively.
void musser_wrt(const Polynomial& f, std::size_t v, unsigned mult_scale,
                Parts& out, Coeff& unit) {
  const bool char_p = f.ring().domain() == Domain::prime_field;
  Polynomial g = poly_gcd(f, f.derivative(v));
  unit = f.ring().mul(unit, f.ring().coeff_pow(f.leading_unit(), mult_scale));
  Polynomial w = f.normalized().exact_div(g);
  unsigned i = 1;
  while (!w.is_constant()) {
    Polynomial y = poly_gcd(w, g);
    Polynomial z = w.exact_div(y);
    if (!z.is_constant()) out.emplace_back(z.normalized(), i * mult_scale);
    g = g.exact_div(y);
    w = std::move(y);
    ++i;
  }
  if (!g.is_constant()) {
    if (!char_p)
      fail(Errc::invalid_argument, "squarefree residue in characteristic 0");
    squarefree_decompose(g, mult_scale, out, unit);
  }
}

void squarefree_decompose(const Polynomial& f, unsigned mult_scale, Parts& out,
                          Coeff& unit) {
  if (f.is_constant()) {
    unit = f.ring().mul(unit,
                        f.ring().coeff_pow(*f.constant_value(), mult_scale));
    return;
  }
  const bool char_p = f.ring().domain() == Domain::prime_field;
  if (char_p && has_zero_partials(f)) {
    unsigned long p = f.ring().modulus().get_ui();
    squarefree_decompose(pth_root(f, p),
                         mult_scale * static_cast<unsigned>(p), out, unit);
    return;
  }
  // highest active variable with nonzero partial derivative
  auto vars = active_variables(f);
  std::size_t v = vars.back();
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    if (!f.derivative(*it).is_zero()) {
      v = *it;
      break;
    }
  }
  Polynomial cont = content_wrt(f, v);
  if (!cont.is_constant()) {
    squarefree_decompose(cont, mult_scale, out, unit);
    musser_wrt(f.exact_div(cont), v, mult_scale, out, unit);
    return;
  }
  musser_wrt(f, v, mult_scale, out, unit);
}

// ---------------------------------------------------------------------------
// univariate irreducible factorization
// ---------------------------------------------------------------------------

void factor_univariate_squarefree(const Polynomial& f, std::size_t v,
                                  unsigned multiplicity, const Limits& limits,
                                  Factorization& out) {
  const RingPtr& ring = f.ring_ptr();
  if (ring->domain() == Domain::prime_field) {
    FpCtx F = fp_context(*ring);
    out.unit = ring->mul(out.unit,
                         ring->coeff_pow(f.leading_term().coeff, multiplicity));
    for (auto& [part, mult] : detail::fp_factor(F, to_fppoly(f, v)))
      out.factors.push_back(Factorization::Part{
          from_fppoly(ring, v, part), mult * multiplicity, true});
    return;
  }
  // rationals: clear denominators and factor over Z
  Coeff unit(1);
  ZPoly z = to_zpoly(f, v, unit);
  out.unit = ring->mul(out.unit, ring->coeff_pow(unit, multiplicity));
  for (auto& zf : detail::z_factor_squarefree(z, limits.max_factor_degree)) {
    Polynomial factor = from_zpoly(ring, v, zf);
    out.unit = ring->mul(
        out.unit, ring->coeff_pow(factor.leading_term().coeff, multiplicity));
    out.factors.push_back(
        Factorization::Part{factor.normalized(), multiplicity, true});
  }
}

// ---------------------------------------------------------------------------
// Kronecker substitution for multivariate parts
// ---------------------------------------------------------------------------

void factor_multivariate_squarefree(const Polynomial& f, unsigned multiplicity,
                                    const Limits& limits, Factorization& out);

void factor_part(const Polynomial& f, unsigned multiplicity,
                 const Limits& limits, Factorization& out) {
  if (f.is_constant()) {
    out.unit = f.ring().mul(
        out.unit, f.ring().coeff_pow(*f.constant_value(), multiplicity));
    return;
  }
  auto vars = active_variables(f);
  if (vars.size() == 1)
    factor_univariate_squarefree(f, vars[0], multiplicity, limits, out);
  else
    factor_multivariate_squarefree(f, multiplicity, limits, out);
}

void factor_multivariate_squarefree(const Polynomial& f, unsigned multiplicity,
                                    const Limits& limits, Factorization& out) {
  const RingPtr& ring = f.ring_ptr();
  auto vars = active_variables(f);
  // peel content with respect to the last active variable until the part is
  // genuinely multivariate-primitive
  Polynomial cont = content_wrt(f, vars.back());
  if (!cont.is_constant()) {
    factor_part(cont, multiplicity, limits, out);
    factor_part(f.exact_div(cont), multiplicity, limits, out);
    return;
  }

  // Kronecker substitution x_i -> t^(D^i)
  std::uint32_t D = 0;
  for (std::size_t v : vars) D = std::max(D, f.degree_in(v));
  D += 1;
  unsigned long image_degree = 0;
  {
    unsigned long power = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      image_degree += static_cast<unsigned long>(D - 1) * power;
      power *= D;
    }
  }

  RingPtr line = ring->domain() == Domain::prime_field
                     ? Ring::prime_field(ring->modulus(), {"t"}, {})
                     : Ring::rationals({"t"}, {});
  auto kronecker = [&](const Polynomial& g) {
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      unsigned long e = 0, power = 1;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        e += t.mono[vars[i]] * power;
        power *= D;
      }
      Monomial m(1);
      m[0] = static_cast<std::uint32_t>(e);
      terms.push_back(Term{std::move(m), t.coeff});
    }
    return Polynomial::from_terms(line, std::move(terms));
  };
  auto inverse = [&](const Polynomial& u) -> std::optional<Polynomial> {
    std::vector<Term> terms;
    for (const auto& t : u.terms()) {
      unsigned long e = t.mono[0];
      Monomial m(ring->arity());
      for (std::size_t i = 0; i < vars.size(); ++i) {
        m[vars[i]] = static_cast<std::uint32_t>(e % D);
        e /= D;
      }
      if (e != 0) return std::nullopt;  // exponent outside the box
      terms.push_back(Term{std::move(m), t.coeff});
    }
    return Polynomial::from_terms(ring, std::move(terms));
  };

  // factor the univariate image; its degree is bounded by the multivariate
  // degree cap, so pass the image degree as the univariate allowance. The
  // image of a squarefree polynomial need not stay squarefree, hence the
  // decomposition step.
  Factorization image;
  Limits inner = limits;
  inner.max_factor_degree = std::max<unsigned>(
      limits.max_factor_degree, static_cast<unsigned>(image_degree));
  Polynomial k = kronecker(f).normalized();
  {
    Coeff iunit(1);
    Parts iparts;
    squarefree_decompose(k, 1, iparts, iunit);
    for (auto& [part, mult] : iparts)
      factor_univariate_squarefree(part, 0, mult, inner, image);
  }

  std::vector<Polynomial> pieces;
  for (auto& part : image.factors)
    for (unsigned i = 0; i < part.multiplicity; ++i)
      pieces.push_back(part.factor);

  Polynomial remaining = f;
  std::vector<std::size_t> live(pieces.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;

  auto emit = [&](const Polynomial& factor) {
    Polynomial norm = factor.normalized();
    out.factors.push_back(Factorization::Part{norm, multiplicity, true});
    remaining = remaining.exact_div(norm);
  };

  std::size_t size = 1;
  while (2 * size <= live.size()) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (!found) {
      Polynomial prod = Polynomial::constant(line, Coeff(1));
      for (std::size_t i = 0; i < size; ++i) prod = prod * pieces[live[idx[i]]];
      auto cand = inverse(prod.normalized());
      if (cand && !cand->is_constant()) {
        if (auto q = remaining.divided_exactly(cand->normalized())) {
          (void)q;
          std::vector<std::size_t> picked;
          for (std::size_t i = 0; i < size; ++i) picked.push_back(live[idx[i]]);
          emit(*cand);
          std::vector<std::size_t> next;
          for (std::size_t vtx : live)
            if (std::find(picked.begin(), picked.end(), vtx) == picked.end())
              next.push_back(vtx);
          live = std::move(next);
          found = true;
          break;
        }
      }
      std::size_t kpos = size;
      bool advanced = false;
      while (kpos > 0) {
        --kpos;
        if (idx[kpos] + (size - kpos) < live.size()) {
          ++idx[kpos];
          for (std::size_t j = kpos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    if (found)
      size = 1;
    else
      ++size;
  }
  if (!remaining.is_constant()) {
    Polynomial norm = remaining.normalized();
    out.factors.push_back(Factorization::Part{norm, multiplicity, true});
    remaining = remaining.exact_div(norm);
  }
  out.unit = ring->mul(out.unit, ring->coeff_pow(*remaining.constant_value(),
                                                 multiplicity));
}

void sort_and_merge(Factorization& fz) {
  std::sort(fz.factors.begin(), fz.factors.end(),
            [](const Factorization::Part& a, const Factorization::Part& b) {
              auto da = a.factor.total_degree().value_or(0);
              auto db = b.factor.total_degree().value_or(0);
              if (da != db) return da < db;
              return a.factor.to_string() < b.factor.to_string();
            });
  std::vector<Factorization::Part> merged;
  for (auto& part : fz.factors) {
    if (!merged.empty() && merged.back().factor == part.factor) {
      merged.back().multiplicity += part.multiplicity;
      merged.back().verified = merged.back().verified && part.verified;
    } else {
      merged.push_back(std::move(part));
    }
  }
  fz.factors = std::move(merged);
}

}  // namespace

Polynomial Factorization::reassemble(const RingPtr& ring) const {
  Polynomial acc = Polynomial::constant(ring, unit);
  for (const auto& part : factors)
    acc = acc * part.factor.to_ring(ring).pow(part.multiplicity);
  return acc;
}

Factorization squarefree(const Polynomial& f, const Limits& limits) {
  if (!f.ring_ptr() || f.is_zero())
    fail(Errc::invalid_argument, "squarefree decomposition of zero");
  const RingPtr& ring = f.ring_ptr();
  Factorization result;

  if (f.is_constant()) {
    if (ring->domain() == Domain::integers) {
      std::map<mpz_class, unsigned> primes;
      factor_integer(f.constant_value()->get_num(), primes);
      result.unit = *f.constant_value() < 0 ? Coeff(-1) : Coeff(1);
      // group primes by multiplicity into coprime squarefree parts
      std::map<unsigned, mpz_class> grouped;
      for (auto& [p, m] : primes) {
        auto [it, inserted] = grouped.emplace(m, p);
        if (!inserted) it->second *= p;
      }
      for (auto& [m, value] : grouped)
        result.factors.push_back(Factorization::Part{
            Polynomial::constant(ring, Coeff(value)), m, true});
    } else {
      result.unit = *f.constant_value();
    }
    return result;
  }

  if (ring->domain() == Domain::integers)
    fail(Errc::unsupported_range,
         "squarefree decomposition over Z[T...] beyond constants is not "
         "supported");
  auto vars = active_variables(f);
  if (vars.size() == 1 && ring->domain() == Domain::prime_field) {
    // univariate prime-field parts split all the way to irreducibles
    return factor_prime(f, limits);
  }
  Coeff unit(1);
  Parts parts;
  squarefree_decompose(f, 1, parts, unit);
  result.unit = unit;
  for (auto& [part, mult] : parts)
    result.factors.push_back(Factorization::Part{part, mult, true});
  sort_and_merge(result);
  return result;
}

Factorization factor_prime(const Polynomial& d, const Limits& limits,
                           std::span<const Polynomial> trusted) {
  if (!d.ring_ptr() || d.is_zero())
    fail(Errc::invalid_argument, "factorization of zero");
  const RingPtr& ring = d.ring_ptr();
  Factorization result;

  if (!trusted.empty()) {
    Polynomial remaining = d;
    for (const auto& t : trusted) {
      Polynomial norm = t.normalized();
      if (norm.is_constant())
        fail(Errc::validation, "trusted factors must be non-units");
      unsigned mult = 0;
      while (auto q = remaining.divided_exactly(norm)) {
        remaining = *q;
        ++mult;
      }
      if (mult == 0)
        fail(Errc::validation,
             "trusted factor " + t.to_string() + " does not divide the input");
      result.factors.push_back(Factorization::Part{norm, mult, false});
    }
    if (!remaining.is_constant())
      fail(Errc::validation,
           "trusted factorization does not reproduce the input");
    result.unit = *remaining.constant_value();
    sort_and_merge(result);
    return result;
  }

  if (d.is_constant()) {
    if (ring->domain() != Domain::integers) {
      result.unit = *d.constant_value();
      return result;
    }
    std::map<mpz_class, unsigned> primes;
    factor_integer(d.constant_value()->get_num(), primes);
    result.unit = *d.constant_value() < 0 ? Coeff(-1) : Coeff(1);
    for (auto& [p, m] : primes)
      result.factors.push_back(
          Factorization::Part{Polynomial::constant(ring, Coeff(p)), m, true});
    return result;
  }

  if (ring->domain() == Domain::integers)
    fail(Errc::unsupported_range,
         "factorization over Z[T...] beyond constants is not supported");

  // peel off monomial factors first
  Polynomial rest = d;
  for (std::size_t v = 0; v < ring->arity(); ++v) {
    std::uint32_t low = 0xffffffff;
    for (const auto& t : rest.terms()) low = std::min(low, t.mono[v]);
    if (low == 0 || rest.is_zero()) continue;
    Monomial m(ring->arity());
    m[v] = low;
    result.factors.push_back(
        Factorization::Part{Polynomial::variable(ring, v), low, true});
    rest = rest.exact_div(Polynomial::monomial(ring, m, Coeff(1)));
  }

  if (rest.is_constant()) {
    result.unit = ring->mul(result.unit, *rest.constant_value());
    sort_and_merge(result);
    return result;
  }

  auto vars = active_variables(rest);
  if (vars.size() > 1) {
    auto deg = rest.total_degree();
    if (deg && *deg > limits.max_multivar_degree)
      fail(Errc::unsupported_range,
           "multivariate factorization degree " + std::to_string(*deg) +
               " exceeds the configured bound " +
               std::to_string(limits.max_multivar_degree) +
               " and no trusted factorization was supplied");
  }

  Coeff unit(1);
  Parts parts;
  squarefree_decompose(rest, 1, parts, unit);
  result.unit = ring->mul(result.unit, unit);
  for (auto& [part, mult] : parts) {
    auto pv = active_variables(part);
    if (pv.size() == 1)
      factor_univariate_squarefree(part, pv[0], mult, limits, result);
    else
      factor_multivariate_squarefree(part, mult, limits, result);
  }
  sort_and_merge(result);
  return result;
}

Irreducibility is_irreducible(const Polynomial& f, const Limits& limits) {
  if (!f.ring_ptr() || f.is_zero())
    fail(Errc::invalid_argument, "irreducibility of zero");
  const RingPtr& ring = f.ring_ptr();
  if (f.is_constant()) {
    if (ring->domain() != Domain::integers)
      fail(Errc::invalid_argument, "constants over a field are units");
    const Coeff c = *f.constant_value();
    if (ring->coeff_is_unit(c))
      fail(Errc::invalid_argument, "units have no factorization");
    mpz_class n = abs(c.get_num());
    return is_probable_prime(n) ? Irreducibility::yes : Irreducibility::no;
  }

  // linear forms with coprime coefficients are irreducible: in a factorial
  // coefficient ring any factorization forces one factor to divide every
  // coefficient of the linear block
  auto linear_block_check = [&](std::size_t lo,
                                std::size_t hi) -> Irreducibility {
    if (f.degree_in_block(lo, hi) != 1) return Irreducibility::unknown;
    // group the terms into full coefficient polynomials per block variable
    std::map<std::size_t, Polynomial> groups;
    Polynomial tail = Polynomial::zero(ring);
    for (const auto& t : f.terms()) {
      if (t.mono.degree_in_block(lo, hi) == 0) {
        tail = tail + Polynomial::monomial(ring, t.mono, t.coeff);
        continue;
      }
      std::size_t which = lo;
      Monomial m = t.mono;
      for (std::size_t v = lo; v < hi; ++v) {
        if (m[v] > 0) which = v;
        m[v] = 0;
      }
      auto [it, inserted] =
          groups.emplace(which, Polynomial::monomial(ring, m, t.coeff));
      if (!inserted)
        it->second = it->second + Polynomial::monomial(ring, m, t.coeff);
    }
    Polynomial g = Polynomial::zero(ring);
    bool any = false;
    auto fold = [&](const Polynomial& c) {
      if (c.is_zero()) return;
      g = any ? poly_gcd(g, c) : c.normalized();
      any = true;
    };
    for (const auto& [v, c] : groups) fold(c);
    fold(tail);
    if (any && g.is_one()) return Irreducibility::yes;
    return Irreducibility::unknown;
  };

  if (auto r = linear_block_check(0, ring->arity());
      r != Irreducibility::unknown)
    return r;
  if (ring->forcing_count() > 0) {
    if (auto r = linear_block_check(ring->base_count(), ring->arity());
        r != Irreducibility::unknown)
      return r;
  }

  try {
    Factorization fz = factor_prime(f, limits);
    return (fz.factors.size() == 1 && fz.factors[0].multiplicity == 1)
               ? Irreducibility::yes
               : Irreducibility::no;
  } catch (const Error& e) {
    if (e.code() == Errc::unsupported_range) return Irreducibility::unknown;
    throw;
  }
}

}  // namespace forcing
