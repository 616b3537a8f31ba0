#include "forcing/closure.hpp"

#include <algorithm>
#include <map>

#include "forcing/errors.hpp"
#include "forcing/factor.hpp"
#include "linear.hpp"

namespace forcing {
namespace {

bool is_pid_base(const Ring& ring) {
  return ring.domain() == Domain::integers || ring.base_count() == 1;
}

bool all_monomial(std::span<const Polynomial> gens) {
  for (const auto& g : gens) {
    if (g.is_zero()) return false;
    if (g.terms().size() != 1) return false;
  }
  return true;
}

// gcd with Bezout cofactors over Z and over K[x] (the two PID bases)
Polynomial pid_gcd_bezout(std::span<const Polynomial> gens,
                          std::vector<Polynomial>& cofactors) {
  const RingPtr ring = gens.front().ring_ptr();
  cofactors.assign(gens.size(), Polynomial::zero(ring));
  Polynomial g = Polynomial::zero(ring);
  std::vector<Polynomial> reps;  // g == sum reps[i] * gens[i]
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    if (g.is_zero()) {
      g = gens[i];
      cofactors.assign(gens.size(), Polynomial::zero(ring));
      cofactors[i] = Polynomial::constant(ring, Coeff(1));
      continue;
    }
    // extended Euclid on (g, gens[i]) at the polynomial level; over Z both
    // are constants and this is the integer algorithm
    Polynomial a = g, b = gens[i];
    Polynomial sa = Polynomial::constant(ring, Coeff(1));
    Polynomial sb = Polynomial::zero(ring);
    Polynomial ta = Polynomial::zero(ring);
    Polynomial tb = Polynomial::constant(ring, Coeff(1));
    auto divmod = [&](const Polynomial& x,
                      const Polynomial& y) -> std::pair<Polynomial, Polynomial> {
      // works for univariate over a field and for integers
      if (ring->domain() == Domain::integers) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(),
                    x.constant_value()->get_num().get_mpz_t(),
                    y.constant_value()->get_num().get_mpz_t());
        return {Polynomial::constant(ring, Coeff(q)),
                Polynomial::constant(ring, Coeff(r))};
      }
      Polynomial q = Polynomial::zero(ring);
      Polynomial r = x;
      const std::size_t v = 0;  // single base variable
      const std::uint32_t dy = y.degree_in(v);
      const Polynomial ly = y.coefficients_in(v)[dy];
      while (!r.is_zero() && r.degree_in(v) >= dy) {
        std::uint32_t dr = r.degree_in(v);
        Polynomial lr = r.coefficients_in(v)[dr];
        Monomial shift(ring->arity());
        shift[v] = dr - dy;
        Coeff c = ring->coeff_div(*lr.constant_value(), *ly.constant_value());
        Polynomial piece = Polynomial::monomial(ring, shift, c);
        q = q + piece;
        r = r - piece * y;
      }
      return {q, r};
    };
    while (!b.is_zero()) {
      auto [q, r] = divmod(a, b);
      Polynomial sa2 = sa - q * sb;
      Polynomial ta2 = ta - q * tb;
      a = std::move(b);
      b = std::move(r);
      sa = std::move(sb);
      sb = std::move(sa2);
      ta = std::move(tb);
      tb = std::move(ta2);
    }
    // a = sa * g + ta * gens[i]
    std::vector<Polynomial> next(gens.size(), Polynomial::zero(ring));
    for (std::size_t j = 0; j < gens.size(); ++j) next[j] = sa * cofactors[j];
    next[i] = next[i] + ta;
    g = a;
    cofactors = std::move(next);
  }
  if (g.is_zero())
    fail(Errc::invalid_argument, "gcd of the zero ideal is undefined");
  // normalize and rescale the cofactors identically
  Polynomial norm = g.normalized();
  Polynomial unit = g.exact_div(norm);  // constant
  for (auto& c : cofactors)
    c = c.exact_div(unit);
  return norm;
}

Certificate pid_membership_certificate(const Polynomial& f,
                                       std::span<const Polynomial> gens,
                                       const Polynomial& g,
                                       std::span<const Polynomial> bezout) {
  Certificate cert;
  cert.kind = Certificate::Kind::membership;
  Polynomial scale = f.exact_div(g);
  for (const auto& b : bezout) cert.cofactors.push_back(b * scale);
  return cert;
}

std::optional<unsigned> valuation(const Polynomial& g, const Polynomial& p) {
  if (g.is_zero()) return std::nullopt;  // infinity
  unsigned v = 0;
  Polynomial rest = g;
  while (auto q = rest.divided_exactly(p)) {
    rest = *q;
    ++v;
  }
  return v;
}

}  // namespace

std::optional<NewtonCertificate> newton_contains(
    const std::vector<std::uint32_t>& v,
    const std::vector<std::vector<std::uint32_t>>& gens, LpMethod method) {
  if (gens.empty()) fail(Errc::invalid_argument, "empty generator set");
  const std::size_t m = v.size();
  for (const auto& g : gens)
    if (g.size() != m)
      fail(Errc::invalid_argument, "exponent vector dimension mismatch");
  const std::size_t k = gens.size();

  auto finish = [&](std::vector<mpq_class> lambdas)
      -> std::optional<NewtonCertificate> {
    NewtonCertificate cert;
    cert.lambdas = std::move(lambdas);
    cert.slack.assign(m, mpq_class(0));
    for (std::size_t j = 0; j < m; ++j) {
      mpq_class used(0);
      for (std::size_t i = 0; i < k; ++i)
        used += cert.lambdas[i] * static_cast<long>(gens[i][j]);
      cert.slack[j] = mpq_class(static_cast<long>(v[j])) - used;
      if (cert.slack[j] < 0)
        fail(Errc::invalid_argument, "multiplier extraction failed");
    }
    return cert;
  };

  // exact hits get the indicator certificate directly
  for (std::size_t i = 0; i < k; ++i) {
    if (gens[i] == v) {
      std::vector<mpq_class> lambdas(k, mpq_class(0));
      lambdas[i] = 1;
      return finish(std::move(lambdas));
    }
  }

  if (method == LpMethod::automatic)
    method = k <= 4 ? LpMethod::fourier_motzkin : LpMethod::simplex;

  if (method == LpMethod::fourier_motzkin) {
    // substitute lambda_k = 1 - sum of the others; variables x_0..x_{k-2}
    const std::size_t nvars = k - 1;
    std::vector<detail::LinRow> rows;
    const auto& last = gens[k - 1];
    for (std::size_t j = 0; j < m; ++j) {
      detail::LinRow row;
      row.a.assign(nvars, mpq_class(0));
      for (std::size_t i = 0; i < nvars; ++i)
        row.a[i] = mpq_class(static_cast<long>(gens[i][j])) -
                   static_cast<long>(last[j]);
      row.b = mpq_class(static_cast<long>(v[j])) - static_cast<long>(last[j]);
      rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < nvars; ++i) {
      detail::LinRow nonneg;  // -x_i <= 0
      nonneg.a.assign(nvars, mpq_class(0));
      nonneg.a[i] = -1;
      nonneg.b = 0;
      rows.push_back(std::move(nonneg));
    }
    detail::LinRow sum;  // sum x_i <= 1  (lambda_k >= 0)
    sum.a.assign(nvars, mpq_class(1));
    sum.b = 1;
    rows.push_back(std::move(sum));

    if (nvars == 0) {
      // single generator: feasible iff gens[0] <= v componentwise
      for (std::size_t j = 0; j < m; ++j)
        if (gens[0][j] > v[j]) return std::nullopt;
      return finish({mpq_class(1)});
    }
    auto x = detail::fourier_motzkin(std::move(rows), nvars);
    if (!x) return std::nullopt;
    std::vector<mpq_class> lambdas(k, mpq_class(0));
    mpq_class rest(1);
    for (std::size_t i = 0; i < nvars; ++i) {
      lambdas[i] = (*x)[i];
      rest -= (*x)[i];
    }
    lambdas[k - 1] = rest;
    return finish(std::move(lambdas));
  }

  // simplex on: sum(lambda) = 1; sum(lambda_i g_i[j]) + s_j = v[j]
  const std::size_t n = k + m;  // lambdas then slacks
  std::vector<std::vector<mpq_class>> A(m + 1,
                                        std::vector<mpq_class>(n, mpq_class(0)));
  std::vector<mpq_class> b(m + 1);
  for (std::size_t i = 0; i < k; ++i) A[0][i] = 1;
  b[0] = 1;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < k; ++i)
      A[j + 1][i] = mpq_class(static_cast<long>(gens[i][j]));
    A[j + 1][k + j] = 1;
    b[j + 1] = mpq_class(static_cast<long>(v[j]));
  }
  auto x = detail::simplex_phase1(A, b);
  if (!x) return std::nullopt;
  std::vector<mpq_class> lambdas(x->begin(), x->begin() + static_cast<long>(k));
  return finish(std::move(lambdas));
}

ClosureVerdict closure_member(const Polynomial& f,
                              std::span<const Polynomial> gens,
                              ClosureKind kind, const Limits& limits) {
  if (gens.empty()) fail(Errc::invalid_argument, "empty ideal");
  const RingPtr ring = f.ring_ptr();
  ClosureVerdict verdict;
  verdict.kind = kind;

  const bool integers = ring->domain() == Domain::integers;

  switch (kind) {
    case ClosureKind::ideal: {
      if (integers) {
        std::vector<Polynomial> bezout;
        Polynomial g = pid_gcd_bezout(gens, bezout);
        verdict.answer = f.divided_exactly(g).has_value();
        if (verdict.answer)
          verdict.membership = pid_membership_certificate(f, gens, g, bezout);
      } else {
        auto member = ideal_member(f, gens, limits);
        verdict.answer = member.answer;
        if (member.answer) verdict.membership = member.certificate;
      }
      return verdict;
    }
    case ClosureKind::radical: {
      if (integers) {
        std::vector<Polynomial> bezout;
        Polynomial g = pid_gcd_bezout(gens, bezout);
        // f lies in rad((g)) iff every prime of g divides f
        Factorization fz = factor_prime(g, limits);
        bool ok = true;
        unsigned exponent = 1;
        if (f.is_zero()) {
          ok = g.is_zero();
        } else {
          for (const auto& part : fz.factors) {
            auto vf = valuation(f, part.factor);
            if (!vf || *vf == 0) {
              ok = false;
              break;
            }
            exponent = std::max(
                exponent, (part.multiplicity + *vf - 1) / *vf);
          }
        }
        verdict.answer = ok;
        if (ok) {
          verdict.radical_exponent = exponent;
          Polynomial fe = f.pow(exponent);
          Certificate cert = pid_membership_certificate(fe, gens, g, bezout);
          cert.kind = Certificate::Kind::radical;
          cert.exponent = exponent;
          verdict.membership = cert;
        }
      } else {
        auto rad = radical_member(f, gens, limits);
        verdict.answer = rad.answer;
        if (rad.answer) {
          verdict.radical_exponent = rad.exponent;
          verdict.membership = rad.certificate;
        }
      }
      return verdict;
    }
    case ClosureKind::integral:
      break;
  }

  // integral closure: monomial ideals over field polynomial rings first,
  // then the PID fallback where the ideal is integrally closed
  if (!integers && all_monomial(gens)) {
    const std::size_t m = ring->base_count();
    std::vector<std::vector<std::uint32_t>> exponents;
    for (const auto& g : gens) {
      const Monomial& mono = g.leading_term().mono;
      exponents.emplace_back(mono.exponents().begin(),
                             mono.exponents().begin() + static_cast<long>(m));
    }
    verdict.answer = true;
    for (const auto& t : f.terms()) {
      std::vector<std::uint32_t> v(t.mono.exponents().begin(),
                                   t.mono.exponents().begin() +
                                       static_cast<long>(m));
      auto cert = newton_contains(v, exponents);
      if (!cert) {
        verdict.answer = false;
        verdict.polyhedron.clear();
        break;
      }
      verdict.polyhedron.push_back(ClosureVerdict::MonomialWitness{
          Polynomial::monomial(ring, t.mono, Coeff(1)), *std::move(cert)});
    }
    verdict.universally_connected = verdict.answer;
    return verdict;
  }

  if (is_pid_base(*ring)) {
    std::vector<Polynomial> bezout;
    Polynomial g = pid_gcd_bezout(gens, bezout);
    verdict.answer = f.divided_exactly(g).has_value();
    if (verdict.answer)
      verdict.membership = pid_membership_certificate(f, gens, g, bezout);
    verdict.universally_connected = verdict.answer;
    return verdict;
  }

  fail(Errc::unsupported_closure,
       "integral closure is decided only for monomial ideals over field "
       "polynomial rings and for ideals over a PID base");
}

DvrVerdict dvr_check(const ForcingData& data, const Polynomial& p,
                     const Limits& limits) {
  const RingPtr& ring = data.ring;
  if (!is_pid_base(*ring))
    fail(Errc::unsupported_base, "valuation checks need a PID base");
  if (data.f.is_zero() && data.ideal_is_zero())
    fail(Errc::invalid_argument, "f = 0 with I = 0 has no valuation data");
  if (is_irreducible(p, limits) != Irreducibility::yes)
    fail(Errc::invalid_argument,
         p.to_string() + " is not a prime element of the base");

  DvrVerdict verdict;
  std::optional<unsigned> min_v;
  for (const auto& fi : data.ideal) {
    auto v = valuation(fi, p);
    if (!v) continue;  // zero generator
    min_v = min_v ? std::min(*min_v, *v) : *v;
  }
  verdict.min_ideal_valuation = min_v;
  verdict.f_valuation = valuation(data.f, p);
  if (!verdict.f_valuation) {
    verdict.answer = true;  // f = 0 lies in every localized ideal
  } else if (!min_v) {
    verdict.answer = false;  // I = 0 but f != 0
  } else {
    verdict.answer = *min_v <= *verdict.f_valuation;
  }
  return verdict;
}

FractionVerdict fraction_integral(const Polynomial& r, const Polynomial& s) {
  if (s.is_zero()) fail(Errc::division_by_zero, "fraction with denominator 0");
  FractionVerdict verdict;
  auto q = r.divided_exactly(s);
  verdict.integral = q.has_value();
  if (q) verdict.quotient = *std::move(q);
  return verdict;
}

}  // namespace forcing
