#include "forcing/groebner.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "forcing/errors.hpp"

namespace forcing {
namespace {

struct Tracked {
  Polynomial p;
  std::vector<Polynomial> rep;  // p == sum(rep[j] * origin[j])
};

void check_guard(const Polynomial& p, const Limits& limits,
                 unsigned long& steps) {
  if (++steps > limits.max_steps)
    fail(Errc::resource_limit,
         "reduction step limit (" + std::to_string(limits.max_steps) +
             ") exceeded");
  auto deg = p.total_degree();
  if (deg && *deg > limits.max_degree)
    fail(Errc::resource_limit,
         "degree guard (" + std::to_string(limits.max_degree) +
             ") exceeded at degree " + std::to_string(*deg));
}

// Full normal form of `t.p` against `basis`; quotients are accumulated into
// the representation vector via the basis elements' own representations.
Tracked reduce_tracked(Tracked t, const std::vector<Tracked>& basis,
                       const Limits& limits, unsigned long& steps) {
  const RingPtr ring = t.p.ring_ptr();
  Polynomial remainder = Polynomial::zero(ring);
  Polynomial p = std::move(t.p);
  while (!p.is_zero()) {
    bool reduced = false;
    const Term& lt = p.leading_term();
    for (const auto& g : basis) {
      if (g.p.is_zero()) continue;
      const Term& gl = g.p.leading_term();
      if (!gl.mono.divides(lt.mono)) continue;
      Monomial m = lt.mono.div(gl.mono);
      Coeff c = ring->coeff_div(lt.coeff, gl.coeff);
      p = p - g.p.term_multiplied(m, c);
      for (std::size_t j = 0; j < t.rep.size(); ++j)
        t.rep[j] = t.rep[j] - g.rep[j].term_multiplied(m, c);
      check_guard(p, limits, steps);
      reduced = true;
      break;
    }
    if (!reduced) {
      Polynomial head = Polynomial::monomial(ring, lt.mono, lt.coeff);
      remainder = remainder + head;
      p = p - head;
    }
  }
  t.p = std::move(remainder);
  return t;
}

void make_monic(Tracked& t) {
  if (t.p.is_zero()) return;
  Coeff inv = t.p.ring().inverse(t.p.leading_term().coeff);
  t.p = t.p.scaled(inv);
  for (auto& r : t.rep) r = r.scaled(inv);
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t degree;
};

}  // namespace

bool verify_certificate(const Certificate& cert,
                        std::span<const Polynomial> gens,
                        const Polynomial& target) {
  if (cert.cofactors.size() != gens.size()) return false;
  if (gens.empty()) return false;
  Polynomial sum = Polynomial::zero(gens.front().ring_ptr());
  for (std::size_t i = 0; i < gens.size(); ++i)
    sum = sum + cert.cofactors[i] * gens[i];
  switch (cert.kind) {
    case Certificate::Kind::membership:
      return sum == target;
    case Certificate::Kind::unit:
      return sum.is_one();
    case Certificate::Kind::radical:
      return sum == target.pow(cert.exponent);
  }
  return false;
}

GroebnerBasis buchberger(std::span<const Polynomial> gens,
                         const Limits& limits) {
  if (gens.empty()) fail(Errc::invalid_argument, "empty generator list");
  return buchberger(gens, gens.front().ring().order(), limits);
}

GroebnerBasis buchberger(std::span<const Polynomial> gens,
                         const MonomialOrder& order, const Limits& limits) {
  if (gens.empty()) fail(Errc::invalid_argument, "empty generator list");
  RingPtr ring = gens.front().ring_ptr();
  if (!ring->is_field())
    fail(Errc::unsupported_base,
         "basis computation needs field coefficients (Z is handled by the "
         "PID paths)");
  if (!(ring->order() == order)) ring = ring->with_order(order);
  for (const auto& g : gens)
    if (!g.ring().same_structure(*ring))
      fail(Errc::ring_mismatch, "generators live in different rings");

  const std::size_t n = gens.size();
  unsigned long steps = 0;

  std::vector<Tracked> basis;
  for (std::size_t i = 0; i < n; ++i) {
    Tracked t;
    t.p = gens[i].to_ring(ring);
    t.rep.assign(n, Polynomial::zero(ring));
    t.rep[i] = Polynomial::constant(ring, Coeff(1));
    if (t.p.is_zero()) continue;
    make_monic(t);
    basis.push_back(std::move(t));
  }

  auto push_pairs = [&](std::vector<Pair>& pairs, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i) {
      const Monomial& a = basis[i].p.leading_term().mono;
      const Monomial& b = basis[upto].p.leading_term().mono;
      // Buchberger's coprime criterion
      if (a.gcd(b).is_one()) continue;
      Pair pr{i, upto, a.lcm(b), 0};
      pr.degree = pr.lcm.total_degree();
      pairs.push_back(std::move(pr));
    }
  };

  std::vector<Pair> pairs;
  for (std::size_t k = 1; k < basis.size(); ++k) push_pairs(pairs, k);

  while (!pairs.empty()) {
    // normal strategy: minimal lcm degree, ties by order then by indices
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const Pair& a = pairs[k];
      const Pair& b = pairs[best];
      if (a.degree != b.degree) {
        if (a.degree < b.degree) best = k;
        continue;
      }
      int c = compare(a.lcm, b.lcm, ring->order());
      if (c != 0) {
        if (c < 0) best = k;
        continue;
      }
      if (std::tie(a.i, a.j) < std::tie(b.i, b.j)) best = k;
    }
    Pair pr = std::move(pairs[best]);
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

    const Tracked& f = basis[pr.i];
    const Tracked& g = basis[pr.j];
    Monomial mf = pr.lcm.div(f.p.leading_term().mono);
    Monomial mg = pr.lcm.div(g.p.leading_term().mono);
    Tracked s;
    s.p = f.p.term_multiplied(mf, Coeff(1)) - g.p.term_multiplied(mg, Coeff(1));
    s.rep.assign(n, Polynomial::zero(ring));
    for (std::size_t j = 0; j < n; ++j)
      s.rep[j] = f.rep[j].term_multiplied(mf, Coeff(1)) -
                 g.rep[j].term_multiplied(mg, Coeff(1));
    check_guard(s.p, limits, steps);
    s = reduce_tracked(std::move(s), basis, limits, steps);
    if (s.p.is_zero()) continue;
    make_monic(s);
    basis.push_back(std::move(s));
    push_pairs(pairs, basis.size() - 1);
  }

  // minimalize: drop elements whose leading monomial is divisible by another
  std::vector<Tracked> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Monomial& mi = basis[i].p.leading_term().mono;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& mj = basis[j].p.leading_term().mono;
      if (!mj.divides(mi)) continue;
      // on equal leading monomials keep the earliest
      if (mj == mi && j > i) continue;
      redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // tail-reduce each element against the others
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Tracked> others;
      others.reserve(minimal.size() - 1);
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Tracked red = reduce_tracked(minimal[i], others, limits, steps);
      if (red.p.is_zero()) {
        minimal.erase(minimal.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (!(red.p == minimal[i].p)) changed = true;
      make_monic(red);
      minimal[i] = std::move(red);
    }
  }

  std::sort(minimal.begin(), minimal.end(), [&](const Tracked& a, const Tracked& b) {
    return compare(a.p.leading_term().mono, b.p.leading_term().mono,
                   ring->order()) > 0;
  });

  GroebnerBasis result;
  result.ring_ = ring;
  result.origin_.assign(gens.begin(), gens.end());
  for (auto& t : minimal) {
    result.gens_.push_back(std::move(t.p));
    result.reps_.push_back(std::move(t.rep));
  }
  return result;
}

GroebnerBasis::Reduction GroebnerBasis::reduce(const Polynomial& f,
                                               const Limits& limits) const {
  unsigned long steps = 0;
  std::vector<Tracked> basis;
  basis.reserve(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    Tracked t;
    t.p = gens_[i];
    t.rep.assign(gens_.size(), Polynomial::zero(ring_));
    t.rep[i] = Polynomial::constant(ring_, Coeff(1));
    basis.push_back(std::move(t));
  }
  Tracked target;
  target.p = f.to_ring(ring_);
  target.rep.assign(gens_.size(), Polynomial::zero(ring_));
  Tracked out = reduce_tracked(std::move(target), basis, limits, steps);
  Reduction red;
  red.remainder = std::move(out.p);
  red.quotients.reserve(gens_.size());
  for (auto& q : out.rep) red.quotients.push_back(-q);
  return red;
}

std::vector<Polynomial> GroebnerBasis::express(const Polynomial& f,
                                               const Limits& limits) const {
  Reduction red = reduce(f, limits);
  if (!red.remainder.is_zero())
    fail(Errc::invalid_argument, "polynomial is not in the ideal");
  std::vector<Polynomial> cof(origin_.size(), Polynomial::zero(ring_));
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (red.quotients[i].is_zero()) continue;
    for (std::size_t j = 0; j < origin_.size(); ++j)
      cof[j] = cof[j] + red.quotients[i] * reps_[i][j];
  }
  // express the cofactors in the original ring/order
  const RingPtr& home = origin_.empty() ? ring_ : origin_.front().ring_ptr();
  for (auto& c : cof) c = c.to_ring(home);
  return cof;
}

MembershipVerdict ideal_member(const Polynomial& f,
                               std::span<const Polynomial> gens,
                               const Limits& limits) {
  GroebnerBasis basis = buchberger(gens, limits);
  return ideal_member(f, basis, limits);
}

MembershipVerdict ideal_member(const Polynomial& f, const GroebnerBasis& basis,
                               const Limits& limits) {
  MembershipVerdict verdict;
  auto red = basis.reduce(f, limits);
  verdict.answer = red.remainder.is_zero();
  if (verdict.answer) {
    verdict.certificate.kind = Certificate::Kind::membership;
    verdict.certificate.cofactors = basis.express(f, limits);
  }
  return verdict;
}

MembershipVerdict is_unit_ideal(std::span<const Polynomial> gens,
                                const Limits& limits) {
  if (gens.empty()) fail(Errc::invalid_argument, "empty generator list");
  GroebnerBasis basis = buchberger(gens, limits);
  MembershipVerdict verdict;
  verdict.answer = basis.is_unit_basis();
  if (verdict.answer) {
    verdict.certificate.kind = Certificate::Kind::unit;
    verdict.certificate.cofactors =
        basis.express(Polynomial::constant(gens.front().ring_ptr(), Coeff(1)),
                      limits);
  }
  return verdict;
}

std::vector<Polynomial> eliminate(std::span<const Polynomial> gens,
                                  std::span<const std::size_t> drop_vars,
                                  const Limits& limits) {
  if (gens.empty()) fail(Errc::invalid_argument, "empty generator list");
  const RingPtr ring = gens.front().ring_ptr();
  const std::size_t n = ring->arity();
  std::set<std::size_t> drop(drop_vars.begin(), drop_vars.end());
  if (drop.empty()) return {gens.begin(), gens.end()};
  const std::size_t k = *drop.begin();
  if (drop.size() != n - k || *drop.rbegin() != n - 1)
    fail(Errc::invalid_argument,
         "drop_vars must form a suffix block of the variable order");

  RingPtr elim = ring->with_order({MonomialOrder::Kind::block_elim, k});
  std::vector<Polynomial> moved;
  moved.reserve(gens.size());
  for (const auto& g : gens) moved.push_back(g.to_ring(elim));
  GroebnerBasis basis = buchberger(moved, elim->order(), limits);
  std::vector<Polynomial> out;
  for (const auto& g : basis.generators()) {
    if (g.uses_any_variable(k, n)) continue;
    out.push_back(g.to_ring(ring));
  }
  return out;
}

RadicalVerdict radical_member(const Polynomial& f,
                              std::span<const Polynomial> gens,
                              const Limits& limits) {
  if (gens.empty()) fail(Errc::invalid_argument, "empty generator list");
  const RingPtr ring = gens.front().ring_ptr();
  RadicalVerdict verdict;
  if (f.is_zero()) {  // 0 lies in every radical: 0^1 = sum of zero cofactors
    verdict.answer = true;
    verdict.exponent = 1;
    verdict.certificate.kind = Certificate::Kind::radical;
    verdict.certificate.exponent = 1;
    verdict.certificate.cofactors.assign(gens.size(), Polynomial::zero(ring));
    return verdict;
  }

  std::string fresh = "w";
  while (ring->find_variable(fresh)) fresh += "_";
  RingPtr ext = ring->with_extra_variable(fresh);
  const std::size_t wi = ext->arity() - 1;

  std::vector<Polynomial> ext_gens;
  ext_gens.reserve(gens.size() + 1);
  for (const auto& g : gens) ext_gens.push_back(g.to_ring(ext));
  Polynomial one = Polynomial::constant(ext, Coeff(1));
  Polynomial wf = Polynomial::variable(ext, wi) * f.to_ring(ext);
  ext_gens.push_back(one - wf);

  auto unit = is_unit_ideal(ext_gens, limits);
  if (!unit.answer) return verdict;  // answer false, empty certificate

  // substitute W = 1/f and clear denominators: with cofactors c_i for the
  // g_i and e = max deg_W(c_i), f^e = sum_i (sum_k coeffW_k(c_i) f^(e-k)) g_i
  unsigned e = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    e = std::max(e, static_cast<unsigned>(unit.certificate.cofactors[i]
                                              .to_ring(ext)
                                              .degree_in(wi)));
  GroebnerBasis basis = buchberger(gens, limits);
  std::vector<Polynomial> cof(gens.size(), Polynomial::zero(ring));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto coeffs = unit.certificate.cofactors[i].to_ring(ext).coefficients_in(wi);
    Polynomial acc = Polynomial::zero(ring);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      acc = acc + coeffs[k].to_ring(ring) * f.pow(e - k);
    }
    cof[i] = std::move(acc);
  }

  // minimize the exponent; the difference is at most a few steps at desk scale
  while (e > 0) {
    auto member = ideal_member(f.pow(e - 1), basis, limits);
    if (!member.answer) break;
    --e;
    cof = member.certificate.cofactors;
  }

  verdict.answer = true;
  verdict.exponent = e;
  verdict.certificate.kind = Certificate::Kind::radical;
  verdict.certificate.exponent = e;
  verdict.certificate.cofactors = std::move(cof);
  return verdict;
}

}  // namespace forcing
