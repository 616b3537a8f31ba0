#include <algorithm>
#include <random>

#include "factor_internal.hpp"
#include "forcing/errors.hpp"

namespace forcing::detail {

// ---------------------------------------------------------------------------
// F_p[x]
// ---------------------------------------------------------------------------

std::uint64_t FpCtx::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FpCtx::inv(std::uint64_t a) const { return pow(a % p, p - 2); }

int fp_deg(const FpPoly& f) { return static_cast<int>(f.c.size()) - 1; }

void fp_trim(FpPoly& f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

bool fp_is_zero(const FpPoly& f) { return f.c.empty(); }

FpPoly fp_make_monic(const FpCtx& F, FpPoly f) {
  fp_trim(f);
  if (f.c.empty() || f.c.back() == 1) return f;
  std::uint64_t s = F.inv(f.c.back());
  for (auto& x : f.c) x = F.mul(x, s);
  return f;
}

FpPoly fp_add(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = F.add(x, y);
  }
  fp_trim(r);
  return r;
}

FpPoly fp_sub(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = F.sub(x, y);
  }
  fp_trim(r);
  return r;
}

FpPoly fp_mul(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  FpPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  fp_trim(r);
  return r;
}

void fp_divmod(const FpCtx& F, const FpPoly& a, const FpPoly& b, FpPoly& q,
               FpPoly& r) {
  if (fp_is_zero(b)) fail(Errc::division_by_zero, "division by zero poly");
  r = a;
  fp_trim(r);
  q.c.clear();
  int db = fp_deg(b);
  std::uint64_t inv_lead = F.inv(b.c.back());
  if (fp_deg(r) >= db)
    q.c.assign(static_cast<std::size_t>(fp_deg(r) - db) + 1, 0);
  while (fp_deg(r) >= db) {
    int shift = fp_deg(r) - db;
    std::uint64_t coef = F.mul(r.c.back(), inv_lead);
    q.c[static_cast<std::size_t>(shift)] = coef;
    for (int i = 0; i <= db; ++i) {
      auto idx = static_cast<std::size_t>(i + shift);
      r.c[idx] = F.sub(r.c[idx], F.mul(coef, b.c[static_cast<std::size_t>(i)]));
    }
    fp_trim(r);
  }
  fp_trim(q);
}

FpPoly fp_mod(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  fp_divmod(F, a, b, q, r);
  return r;
}

FpPoly fp_gcd(const FpCtx& F, FpPoly a, FpPoly b) {
  fp_trim(a);
  fp_trim(b);
  while (!fp_is_zero(b)) {
    FpPoly r = fp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_make_monic(F, std::move(a));
}

FpPoly fp_powmod(const FpCtx& F, FpPoly base, mpz_class e, const FpPoly& mod) {
  FpPoly result;
  result.c = {1};
  base = fp_mod(F, base, mod);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t()))
      result = fp_mod(F, fp_mul(F, result, base), mod);
    e >>= 1;
    if (e > 0) base = fp_mod(F, fp_mul(F, base, base), mod);
  }
  return result;
}

FpPoly fp_derivative(const FpCtx& F, const FpPoly& f) {
  FpPoly r;
  if (f.c.size() <= 1) return r;
  r.c.resize(f.c.size() - 1);
  for (std::size_t i = 1; i < f.c.size(); ++i)
    r.c[i - 1] = F.mul(f.c[i], i % F.p);
  fp_trim(r);
  return r;
}

namespace {

// p-th root of f when f = g(x^p); Frobenius fixes the prime field, so only
// the exponents shrink.
FpPoly fp_pth_root(const FpCtx& F, const FpPoly& f) {
  FpPoly r;
  r.c.resize(f.c.size() / F.p + 1, 0);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    r.c[i / F.p] = f.c[i];
  }
  fp_trim(r);
  return r;
}

// squarefree decomposition of a monic polynomial (Musser, char p variant)
std::vector<std::pair<FpPoly, unsigned>> fp_squarefree(const FpCtx& F,
                                                       FpPoly f) {
  std::vector<std::pair<FpPoly, unsigned>> parts;
  if (fp_deg(f) < 1) return parts;
  FpPoly fd = fp_derivative(F, f);
  if (fp_is_zero(fd)) {
    for (auto& [part, mult] : fp_squarefree(F, fp_pth_root(F, f)))
      parts.emplace_back(std::move(part), mult * static_cast<unsigned>(F.p));
    return parts;
  }
  FpPoly g = fp_gcd(F, f, fd);
  FpPoly w, rem;
  fp_divmod(F, f, g, w, rem);
  unsigned i = 1;
  while (fp_deg(w) > 0) {
    FpPoly y = fp_gcd(F, w, g);
    FpPoly z, r;
    fp_divmod(F, w, y, z, r);
    if (fp_deg(z) > 0) parts.emplace_back(fp_make_monic(F, z), i);
    FpPoly g2, r2;
    fp_divmod(F, g, y, g2, r2);
    g = std::move(g2);
    w = std::move(y);
    ++i;
  }
  if (fp_deg(g) > 0) {
    for (auto& [part, mult] : fp_squarefree(F, fp_pth_root(F, g)))
      parts.emplace_back(std::move(part), mult * static_cast<unsigned>(F.p));
  }
  return parts;
}

// distinct-degree decomposition of a monic squarefree polynomial
std::vector<std::pair<FpPoly, unsigned>> fp_distinct_degree(const FpCtx& F,
                                                            FpPoly f) {
  std::vector<std::pair<FpPoly, unsigned>> out;  // (product, factor degree)
  FpPoly x;
  x.c = {0, 1};
  FpPoly h = fp_mod(F, x, f);
  unsigned d = 0;
  while (fp_deg(f) > 0) {
    ++d;
    if (2 * d > static_cast<unsigned>(fp_deg(f))) {
      out.emplace_back(std::move(f), static_cast<unsigned>(fp_deg(f)));
      break;
    }
    h = fp_powmod(F, h, mpz_class(static_cast<unsigned long>(F.p)), f);
    FpPoly g = fp_gcd(F, fp_sub(F, h, x), f);
    if (fp_deg(g) > 0) {
      out.emplace_back(g, d);
      FpPoly q, r;
      fp_divmod(F, f, g, q, r);
      f = std::move(q);
      h = fp_mod(F, h, f);
    }
  }
  return out;
}

// Cantor-Zassenhaus equal-degree splitting of a product of irreducibles of
// degree d; for p = 2 the trace map replaces the power map.
void fp_equal_degree(const FpCtx& F, FpPoly f, unsigned d,
                     std::vector<FpPoly>& out, std::mt19937_64& rng) {
  int n = fp_deg(f);
  if (n <= 0) return;
  if (n == static_cast<int>(d)) {
    out.push_back(fp_make_monic(F, std::move(f)));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, F.p - 1);
  while (true) {
    FpPoly a;
    a.c.resize(static_cast<std::size_t>(n), 0);
    for (auto& c : a.c) c = dist(rng);
    fp_trim(a);
    if (fp_deg(a) < 1) continue;
    FpPoly g = fp_gcd(F, a, f);
    FpPoly split;
    if (fp_deg(g) > 0 && fp_deg(g) < n) {
      split = std::move(g);
    } else {
      FpPoly b;
      if (F.p == 2) {
        b = a;
        FpPoly t = a;
        for (unsigned i = 1; i < d; ++i) {
          t = fp_mod(F, fp_mul(F, t, t), f);
          b = fp_add(F, b, t);
        }
      } else {
        mpz_class e(static_cast<unsigned long>(F.p));
        mpz_pow_ui(e.get_mpz_t(), e.get_mpz_t(), d);
        e = (e - 1) / 2;
        b = fp_powmod(F, a, e, f);
        if (b.c.empty()) b.c.resize(1, 0);
        b.c[0] = F.sub(b.c[0], 1);
        fp_trim(b);
      }
      FpPoly g2 = fp_gcd(F, b, f);
      if (fp_deg(g2) <= 0 || fp_deg(g2) >= n) continue;
      split = std::move(g2);
    }
    FpPoly q, r;
    fp_divmod(F, f, split, q, r);
    fp_equal_degree(F, std::move(split), d, out, rng);
    fp_equal_degree(F, std::move(q), d, out, rng);
    return;
  }
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> fp_factor(const FpCtx& F, FpPoly f) {
  std::vector<std::pair<FpPoly, unsigned>> result;
  f = fp_make_monic(F, std::move(f));
  if (fp_deg(f) < 1) return result;
  std::mt19937_64 rng(0x5eed0000ULL + F.p * 1000003ULL + f.c.size());
  for (auto& [part, mult] : fp_squarefree(F, std::move(f))) {
    for (auto& [blob, degree] : fp_distinct_degree(F, std::move(part))) {
      std::vector<FpPoly> irreducibles;
      fp_equal_degree(F, std::move(blob), degree, irreducibles, rng);
      for (auto& irr : irreducibles) result.emplace_back(std::move(irr), mult);
    }
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.c.size() != b.first.c.size())
      return a.first.c.size() < b.first.c.size();
    return std::lexicographical_compare(a.first.c.begin(), a.first.c.end(),
                                        b.first.c.begin(), b.first.c.end());
  });
  return result;
}

bool fp_is_irreducible(const FpCtx& F, const FpPoly& f) {
  if (fp_deg(f) < 1) return false;
  auto parts = fp_factor(F, f);
  return parts.size() == 1 && parts[0].second == 1;
}

// ---------------------------------------------------------------------------
// Z[x]
// ---------------------------------------------------------------------------

int z_deg(const ZPoly& f) { return static_cast<int>(f.c.size()) - 1; }

void z_trim(ZPoly& f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  ZPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  z_trim(r);
  return r;
}

ZPoly z_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), mpz_class(0));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] = a.c[i];
    if (i < b.c.size()) r.c[i] += b.c[i];
  }
  z_trim(r);
  return r;
}

ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), mpz_class(0));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] = a.c[i];
    if (i < b.c.size()) r.c[i] -= b.c[i];
  }
  z_trim(r);
  return r;
}

mpz_class z_content(const ZPoly& f) {
  mpz_class g(0);
  for (const auto& c : f.c)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

bool z_try_divide(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  q.c.clear();
  if (b.c.empty()) return false;
  ZPoly r = a;
  z_trim(r);
  if (r.c.empty()) return true;
  int db = z_deg(b);
  const mpz_class& lead = b.c.back();
  if (z_deg(r) < db) return false;
  q.c.assign(static_cast<std::size_t>(z_deg(r) - db) + 1, mpz_class(0));
  while (z_deg(r) >= db) {
    if (!mpz_divisible_p(r.c.back().get_mpz_t(), lead.get_mpz_t())) return false;
    mpz_class coef = r.c.back() / lead;
    int shift = z_deg(r) - db;
    q.c[static_cast<std::size_t>(shift)] = coef;
    for (int i = 0; i <= db; ++i)
      r.c[static_cast<std::size_t>(i + shift)] -=
          coef * b.c[static_cast<std::size_t>(i)];
    z_trim(r);
    if (r.c.empty()) return true;
  }
  return false;
}

namespace {

ZPoly mod_reduce(ZPoly f, const mpz_class& m) {
  for (auto& c : f.c) {
    c %= m;
    if (c < 0) c += m;
  }
  z_trim(f);
  return f;
}

ZPoly mod_mul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  return mod_reduce(z_mul(a, b), m);
}

// division by a monic divisor in (Z/m)[x]
void mod_divmod_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m,
                      ZPoly& q, ZPoly& r) {
  r = mod_reduce(a, m);
  q.c.clear();
  int db = z_deg(b);
  if (z_deg(r) >= db)
    q.c.assign(static_cast<std::size_t>(z_deg(r) - db) + 1, mpz_class(0));
  while (z_deg(r) >= db) {
    mpz_class coef = r.c.back();
    int shift = z_deg(r) - db;
    q.c[static_cast<std::size_t>(shift)] = coef;
    for (int i = 0; i <= db; ++i) {
      auto idx = static_cast<std::size_t>(i + shift);
      r.c[idx] = (r.c[idx] - coef * b.c[static_cast<std::size_t>(i)]) % m;
      if (r.c[idx] < 0) r.c[idx] += m;
    }
    z_trim(r);
  }
  z_trim(q);
}

FpPoly z_to_fp(const FpCtx& F, const ZPoly& f) {
  FpPoly r;
  r.c.resize(f.c.size());
  mpz_class p(static_cast<unsigned long>(F.p));
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    mpz_class v = f.c[i] % p;
    if (v < 0) v += p;
    r.c[i] = v.get_ui();
  }
  fp_trim(r);
  return r;
}

ZPoly fp_to_z(const FpPoly& f) {
  ZPoly r;
  r.c.reserve(f.c.size());
  for (auto c : f.c) r.c.emplace_back(static_cast<unsigned long>(c));
  return r;
}

ZPoly z_symmetric(ZPoly f, const mpz_class& m) {
  for (auto& c : f.c) {
    c %= m;
    if (c < 0) c += m;
    if (2 * c > m) c -= m;
  }
  z_trim(f);
  return f;
}

// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m),
// h monic, to the same data mod m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t,
                 const mpz_class& m) {
  const mpz_class m2 = m * m;
  ZPoly e = mod_reduce(z_sub(f, z_mul(g, h)), m2);
  ZPoly q, r;
  mod_divmod_monic(mod_mul(s, e, m2), h, m2, q, r);
  ZPoly g_new = mod_reduce(z_add(g, z_add(mod_mul(t, e, m2), z_mul(q, g))), m2);
  ZPoly h_new = mod_reduce(z_add(h, r), m2);

  ZPoly one;
  one.c = {mpz_class(1)};
  ZPoly b = mod_reduce(
      z_sub(z_add(z_mul(s, g_new), z_mul(t, h_new)), one), m2);
  ZPoly c, d;
  mod_divmod_monic(mod_mul(s, b, m2), h_new, m2, c, d);
  ZPoly s_new = mod_reduce(z_sub(s, d), m2);
  ZPoly t_new =
      mod_reduce(z_sub(t, z_add(mod_mul(t, b, m2), z_mul(c, g_new))), m2);

  g = std::move(g_new);
  h = std::move(h_new);
  s = std::move(s_new);
  t = std::move(t_new);
}

// extended Euclid over F_p: s*a + t*b = 1 for coprime a, b
void fp_bezout(const FpCtx& F, const FpPoly& a, const FpPoly& b, FpPoly& s,
               FpPoly& t) {
  FpPoly r0 = a, r1 = b;
  FpPoly s0{{1}}, s1{}, t0{}, t1{{1}};
  fp_trim(r0);
  fp_trim(r1);
  while (!fp_is_zero(r1)) {
    FpPoly q, r;
    fp_divmod(F, r0, r1, q, r);
    FpPoly s2 = fp_sub(F, s0, fp_mul(F, q, s1));
    FpPoly t2 = fp_sub(F, t0, fp_mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 = gcd, a constant for coprime inputs; scale to make the combination 1
  if (fp_deg(r0) != 0)
    fail(Errc::invalid_argument, "inputs are not coprime mod p");
  std::uint64_t inv = F.inv(r0.c[0]);
  for (auto& c : s0.c) c = F.mul(c, inv);
  for (auto& c : t0.c) c = F.mul(c, inv);
  s = std::move(s0);
  t = std::move(t0);
}

// Lifts target = product(parts) (mod p) to mod p^(2^j) >= bound; parts are
// monic mod p except possibly the first. Appends the lifted parts to `out`.
void hensel_tree(const FpCtx& F, const ZPoly& target,
                 std::vector<FpPoly> parts, const mpz_class& bound,
                 std::vector<ZPoly>& out) {
  if (parts.size() == 1) {
    // reduce the lifted node symmetrically only at recombination time
    out.push_back(target);
    return;
  }
  std::size_t half = parts.size() / 2;
  FpPoly left_p{{1}}, right_p{{1}};
  for (std::size_t i = 0; i < half; ++i) left_p = fp_mul(F, left_p, parts[i]);
  for (std::size_t i = half; i < parts.size(); ++i)
    right_p = fp_mul(F, right_p, parts[i]);

  FpPoly s_p, t_p;
  fp_bezout(F, left_p, right_p, s_p, t_p);

  ZPoly g = fp_to_z(left_p);
  ZPoly h = fp_to_z(right_p);
  ZPoly s = fp_to_z(s_p);
  ZPoly t = fp_to_z(t_p);
  mpz_class m(static_cast<unsigned long>(F.p));
  while (m < bound) {
    hensel_step(target, g, h, s, t, m);
    m = m * m;
  }
  hensel_tree(F, g, {parts.begin(), parts.begin() + static_cast<long>(half)},
              bound, out);
  hensel_tree(F, h, {parts.begin() + static_cast<long>(half), parts.end()},
              bound, out);
}

mpz_class mignotte_bound(const ZPoly& f) {
  mpz_class max_abs(0);
  for (const auto& c : f.c) {
    mpz_class a = abs(c);
    if (a > max_abs) max_abs = a;
  }
  mpz_class b = max_abs * (z_deg(f) + 1);
  mpz_class two_n(1);
  mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(),
               static_cast<unsigned long>(z_deg(f) + 1));
  return b * two_n;
}

ZPoly z_primitive(ZPoly f) {
  if (f.c.empty()) return f;
  mpz_class c = z_content(f);
  if (f.c.back() < 0) c = -c;
  if (c == 1) return f;
  for (auto& x : f.c) x /= c;
  return f;
}

}  // namespace

std::vector<ZPoly> z_factor_squarefree(const ZPoly& input, unsigned degree_cap) {
  ZPoly f = input;
  z_trim(f);
  if (z_deg(f) > static_cast<int>(degree_cap))
    fail(Errc::unsupported_range,
         "univariate factorization degree " + std::to_string(z_deg(f)) +
             " exceeds the configured bound " + std::to_string(degree_cap));
  std::vector<ZPoly> result;
  if (z_deg(f) < 1) return result;
  if (z_deg(f) == 1) {
    result.push_back(z_primitive(std::move(f)));
    return result;
  }

  // good prime: does not divide the leading coefficient, keeps f squarefree
  const unsigned long candidates[] = {3,  5,  7,  11, 13, 17, 19, 23, 29,
                                      31, 37, 41, 43, 47, 53, 59, 61, 67,
                                      71, 73, 79, 83, 89, 97, 101, 103};
  FpCtx F{0};
  FpPoly fbar;
  bool found = false;
  for (unsigned long p : candidates) {
    if (mpz_divisible_ui_p(f.c.back().get_mpz_t(), p)) continue;
    FpCtx cand{p};
    FpPoly red = z_to_fp(cand, f);
    if (fp_deg(red) != z_deg(f)) continue;
    if (fp_deg(fp_gcd(cand, red, fp_derivative(cand, red))) != 0) continue;
    F = cand;
    fbar = std::move(red);
    found = true;
    break;
  }
  if (!found)
    fail(Errc::unsupported_range,
         "no good prime found for Zassenhaus factorization");

  auto modular = fp_factor(F, fp_make_monic(F, fbar));
  if (modular.size() == 1) {
    result.push_back(z_primitive(std::move(f)));
    return result;
  }

  mpz_class lc = f.c.back();
  mpz_class bound = 2 * abs(lc) * mignotte_bound(f) + 1;

  // lift: target f against (lc * g1, g2, ..., gr) then rescale to monic
  std::vector<FpPoly> parts;
  parts.reserve(modular.size());
  for (auto& [g, mult] : modular) parts.push_back(g);
  {
    mpz_class lcp = lc % static_cast<unsigned long>(F.p);
    if (lcp < 0) lcp += static_cast<unsigned long>(F.p);
    std::uint64_t u = lcp.get_ui();
    for (auto& c : parts[0].c) c = F.mul(c, u);
  }
  mpz_class modulus(static_cast<unsigned long>(F.p));
  while (modulus < bound) modulus = modulus * modulus;

  std::vector<ZPoly> lifted;
  hensel_tree(F, f, parts, bound, lifted);

  // make every lifted factor monic mod the final modulus
  for (auto& g : lifted) {
    g = mod_reduce(std::move(g), modulus);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), g.c.back().get_mpz_t(),
                   modulus.get_mpz_t()) == 0)
      fail(Errc::invalid_argument, "hensel lift produced a non-unit lead");
    for (auto& c : g.c) {
      c = (c * inv) % modulus;
      if (c < 0) c += modulus;
    }
  }

  // subset recombination
  std::vector<std::size_t> live(lifted.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  ZPoly remaining = f;

  auto try_subsets = [&](std::size_t size) -> bool {
    if (size == 0 || size > live.size()) return false;
    std::vector<std::size_t> pick(size);
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      for (std::size_t i = 0; i < size; ++i) pick[i] = live[idx[i]];
      ZPoly cand;
      cand.c = {remaining.c.back()};
      for (std::size_t i : pick) cand = mod_mul(cand, lifted[i], modulus);
      cand = z_symmetric(std::move(cand), modulus);
      cand = z_primitive(std::move(cand));
      ZPoly q;
      if (!cand.c.empty() && z_try_divide(remaining, cand, q)) {
        result.push_back(cand);
        remaining = z_primitive(std::move(q));
        std::vector<std::size_t> next;
        for (std::size_t v : live)
          if (std::find(pick.begin(), pick.end(), v) == pick.end())
            next.push_back(v);
        live = std::move(next);
        return true;
      }
      // next combination of indices into `live`
      std::size_t k = size;
      bool advanced = false;
      while (k > 0) {
        --k;
        if (idx[k] + (size - k) < live.size()) {
          ++idx[k];
          for (std::size_t j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) return false;
    }
  };

  std::size_t size = 1;
  while (2 * size <= live.size()) {
    if (try_subsets(size))
      size = 1;  // smaller subsets may divide the updated remainder
    else
      ++size;
  }
  if (z_deg(remaining) > 0) result.push_back(z_primitive(std::move(remaining)));
  return result;
}

}  // namespace forcing::detail
