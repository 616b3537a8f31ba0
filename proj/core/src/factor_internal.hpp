#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace forcing::detail {

// Dense univariate arithmetic kernels used by the factorization routines.
// Coefficients little-endian (index = degree), normalized (no leading zeros).

// --- F_p[x], p an odd or even word-sized prime ---
struct FpPoly {
  std::vector<std::uint64_t> c;
};

struct FpCtx {
  std::uint64_t p;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
};

int fp_deg(const FpPoly& f);
void fp_trim(FpPoly& f);
bool fp_is_zero(const FpPoly& f);
FpPoly fp_make_monic(const FpCtx& F, FpPoly f);
FpPoly fp_mul(const FpCtx& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_add(const FpCtx& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpCtx& F, const FpPoly& a, const FpPoly& b);
// division with remainder; b must be nonzero
void fp_divmod(const FpCtx& F, const FpPoly& a, const FpPoly& b, FpPoly& q,
               FpPoly& r);
FpPoly fp_mod(const FpCtx& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_gcd(const FpCtx& F, FpPoly a, FpPoly b);  // monic
FpPoly fp_powmod(const FpCtx& F, FpPoly base, mpz_class e, const FpPoly& mod);
FpPoly fp_derivative(const FpCtx& F, const FpPoly& f);

// full irreducible factorization of a monic input (squarefree-distinct
// degree-equal degree chain); deterministic for fixed input
std::vector<std::pair<FpPoly, unsigned>> fp_factor(const FpCtx& F, FpPoly f);
bool fp_is_irreducible(const FpCtx& F, const FpPoly& f);

// --- Z[x] ---
struct ZPoly {
  std::vector<mpz_class> c;
};

int z_deg(const ZPoly& f);
void z_trim(ZPoly& f);
ZPoly z_mul(const ZPoly& a, const ZPoly& b);
ZPoly z_sub(const ZPoly& a, const ZPoly& b);
mpz_class z_content(const ZPoly& f);  // non-negative
// exact division test: returns true and sets q when b divides a over Z
bool z_try_divide(const ZPoly& a, const ZPoly& b, ZPoly& q);

// Zassenhaus factorization of a primitive squarefree polynomial with
// positive leading coefficient; returns irreducible primitive factors.
std::vector<ZPoly> z_factor_squarefree(const ZPoly& f, unsigned degree_cap);

}  // namespace forcing::detail
