#pragma once

#include <random>
#include <string>
#include <vector>

#include "forcing/factor.hpp"
#include "forcing/parse.hpp"
#include "forcing/polynomial.hpp"
#include "forcing/ring.hpp"

namespace testutil {

using forcing::Coeff;
using forcing::Monomial;
using forcing::Polynomial;
using forcing::RingPtr;
using forcing::Term;

inline RingPtr ring_of(const std::string& text) {
  return forcing::parse_ring(text);
}

inline Polynomial pp(const std::string& text, const RingPtr& ring) {
  return forcing::parse_poly(text, ring);
}

inline std::vector<Polynomial> pplist(const std::vector<std::string>& texts,
                                      const RingPtr& ring) {
  std::vector<Polynomial> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(pp(t, ring));
  return out;
}

inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring,
                              unsigned max_degree, unsigned max_terms,
                              long coeff_bound, bool base_only = true) {
  std::uniform_int_distribution<unsigned> nterms(0, max_terms);
  std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
  const std::size_t hi = base_only ? ring->base_count() : ring->arity();
  std::vector<Term> terms;
  unsigned n = nterms(rng);
  for (unsigned t = 0; t < n; ++t) {
    Monomial m(ring->arity());
    unsigned remaining = max_degree;
    for (std::size_t v = 0; v < hi; ++v) {
      std::uniform_int_distribution<unsigned> e(0, remaining);
      m[v] = e(rng);
      remaining -= m[v];
    }
    long c = coeff(rng);
    if (c == 0) continue;
    terms.push_back(Term{std::move(m), Coeff(c)});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial random_nonzero_poly(std::mt19937_64& rng, const RingPtr& ring,
                                      unsigned max_degree, unsigned max_terms,
                                      long coeff_bound, bool base_only = true) {
  while (true) {
    Polynomial p =
        random_poly(rng, ring, max_degree, max_terms, coeff_bound, base_only);
    if (!p.is_zero()) return p;
  }
}

}  // namespace testutil
