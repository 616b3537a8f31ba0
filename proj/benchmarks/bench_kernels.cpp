#include <benchmark/benchmark.h>

#include <random>

#include "forcing/closure.hpp"
#include "forcing/components.hpp"
#include "forcing/factor.hpp"
#include "forcing/groebner.hpp"
#include "forcing/parse.hpp"

using namespace forcing;

namespace {

Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring,
                       unsigned max_degree, unsigned terms) {
  std::uniform_int_distribution<long> coeff(-50, 50);
  std::vector<Term> out;
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m(ring->arity());
    unsigned remaining = max_degree;
    for (std::size_t v = 0; v < ring->arity(); ++v) {
      std::uniform_int_distribution<unsigned> e(0, remaining);
      m[v] = e(rng);
      remaining -= m[v];
    }
    out.push_back(Term{std::move(m), Coeff(coeff(rng))});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

void BM_poly_mul(benchmark::State& state) {
  auto ring = parse_ring("Q[x,y,z]");
  std::mt19937_64 rng(1);
  auto a = random_poly(rng, ring, 8, static_cast<unsigned>(state.range(0)));
  auto b = random_poly(rng, ring, 8, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_poly_mul)->Arg(10)->Arg(30)->Arg(60);

void BM_poly_gcd_bivariate(benchmark::State& state) {
  auto ring = parse_ring("Q[x,y]");
  auto common = parse_poly("x^2*y + x - y + 3", ring);
  std::mt19937_64 rng(2);
  auto a = common * random_poly(rng, ring, 4, 5);
  auto b = common * random_poly(rng, ring, 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(poly_gcd(a, b));
}
BENCHMARK(BM_poly_gcd_bivariate);

void BM_buchberger_katsura3(benchmark::State& state) {
  auto ring = parse_ring("Q[x,y,z]");
  std::vector<Polynomial> gens = {
      parse_poly("x + 2*y + 2*z - 1", ring),
      parse_poly("x^2 + 2*y^2 + 2*z^2 - x", ring),
      parse_poly("2*x*y + 2*y*z - y", ring),
  };
  for (auto _ : state) benchmark::DoNotOptimize(buchberger(gens));
}
BENCHMARK(BM_buchberger_katsura3);

void BM_factor_fp(benchmark::State& state) {
  auto ring = parse_ring("Fp(101)[x]");
  auto f = parse_poly("(x^6 + x + 3)*(x^5 + 7*x + 1)*(x + 9)^2", ring);
  for (auto _ : state) benchmark::DoNotOptimize(factor_prime(f));
}
BENCHMARK(BM_factor_fp);

void BM_factor_zassenhaus(benchmark::State& state) {
  auto ring = parse_ring("Q[x]");
  auto f = parse_poly("(x^4 - 2*x + 7)*(x^4 + 3*x^2 + 1)*(x^2 - 2)", ring);
  for (auto _ : state) benchmark::DoNotOptimize(factor_prime(f));
}
BENCHMARK(BM_factor_zassenhaus);

void BM_newton_simplex(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> entry(0, 9);
  std::vector<std::vector<std::uint32_t>> gens(
      8, std::vector<std::uint32_t>(4));
  for (auto& g : gens)
    for (auto& e : g) e = entry(rng);
  std::vector<std::uint32_t> v = {5, 5, 5, 5};
  for (auto _ : state) benchmark::DoNotOptimize(newton_contains(v, gens));
}
BENCHMARK(BM_newton_simplex);

void BM_is_connected(benchmark::State& state) {
  auto ring = parse_ring("Q[x,y];[T]");
  ForcingData data;
  data.ring = ring;
  data.ideal = {parse_poly("x^2*y", ring)};
  data.f = parse_poly("-x*y", ring);
  for (auto _ : state) benchmark::DoNotOptimize(is_connected(data));
}
BENCHMARK(BM_is_connected);

}  // namespace

BENCHMARK_MAIN();
