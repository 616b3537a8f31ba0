#include <doctest.h>

#include <random>

#include "forcing/errors.hpp"
#include "forcing/parse.hpp"
#include "forcing/polynomial.hpp"
#include "support/test_util.hpp"

using namespace forcing;
using testutil::pp;
using testutil::pplist;
using testutil::random_poly;
using testutil::ring_of;

TEST_CASE("difference of squares over Q[x,y]") {
  auto R = ring_of("Q[x,y]");
  auto prod = poly_arith(pp("x+y", R), pp("x-y", R), ArithOp::mul);
  CHECK(prod == pp("x^2-y^2", R));
  CHECK(prod.to_string() == "x^2 - y^2");
}

TEST_CASE("exact division x^2*y*T - x*y by x*y") {
  auto R = ring_of("Q[x,y];[T]");
  auto q = poly_arith(pp("x^2*y*T - x*y", R), pp("x*y", R), ArithOp::exact_div);
  CHECK(q == pp("x*T - 1", R));
  CHECK(q.to_string() == "x*T - 1");
}

TEST_CASE("characteristic p collapse") {
  auto R = ring_of("Fp(7)[x]");
  auto sum = pp("x+1", R) + pp("6*x+6", R);
  CHECK(sum.is_zero());
  CHECK(sum.to_string() == "0");
}

TEST_CASE("inexact division reports an error") {
  auto R = ring_of("Q[x]");
  CHECK_THROWS_AS((void)pp("x^2+1", R).exact_div(pp("x+1", R)), Error);
  CHECK_THROWS_AS((void)pp("x", R).exact_div(pp("0", R)), Error);
}

TEST_CASE("ring mismatch is rejected") {
  auto R1 = ring_of("Q[x]");
  auto R2 = ring_of("Q[y]");
  CHECK_THROWS_AS((void)(pp("x", R1) + pp("y", R2)), Error);
}

TEST_CASE("gcd examples") {
  auto R = ring_of("Q[x,y]");
  CHECK(poly_gcd(pp("x^2*y", R), pp("x*y", R)) == pp("x*y", R));
  auto f = pp("3*x^2*y - 3*x", R);
  CHECK(poly_gcd(f, f) == f.normalized());
  auto R1 = ring_of("Q[x]");
  CHECK(poly_gcd(pp("x^2-1", R1), pp("x^2-2*x+1", R1)) == pp("x-1", R1));
  CHECK(poly_gcd(pp("x", R1), pp("0", R1)) == pp("x", R1));
  CHECK_THROWS_AS((void)poly_gcd(pp("0", R1), pp("0", R1)), Error);
}

TEST_CASE("content and primitive parts") {
  auto R = ring_of("Q[x]");
  auto split = content_and_primitive(pplist({"x^2", "x"}, R));
  CHECK(split.content == pp("x", R));
  CHECK(split.primitive[0] == pp("x", R));
  CHECK(split.primitive[1] == pp("1", R));

  auto R2 = ring_of("Q[x,y]");
  auto split2 = content_and_primitive(pplist({"x^2*y", "x*y"}, R2));
  CHECK(split2.content == pp("x*y", R2));
  CHECK(split2.primitive[0] == pp("x", R2));
  CHECK(split2.primitive[1] == pp("1", R2));

  auto split3 = content_and_primitive(pplist({"x", "y"}, R2));
  CHECK(split3.content == pp("1", R2));
  CHECK(split3.primitive[0] == pp("x", R2));
  CHECK(split3.primitive[1] == pp("y", R2));
}

TEST_CASE("evaluation") {
  auto R = ring_of("Q[x,y];[T1,T2]");
  auto f = pp("x*T1 + y*T2 - 1", R);
  std::vector<std::pair<std::size_t, Coeff>> at = {{0, Coeff(1)},
                                                   {1, Coeff(0)}};
  CHECK(f.evaluate(at) == pp("T1 - 1", R));

  auto g = pp("x^2*y*T1 - x*y", R);
  std::vector<std::pair<std::size_t, Coeff>> origin = {{0, Coeff(0)},
                                                       {1, Coeff(0)}};
  CHECK(g.evaluate(origin).is_zero());

  auto R2 = ring_of("Q[x];[T]");
  auto h = pp("x*T + x + 1", R2);
  std::vector<std::pair<std::size_t, Coeff>> zero = {{0, Coeff(0)}};
  CHECK(h.evaluate(zero) == pp("1", R2));
}

TEST_CASE("modular inverse") {
  CHECK(fp_inverse(Coeff(3), mpz_class(7)) == Coeff(5));
  CHECK(fp_inverse(Coeff(1), mpz_class(13)) == Coeff(1));
  CHECK(fp_inverse(Coeff(12), mpz_class(13)) == Coeff(12));
  CHECK_THROWS_AS((void)fp_inverse(Coeff(0), mpz_class(7)), Error);
  CHECK_THROWS_AS((void)fp_inverse(Coeff(2), mpz_class(8)), Error);
}

TEST_CASE("degree of zero is a sentinel") {
  auto R = ring_of("Q[x]");
  CHECK(!pp("0", R).total_degree().has_value());
  CHECK(pp("5", R).total_degree() == 0u);
}

TEST_CASE("ring axioms on random triples") {
  for (const char* rt : {"Q[x,y];[T]", "Fp(5)[x,y];[T]", "Z;[T]"}) {
    auto R = ring_of(rt);
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 500; ++i) {
      auto a = random_poly(rng, R, 3, 4, 6, false);
      auto b = random_poly(rng, R, 3, 4, 6, false);
      auto c = random_poly(rng, R, 3, 4, 6, false);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
    }
  }
}

TEST_CASE("gcd divides both arguments and gcd*lcm matches for univariate") {
  std::mt19937_64 rng(77001);
  auto R = ring_of("Q[x]");
  for (int i = 0; i < 100; ++i) {
    auto a = random_poly(rng, R, 5, 4, 5);
    auto b = random_poly(rng, R, 5, 4, 5);
    if (a.is_zero() && b.is_zero()) continue;
    auto g = poly_gcd(a, b);
    CHECK_NOTHROW((void)a.exact_div(g));
    CHECK_NOTHROW((void)b.exact_div(g));
    if (!a.is_zero() && !b.is_zero()) {
      auto lcm = (a * b).exact_div(g);
      CHECK((a * b).normalized() == (g * lcm).normalized());
    }
  }
}

TEST_CASE("content_and_primitive reconstructs inputs") {
  std::mt19937_64 rng(99013);
  auto R = ring_of("Q[x,y]");
  for (int i = 0; i < 100; ++i) {
    std::vector<Polynomial> fs;
    bool any = false;
    for (int k = 0; k < 3; ++k) {
      fs.push_back(random_poly(rng, R, 3, 3, 4));
      any = any || !fs.back().is_zero();
    }
    if (!any) continue;
    auto split = content_and_primitive(fs);
    for (std::size_t k = 0; k < fs.size(); ++k)
      CHECK(split.content * split.primitive[k] == fs[k]);
  }
}

TEST_CASE("canonical serialization round-trips") {
  for (const char* rt : {"Q[x,y];[T]", "Fp(11)[x,y];[T]", "Z;[T1,T2]"}) {
    auto R = ring_of(rt);
    std::mt19937_64 rng(555007);
    for (int i = 0; i < 500; ++i) {
      auto p = random_poly(rng, R, 4, 5, 9, false);
      CHECK(parse_poly(p.to_string(), R) == p);
    }
  }
  // rational coefficients round-trip through `a/b` literals
  auto R = ring_of("Q[x]");
  auto p = pp("1/2*x^2 - 3/7", R);
  CHECK(parse_poly(p.to_string(), R) == p);
  CHECK(p.to_string() == "1/2*x^2 - 3/7");
}
