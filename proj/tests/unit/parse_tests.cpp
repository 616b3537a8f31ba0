#include <doctest.h>

#include <random>

#include "forcing/errors.hpp"
#include "forcing/parse.hpp"
#include "support/test_util.hpp"

using namespace forcing;
using testutil::pp;
using testutil::random_poly;
using testutil::ring_of;

TEST_CASE("ring grammar") {
  auto R = parse_ring("Q[x,y];[T]");
  CHECK(R->domain() == Domain::rationals);
  CHECK(R->base_count() == 2);
  CHECK(R->forcing_count() == 1);
  CHECK(R->variables() == std::vector<std::string>{"x", "y", "T"});
  CHECK(R->to_string() == "Q[x,y];[T]");

  auto F = parse_ring("Fp(7)[x];[T1,T2]");
  CHECK(F->domain() == Domain::prime_field);
  CHECK(F->modulus() == 7);
  CHECK(F->forcing_count() == 2);

  auto Z = parse_ring("Z;[T]");
  CHECK(Z->domain() == Domain::integers);
  CHECK(Z->base_count() == 0);
  CHECK(Z->forcing_count() == 1);
  CHECK(Z->to_string() == "Z;[T]");
}

TEST_CASE("ring grammar errors") {
  CHECK_THROWS_AS((void)parse_ring("Fp(6)[x]"), Error);   // composite modulus
  CHECK_THROWS_AS((void)parse_ring("Q[x,x]"), Error);     // duplicate variable
  CHECK_THROWS_AS((void)parse_ring("R[x]"), Error);       // unknown domain
  CHECK_THROWS_AS((void)parse_ring("Q[x];T"), Error);     // malformed suffix
}

TEST_CASE("polynomial grammar") {
  auto R = ring_of("Q[x,y];[T]");
  CHECK(pp("x^2*y*T - x*y", R).to_string() == "x^2*y*T - x*y");
  CHECK(pp("0", R).is_zero());
  CHECK(pp("(x+y)^2", R) == pp("x^2 + 2*x*y + y^2", R));
  CHECK(pp("-x", R).to_string() == "-x");
  CHECK(pp("- x - 0", R) == pp("-x", R));
}

TEST_CASE("polynomial grammar errors carry positions") {
  auto R = ring_of("Q[x,y]");
  CHECK_THROWS_WITH_AS((void)pp("x + z", R), "1:5: unknown variable 'z'",
                       Error);
  CHECK_THROWS_AS((void)pp("x^y", R), Error);      // malformed exponent
  CHECK_THROWS_AS((void)pp("x/2", R), Error);      // no division operator
  CHECK_THROWS_AS((void)pp("2x", R), Error);       // implicit multiplication
  CHECK_THROWS_AS((void)pp("x*(y", R), Error);     // unbalanced parens
  try {
    (void)pp("x +\n y^", R);
    CHECK(false);
  } catch (const Error& e) {
    REQUIRE(e.pos().has_value());
    CHECK(e.pos()->line == 2);
  }
}

TEST_CASE("arbitrary precision literals") {
  auto R = ring_of("Q[x]");
  auto p = pp("123456789012345678901234567890*x", R);
  CHECK(p.leading_term().coeff ==
        Coeff(mpz_class("123456789012345678901234567890")));
}

TEST_CASE("job file: Example 1 data") {
  auto job = parse_job(
      "# the first worked example\n"
      "ring: Q[x];[T]\n"
      "ideal: [x^2]\n"
      "f: -x\n"
      "mode: global\n");
  CHECK(job.mode == JobMode::global);
  CHECK(job.ideal.size() == 1);
  CHECK(job.ideal[0] == pp("x^2", job.ring));
  CHECK(job.f == pp("-x", job.ring));
}

TEST_CASE("job file validation") {
  CHECK_THROWS_AS((void)parse_job("ring: Q[x];[T]\n"
                                  "ideal: [x^2]\n"
                                  "f: x\n"
                                  "mode: local\n"),
                  Error);  // local without local_at
  CHECK_THROWS_AS((void)parse_job("ring: Q[x];[T]\n"
                                  "mode: global\n"
                                  "f: x\n"),
                  Error);  // missing ideal
  CHECK_THROWS_AS((void)parse_job("ring: Q[x];[T]\n"
                                  "ideal: [x^2, x]\n"
                                  "f: x\n"
                                  "mode: global\n"),
                  Error);  // generator count vs forcing variables
  CHECK_THROWS_AS((void)parse_job("ring: Q[x];[T]\n"
                                  "ideal: [T]\n"
                                  "f: x\n"
                                  "mode: global\n"),
                  Error);  // forcing variable inside the ideal
  CHECK_THROWS_AS((void)parse_job("ring: Q[x];[T]\n"
                                  "ideal: [x^2]\n"
                                  "f: x\n"
                                  "mode: global\n"
                                  "matrix: [[x]]\n"),
                  Error);  // matrix outside fiber mode
  CHECK_THROWS_AS((void)parse_job("ring: Q[x];[T]\n"
                                  "ideal: [x^2]\n"
                                  "f: x\n"
                                  "mode: globalx\n"),
                  Error);  // unknown mode
  CHECK_THROWS_AS((void)parse_job("rings: Q[x];[T]\n"), Error);  // unknown key
}

TEST_CASE("job file: fiber with matrix rows") {
  auto job = parse_job(
      "ring: Q[x,y];[T1,T2]\n"
      "mode: fiber\n"
      "matrix: [[x, 0], [0, y]]\n"
      "vector: [-x*y, -x*y]\n"
      "point: x=0, y=0\n");
  REQUIRE(job.matrix.has_value());
  CHECK(job.matrix->size() == 2);
  CHECK(job.rhs.size() == 2);
  REQUIRE(job.point.has_value());
  CHECK(job.point->coords.size() == 2);
}

TEST_CASE("job file: fiber via ideal row and generic point") {
  auto job = parse_job(
      "ring: Q[x,y];[T1,T2]\n"
      "mode: fiber\n"
      "ideal: [x, y]\n"
      "f: -1\n"
      "point: generic\n");
  REQUIRE(job.matrix.has_value());
  CHECK(job.matrix->size() == 1);
  CHECK(job.point->generic);
}

TEST_CASE("job keys are order-insensitive") {
  auto a = parse_job("ring: Q[x];[T]\nideal: [x^2]\nf: -x\nmode: global\n");
  auto b = parse_job("mode: global\nf: -x\nideal: [x^2]\nring: Q[x];[T]\n");
  CHECK(a.ideal[0] == b.ideal[0]);
  CHECK(a.f == b.f);
}

TEST_CASE("round-trip parse of random canonical forms") {
  for (const char* rt : {"Q[x,y];[T]", "Fp(13)[u,v]"}) {
    auto R = ring_of(rt);
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 500; ++i) {
      auto p = random_poly(rng, R, 5, 6, 12, false);
      CHECK(parse_poly(p.to_string(), R) == p);
    }
  }
}
