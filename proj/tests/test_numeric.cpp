#include <catch2/catch_amalgamated.hpp>

#include "chern/numeric.hpp"
#include "chern/numtheory.hpp"
#include "chern/rng.hpp"
#include "oracles.hpp"

using namespace chern;

TEST_CASE("vp on rationals") {
  CHECK(vp(Rational(12), 2) == Valuation::of(2));
  CHECK(vp(Rational(3, 4), 2) == Valuation::of(-2));
  CHECK(vp(Rational(0), 5).is_infinite());
  CHECK(vp(Rational(-18), 3) == Valuation::of(2));
  CHECK_THROWS_AS(vp(Rational(1), 4), std::domain_error);
  CHECK_THROWS_AS(vp(Rational(1), 1), std::domain_error);
}

TEST_CASE("vp is a valuation") {
  SplitMix64 rng(7);
  for (int c = 0; c < 200; ++c) {
    const Rational x(rng.nonzero_in(-500, 500), rng.nonzero_in(1, 60));
    const Rational y(rng.nonzero_in(-500, 500), rng.nonzero_in(1, 60));
    for (long p : {2L, 3L, 5L}) {
      CHECK(vp(x * y, p) == vp(x, p) + vp(y, p));
      CHECK(vp(x + y, p) >= Valuation::min(vp(x, p), vp(y, p)));
    }
  }
}

TEST_CASE("vp_module") {
  CHECK(vp_module({Rational(1, 2), Rational(3)}, 2) == Valuation::of(-1));
  CHECK(vp_module({Rational(0), Rational(0)}, 3).is_infinite());
  CHECK(vp_module({}, 5).is_infinite());
  CHECK(vp_module({Rational(4, 9), Rational(2, 3)}, 3) == Valuation::of(-2));
}

TEST_CASE("factorial valuation agrees with the counting oracle") {
  CHECK(factorial_valuation(4, 2) == 3);
  CHECK(factorial_valuation(10, 3) == 4);
  CHECK(factorial_valuation(0, 7) == 0);
  for (long p : {2L, 3L, 5L, 7L, 11L})
    for (long n = 0; n <= 10000; ++n)
      REQUIRE(factorial_valuation(n, p) == oracles::factorial_valuation_by_counting(n, p));
}

TEST_CASE("todd numbers") {
  CHECK(todd_number(0) == 1);
  CHECK(todd_number(1) == 2);
  CHECK(todd_number(2) == 12);
  CHECK(todd_number(3) == 24);
  CHECK(todd_number(4) == 720);

  // tau_d = tau_{d-1} * prod_{p-1 | d} p
  for (long d = 1; d <= 24; ++d) {
    BigInt step = todd_number(d - 1);
    for (long p : primes_upto(d + 1))
      if (d % (p - 1) == 0) step *= p;
    CHECK(todd_number(d) == step);
  }
}

TEST_CASE("floor_div_step marks multiples of p-1") {
  CHECK(floor_div_step(2, 3) == 1);
  CHECK(floor_div_step(3, 3) == 0);
  CHECK(floor_div_step(6, 7) == 1);
  for (long p : {2L, 3L, 5L, 7L})
    for (long n = 1; n <= 200; ++n)
      CHECK(floor_div_step(n, p) == (n / (p - 1)) - ((n - 1) / (p - 1)));
}

TEST_CASE("primitive root mod p^2") {
  CHECK(primitive_root_mod_p2(2) == 3);
  CHECK(primitive_root_mod_p2(3) == 2);
  CHECK(primitive_root_mod_p2(5) == 2);

  // v_p(l^n - 1) = [p-1 | n] for 1 <= n < p(p-1)
  for (long p : {2L, 3L, 5L, 7L}) {
    const long l = primitive_root_mod_p2(p);
    for (long n = 1; n < p * (p - 1); ++n) {
      const BigInt v = int_pow(BigInt(l), n) - 1;
      CHECK(vp(v, p) == Valuation::of(floor_div_step(n, p)));
    }
  }
}

TEST_CASE("prime-power factorial residues") {
  CHECK(prime_power_factorial_residue(3, 1) == 2);  // 3!/3 = 2 = -1 mod 3
  CHECK(prime_power_factorial_residue(2, 2) == 1);  // 24/8 = 3 = 1 mod 2
  CHECK(prime_power_factorial_residue(3, 2) == 1);  // 9!/81 = 4480 = 1 mod 3
  CHECK(prime_power_factorial_residue(5, 0) == 1);
  CHECK_THROWS_AS(prime_power_factorial_residue(2, 30), std::length_error);
}

TEST_CASE("generalized binomial") {
  CHECK(binomial(BigInt(5), 2) == 10);
  CHECK(binomial(BigInt(-1), 1) == -1);
  CHECK(binomial(BigInt(-3), 2) == 6);
  CHECK(binomial(BigInt(4), 0) == 1);
  CHECK(binomial(BigInt(2), 5) == 0);
}
