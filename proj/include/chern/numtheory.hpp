// Number-theoretic kernel: factorial valuations via digit sums, Todd
// numbers, generators of (Z/p^2)^x, and prime-power factorial residues.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "chern/numeric.hpp"

namespace chern {

inline std::vector<long> primes_upto(long n) {
  std::vector<long> out;
  for (long p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

inline long digit_sum_base_p(long n, long p) {
  long s = 0;
  while (n > 0) {
    s += n % p;
    n /= p;
  }
  return s;
}

// v_p(n!) = (n - digitsum_p(n)) / (p - 1). The counting form
// sum_j floor(n/p^j) is kept in the test suite as the independent oracle.
inline long factorial_valuation(long n, long p) {
  require_prime(p);
  if (n < 0) throw std::domain_error("factorial_valuation: n must be nonnegative");
  return (n - digit_sum_base_p(n, p)) / (p - 1);
}

// floor(n/(p-1)) - floor((n-1)/(p-1)); equals 1 exactly when p-1 divides n.
inline int floor_div_step(long n, long p) {
  require_prime(p);
  if (n < 1) throw std::domain_error("floor_div_step: n must be positive");
  return n % (p - 1) == 0 ? 1 : 0;
}

// d-th Todd number: prod over primes p of p^[d/(p-1)]. The exponent vanishes
// for p > d+1, so the product is finite.
inline BigInt todd_number(long d) {
  if (d < 0) throw std::domain_error("todd_number: d must be nonnegative");
  BigInt r = 1;
  for (long p : primes_upto(d + 1)) r *= int_pow(p, d / (p - 1));
  return r;
}

namespace detail {
inline long mul_mod(long a, long b, long m) { return (a * b) % m; }

inline long multiplicative_order(long a, long m) {
  long x = a % m;
  long ord = 1;
  while (x != 1) {
    x = mul_mod(x, a, m);
    ++ord;
    if (ord > m) throw std::logic_error("multiplicative_order: not a unit");
  }
  return ord;
}
}  // namespace detail

// Smallest integer l >= 2, prime to p, whose class generates (Z/p^2)^x.
// Smallest is returned for reproducibility. Such l also generates (Z/p)^x,
// which gives v_p(l^n - 1) = [p-1 | n] for all 0 < n < p(p-1).
inline long primitive_root_mod_p2(long p) {
  require_prime(p);
  const long m = p * p;
  const long target = p * (p - 1);  // = phi(p^2)
  for (long l = 2;; ++l) {
    if (l % p == 0) continue;
    if (detail::multiplicative_order(l, m) == target) return l;
  }
}

// Residue mod p of (p^i)! / p^{(p^i-1)/(p-1)}, computed by enumerating the
// factorial with the p-part stripped term by term. This is deliberately a
// direct enumeration (not the inductive argument), so it can serve as an
// independent oracle; the result is checked against (-1)^i on the way out.
inline long prime_power_factorial_residue(long p, int i) {
  require_prime(p);
  if (i < 0) throw std::domain_error("prime_power_factorial_residue: i must be nonnegative");
  BigInt bound = int_pow(p, i);
  if (bound > 1000000) throw std::length_error("prime_power_factorial_residue: p^i exceeds 10^6 guard");
  const long n = static_cast<long>(bound);

  long residue = 1;
  long stripped = 0;
  for (long k = 1; k <= n; ++k) {
    long t = k;
    while (t % p == 0) {
      t /= p;
      ++stripped;
    }
    residue = detail::mul_mod(residue, t % p, p);
  }

  const long expected_vp = static_cast<long>((bound - 1) / (p - 1));
  if (stripped != expected_vp)
    throw std::logic_error("prime_power_factorial_residue: valuation mismatch");
  const long sign = (i % 2 == 0) ? 1 : (p - 1);  // (-1)^i mod p
  if (residue != sign % p)
    throw std::logic_error("prime_power_factorial_residue: residue is not (-1)^i");
  return residue;
}

}  // namespace chern
