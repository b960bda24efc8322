// Exact scalars: arbitrary-precision integers and rationals, p-adic
// valuations of rationals and of coefficient vectors over a free basis.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace chern {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline std::string to_string(const BigInt& n) { return n.str(); }

// Renders "a" or "a/b"; denominators are kept positive by cpp_rational.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(long p) {
  if (!is_prime(p))
    throw std::domain_error("expected a prime number, got " + std::to_string(p));
}

// ---------------------------------------------------------------------------
// p-adic valuation. Infinite exactly for the zero element.

class Valuation {
 public:
  Valuation() : inf_(true), v_(0) {}
  static Valuation infinity() { return Valuation(); }
  static Valuation of(long v) {
    Valuation r;
    r.inf_ = false;
    r.v_ = v;
    return r;
  }

  bool is_infinite() const { return inf_; }
  long value() const {
    if (inf_) throw std::logic_error("valuation of zero has no finite value");
    return v_;
  }

  bool operator==(const Valuation& o) const {
    return inf_ == o.inf_ && (inf_ || v_ == o.v_);
  }
  bool operator!=(const Valuation& o) const { return !(*this == o); }
  // Infinity compares greater than every finite valuation.
  bool operator<(const Valuation& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return v_ < o.v_;
  }
  bool operator>=(const Valuation& o) const { return !(*this < o); }
  bool operator>=(long bound) const { return inf_ || v_ >= bound; }

  Valuation operator+(const Valuation& o) const {
    if (inf_ || o.inf_) return infinity();
    return of(v_ + o.v_);
  }

  static Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

  std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

 private:
  bool inf_;
  long v_;
};

inline long integer_valuation(BigInt n, long p) {
  if (n == 0) throw std::domain_error("integer_valuation: zero has no finite valuation");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline Valuation vp(const BigInt& x, long p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return Valuation::of(integer_valuation(x, p));
}

inline Valuation vp(const Rational& x, long p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return Valuation::of(integer_valuation(num(x), p) - integer_valuation(den(x), p));
}

// Valuation of an element of a free module with a chosen basis: the minimum
// over the coordinates. Exact only because all groups in this library are
// free; documented as invalid for torsion groups. Empty input is the zero
// element, hence infinity.
inline Valuation vp_module(const std::vector<Rational>& coords, long p) {
  require_prime(p);
  Valuation m = Valuation::infinity();
  for (const Rational& c : coords) m = Valuation::min(m, vp(c, p));
  return m;
}

// ---------------------------------------------------------------------------
// Small combinatorial helpers used throughout.

inline BigInt factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt int_pow(BigInt base, long e) {
  if (e < 0) throw std::domain_error("int_pow: negative exponent");
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

inline Rational rational_pow(const Rational& base, long e) {
  if (e >= 0) return Rational(int_pow(num(base), e), int_pow(den(base), e));
  if (base == 0) throw std::domain_error("rational_pow: zero to a negative power");
  // divide rather than construct: the two-argument constructor rejects
  // negative denominators
  return Rational(int_pow(den(base), -e)) / Rational(int_pow(num(base), -e));
}

// Generalized binomial coefficient C(a, k) = a(a-1)...(a-k+1)/k!, valid for
// negative upper argument (used for inverse twists (1-s)^a with a < 0 and for
// Euler characteristics of negative twists).
inline BigInt binomial(const BigInt& a, long k) {
  if (k < 0) return 0;
  BigInt numr = 1;
  for (long i = 0; i < k; ++i) numr *= (a - i);
  BigInt r = numr / factorial(k);  // always exact
  return r;
}

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace chern
