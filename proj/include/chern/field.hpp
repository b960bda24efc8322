// Coefficient fields carried by series and cycle classes: the rationals and
// the prime fields Z/p (p chosen at runtime). Containers store a field value
// and route all coefficient arithmetic through it, which is what makes
// "same field tag" requirements checkable.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "chern/numeric.hpp"

namespace chern {

struct RationalField {
  using Elem = Rational;
  static constexpr bool modular = false;

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem from_long(long n) const { return Rational(n); }
  Elem from_bigint(const BigInt& n) const { return Rational(n); }
  Elem from_rational(const Rational& q) const { return q; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("division by zero in Q");
    return 1 / a;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool same(const RationalField&) const { return true; }
  std::string str(const Elem& a) const { return to_string(a); }
  std::string name() const { return "Q"; }
};

class PrimeField {
 public:
  using Elem = std::int64_t;  // canonical representative in [0, p)
  static constexpr bool modular = true;

  explicit PrimeField(long p) : p_(p) { require_prime(p); }
  long p() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_long(long n) const {
    Elem r = n % p_;
    return r < 0 ? r + p_ : r;
  }
  Elem from_bigint(const BigInt& n) const {
    BigInt r = n % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }
  // Image of a/b in Z_(p)/pZ_(p); only defined on the lattice v_p >= 0.
  Elem from_rational(const Rational& q) const {
    Elem b = from_bigint(den(q));
    if (b == 0)
      throw std::domain_error("rational " + to_string(q) + " is not p-integral at p=" +
                              std::to_string(p_));
    return mul(from_bigint(num(q)), inv(b));
  }

  Elem add(Elem a, Elem b) const { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const { return (a - b + p_) % p_; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero mod p");
    // extended Euclid on (a, p)
    long t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      long q = r / nr;
      long tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return t < 0 ? t + p_ : t;
  }
  Elem pow(Elem a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Elem r = one(), b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      e >>= 1;
      b = mul(b, b);
    }
    return r;
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  bool same(const PrimeField& o) const { return p_ == o.p_; }
  std::string str(Elem a) const { return std::to_string(a); }
  std::string name() const { return "Z/" + std::to_string(p_); }

 private:
  long p_;
};

template <class K>
inline void require_same_field(const K& a, const K& b, const char* what) {
  if (!a.same(b)) throw std::invalid_argument(std::string(what) + ": coefficient field mismatch");
}

}  // namespace chern
