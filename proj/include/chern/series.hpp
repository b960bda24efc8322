// Truncated univariate power series over an exact coefficient field:
// ring operations, composition, multiplicative and compositional inverses.
// Everything is a finite exact computation; there is no floating point.
//
// Truncation order is carried by the value. Binary operations propagate the
// minimum order of the operands; mixing orders is allowed, mixing coefficient
// fields is not.
#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chern/field.hpp"
#include "chern/numeric.hpp"

namespace chern {

template <class K>
class TruncSeries {
 public:
  using Elem = typename K::Elem;

  TruncSeries(K field, int order)
      : field_(field), order_(order), c_(static_cast<size_t>(order) + 1, field.zero()) {
    if (order < 0) throw std::invalid_argument("TruncSeries: order must be nonnegative");
  }

  static TruncSeries constant(K field, const Elem& value, int order) {
    TruncSeries s(field, order);
    s.c_[0] = value;
    return s;
  }

  static TruncSeries identity(K field, int order) {  // the series x
    TruncSeries s(field, order);
    if (order >= 1) s.c_[1] = field.one();
    return s;
  }

  const K& field() const { return field_; }
  int order() const { return order_; }

  const Elem& coeff(int i) const {
    static const Elem zero{};
    return i <= order_ ? c_[static_cast<size_t>(i)] : zero;
  }
  void set_coeff(int i, const Elem& v) {
    if (i < 0 || i > order_) throw std::out_of_range("TruncSeries::set_coeff");
    c_[static_cast<size_t>(i)] = v;
  }

  bool is_zero() const {
    for (const Elem& v : c_)
      if (!field_.is_zero(v)) return false;
    return true;
  }

  TruncSeries truncate(int new_order) const {
    TruncSeries r(field_, std::min(new_order, order_));
    for (int i = 0; i <= r.order_; ++i) r.c_[i] = c_[i];
    return r;
  }

  TruncSeries operator+(const TruncSeries& g) const {
    require_same_field(field_, g.field_, "series add");
    TruncSeries r(field_, std::min(order_, g.order_));
    for (int i = 0; i <= r.order_; ++i) r.c_[i] = field_.add(c_[i], g.c_[i]);
    return r;
  }

  TruncSeries operator-(const TruncSeries& g) const {
    require_same_field(field_, g.field_, "series sub");
    TruncSeries r(field_, std::min(order_, g.order_));
    for (int i = 0; i <= r.order_; ++i) r.c_[i] = field_.sub(c_[i], g.c_[i]);
    return r;
  }

  TruncSeries operator-() const {
    TruncSeries r(field_, order_);
    for (int i = 0; i <= order_; ++i) r.c_[i] = field_.neg(c_[i]);
    return r;
  }

  TruncSeries scale(const Elem& a) const {
    TruncSeries r(field_, order_);
    for (int i = 0; i <= order_; ++i) r.c_[i] = field_.mul(a, c_[i]);
    return r;
  }

  // Cauchy product truncated at the minimum operand order.
  TruncSeries operator*(const TruncSeries& g) const {
    require_same_field(field_, g.field_, "series mul");
    const int n = std::min(order_, g.order_);
    TruncSeries r(field_, n);
    for (int i = 0; i <= n; ++i) {
      if (field_.is_zero(c_[i])) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (field_.is_zero(g.c_[j])) continue;
        r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], g.c_[j]));
      }
    }
    return r;
  }

  TruncSeries pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    TruncSeries r = constant(field_, field_.one(), order_);
    TruncSeries b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Multiplicative inverse; requires an invertible constant term.
  TruncSeries inverse() const {
    if (field_.is_zero(c_[0]))
      throw std::domain_error("series inverse: constant term is not invertible");
    const Elem c0inv = field_.inv(c_[0]);
    TruncSeries r(field_, order_);
    r.c_[0] = c0inv;
    for (int n = 1; n <= order_; ++n) {
      Elem acc = field_.zero();
      for (int i = 1; i <= n; ++i) acc = field_.add(acc, field_.mul(c_[i], r.c_[n - i]));
      r.c_[n] = field_.neg(field_.mul(c0inv, acc));
    }
    return r;
  }

  // f(g(x)); requires g(0) = 0 so the composite is well defined per order.
  TruncSeries compose(const TruncSeries& g) const {
    require_same_field(field_, g.field_, "series compose");
    if (!field_.is_zero(g.c_[0]))
      throw std::domain_error("series compose: inner series must have zero constant term");
    const int n = std::min(order_, g.order_);
    const TruncSeries gn = g.truncate(n);

    int nonzero = 0;
    for (int i = 0; i <= n; ++i)
      if (!field_.is_zero(c_[i])) ++nonzero;

    // Sparse outer series: accumulate f_e * g^e walking the exponents upward.
    if (nonzero <= 8) {
      TruncSeries r = constant(field_, c_[0], n);
      TruncSeries cur = constant(field_, field_.one(), n);
      int cur_e = 0;
      for (int e = 1; e <= n; ++e) {
        if (field_.is_zero(c_[e])) continue;
        cur = cur * gn.pow(e - cur_e);
        cur_e = e;
        r = r + cur.scale(c_[e]);
      }
      return r;
    }

    // Dense outer series: Horner.
    TruncSeries r = constant(field_, c_[n], n);
    for (int e = n - 1; e >= 0; --e) {
      r = r * gn;
      r.c_[0] = field_.add(r.c_[0], c_[e]);
    }
    return r;
  }

  // Left compositional inverse g with g(f(x)) = x, for f = x + higher order.
  // For such units it is a two-sided inverse up to truncation.
  TruncSeries comp_inverse() const {
    if (!field_.is_zero(c_[0]))
      throw std::domain_error("series comp_inverse: constant term must be zero");
    if (order_ < 1 || !field_.eq(c_[1], field_.one()))
      throw std::domain_error("series comp_inverse: linear coefficient must be 1");
    // Powers f^m start at x^m with coefficient 1, so the system
    // [x^n] sum_m g_m f^m = [n == 1] is unitriangular in the g_m.
    std::vector<TruncSeries> fpow;  // f^1 .. f^order
    fpow.reserve(static_cast<size_t>(order_));
    fpow.push_back(*this);
    for (int m = 2; m <= order_; ++m) fpow.push_back(fpow.back() * *this);

    TruncSeries g(field_, order_);
    g.c_[1] = field_.one();
    for (int n = 2; n <= order_; ++n) {
      Elem acc = field_.zero();
      for (int m = 1; m < n; ++m)
        acc = field_.add(acc, field_.mul(g.c_[m], fpow[static_cast<size_t>(m - 1)].coeff(n)));
      g.c_[n] = field_.neg(acc);
    }
    return g;
  }

  bool operator==(const TruncSeries& g) const {
    require_same_field(field_, g.field_, "series compare");
    const int n = std::max(order_, g.order_);
    for (int i = 0; i <= n; ++i)
      if (!field_.eq(coeff(i), g.coeff(i))) return false;
    return true;
  }
  bool operator!=(const TruncSeries& g) const { return !(*this == g); }

  // "c0 + c1*x + ... + cN*x^N (+O(x^{N+1}))"
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= order_; ++i) {
      if (field_.is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << field_.str(c_[i]);
      if (i == 1) os << "*x";
      if (i > 1) os << "*x^" << i;
    }
    if (first) os << "0";
    os << " (+O(x^" << order_ + 1 << "))";
    return os.str();
  }

 private:
  K field_;
  int order_;
  std::vector<Elem> c_;
};

using SeriesQ = TruncSeries<RationalField>;
using SeriesFp = TruncSeries<PrimeField>;

// ---------------------------------------------------------------------------
// Named series.

inline SeriesQ exp_series(int order) {
  SeriesQ s{RationalField{}, order};
  for (int n = 0; n <= order; ++n) s.set_coeff(n, Rational(1, factorial(n)));
  return s;
}

// x/(1 - e^{-x}), computed as the inverse of sum_n (-x)^n/(n+1)!.
inline SeriesQ todd_series(int order) {
  SeriesQ g{RationalField{}, order};
  for (int n = 0; n <= order; ++n) {
    Rational c(1, factorial(n + 1));
    g.set_coeff(n, (n % 2 == 0) ? c : -c);
  }
  return g.inverse();
}

// Alternating series with support at the exponents p^i - 1.
template <class K>
TruncSeries<K> r_series(K field, long p, int order) {
  require_prime(p);
  TruncSeries<K> s(field, order);
  BigInt e = 0;  // p^i - 1
  for (int i = 0;; ++i) {
    if (e > order) break;
    s.set_coeff(static_cast<int>(e), i % 2 == 0 ? field.one() : field.neg(field.one()));
    e = e * p + (p - 1);  // p^{i+1} - 1
  }
  return s;
}

// 1 + x^{p-1}.
template <class K>
TruncSeries<K> w_series(K field, long p, int order) {
  require_prime(p);
  TruncSeries<K> s = TruncSeries<K>::constant(field, field.one(), order);
  if (p - 1 <= order) s.set_coeff(static_cast<int>(p - 1), field.one());
  return s;
}

inline SeriesQ r_series_q(long p, int order) { return r_series(RationalField{}, p, order); }
inline SeriesQ w_series_q(long p, int order) { return w_series(RationalField{}, p, order); }

}  // namespace chern
