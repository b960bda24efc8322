// Independent oracles used by the test suite. These deliberately avoid the
// code paths they check: counting instead of digit sums, Bernoulli numbers
// via the Akiyama-Tanigawa scheme instead of series inversion, binomial
// Euler characteristics instead of the Chern-character pipeline.
#pragma once

#include <vector>

#include "chern/ktheory.hpp"
#include "chern/numeric.hpp"

namespace oracles {

// v_p(n!) by counting multiples: sum_j floor(n / p^j).
inline long factorial_valuation_by_counting(long n, long p) {
  long total = 0;
  for (long q = p; q <= n; q *= p) {
    total += n / q;
    if (q > n / p) break;  // avoid overflow on the next q *= p
  }
  return total;
}

// Bernoulli numbers in the B_1 = +1/2 convention, via Akiyama-Tanigawa.
// The Todd series is then sum_d B_d x^d / d!.
inline std::vector<chern::Rational> bernoulli_plus(int count) {
  using chern::Rational;
  std::vector<Rational> out;
  std::vector<Rational> A;
  for (int m = 0; m < count; ++m) {
    A.push_back(Rational(1, m + 1));
    for (int j = m; j >= 1; --j)
      A[static_cast<size_t>(j - 1)] = Rational(j) * (A[static_cast<size_t>(j - 1)] - A[static_cast<size_t>(j)]);
    out.push_back(A[0]);
  }
  return out;
}

// chi(O(a_1,...,a_k)) = prod_j C(n_j + a_j, n_j), extended linearly over
// t-monomials. Input is a K0-class; the expansion into t-monomials is the
// only shared machinery.
inline chern::Rational euler_by_binomials(const chern::KCohElt& x) {
  using namespace chern;
  Rational total = 0;
  const auto& dims = x.variety().factor_dims();
  for (const auto& [a, c] : x.t_monomials()) {
    // monomial t^a = [O(-a)], so chi = prod C(n_j - a_j, n_j)
    Rational term = c;
    for (size_t j = 0; j < dims.size(); ++j)
      term *= Rational(binomial(BigInt(dims[j] - a[j]), dims[j]));
    total += term;
  }
  return total;
}

}  // namespace oracles
