// Seeded random elements for sweeps: integer K0' combinations, virtual
// bundles, and mod-p cycle classes. Sparse supports keep big models cheap.
#pragma once

#include <string>

#include "chern/chow.hpp"
#include "chern/ktheory.hpp"
#include "chern/rng.hpp"
#include "chern/variety.hpp"

namespace chern {

// Random Z-combination of K0' basis classes: up to max_terms distinct [[I]]
// with nonzero coefficients in [-9, 9]. Never returns zero.
inline KHomElt random_khom(const ModelVariety& X, SplitMix64& rng, int max_terms = 6) {
  const auto box = X.box();
  KHomElt x(X);
  const int terms = static_cast<int>(rng.next_in(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    const auto& I = box[static_cast<size_t>(rng.next_in(0, static_cast<long>(box.size()) - 1))];
    x.add_term(I, Rational(rng.nonzero_in(-9, 9)));
  }
  if (x.is_zero()) x.add_term(box[0], Rational(1));
  return x;
}

// Random virtual bundle: up to max_parts line bundles, twists in [-2, 2]
// per factor, multiplicities in [-2, 2] \ {0}.
inline VirtualBundle random_bundle(const ModelVariety& X, SplitMix64& rng, int max_parts = 4) {
  VirtualBundle u(X);
  const int parts = static_cast<int>(rng.next_in(1, max_parts));
  for (int t = 0; t < parts; ++t) {
    Expo tw = X.zero_expo();
    for (int j = 0; j < X.factors(); ++j)
      tw[static_cast<size_t>(j)] = static_cast<int>(rng.next_in(-2, 2));
    u.add(tw, rng.nonzero_in(-2, 2));
  }
  return u;
}

// Random mod-p class with a sparse support.
inline ChowFp random_chow_fp(const ModelVariety& X, const PrimeField& F, SplitMix64& rng,
                             int max_terms = 6) {
  const auto box = X.box();
  ChowFp x(F, X);
  const int terms = static_cast<int>(rng.next_in(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    const auto& e = box[static_cast<size_t>(rng.next_in(0, static_cast<long>(box.size()) - 1))];
    x.add_term(e, F.from_long(rng.next_in(1, F.p() - 1 > 0 ? F.p() - 1 : 1)));
  }
  return x;
}

inline std::string expo_str(const Expo& e) {
  std::string s = "(";
  for (size_t j = 0; j < e.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(e[j]);
  }
  return s + ")";
}

}  // namespace chern
