// Supported morphism shapes between model varieties: projections off
// factors, products of linear embeddings P^m < P^n, and their composites
// (project, then embed factor-wise). All are projective and l.c.i., with an
// explicit virtual tangent bundle.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "chern/chow.hpp"
#include "chern/ktheory.hpp"
#include "chern/variety.hpp"

namespace chern {

class Morphism {
 public:
  // f: source -> target. kept[i] is the source factor carrying the i-th
  // target factor; source dims on kept factors must not exceed target dims.
  // Dropped source factors are integrated out (projection); kept factors are
  // embedded linearly.
  Morphism(ModelVariety source, std::vector<int> kept, ModelVariety target)
      : src_(std::move(source)), tgt_(std::move(target)), kept_(std::move(kept)) {
    if (static_cast<int>(kept_.size()) != tgt_.factors())
      throw std::invalid_argument("Morphism: kept-factor list must match target arity");
    std::vector<bool> used(static_cast<size_t>(src_.factors()), false);
    for (size_t i = 0; i < kept_.size(); ++i) {
      int j = kept_[i];
      if (j < 0 || j >= src_.factors() || used[static_cast<size_t>(j)])
        throw std::invalid_argument("Morphism: kept factors must be distinct source factors");
      used[static_cast<size_t>(j)] = true;
      if (src_.factor_dim(j) > tgt_.factor_dim(static_cast<int>(i)))
        throw std::invalid_argument("Morphism: embedding requires source dim <= target dim");
    }
  }

  static Morphism identity(const ModelVariety& X) {
    std::vector<int> kept(static_cast<size_t>(X.factors()));
    for (int j = 0; j < X.factors(); ++j) kept[static_cast<size_t>(j)] = j;
    return Morphism(X, kept, X);
  }

  // Drop all source factors not listed; target keeps the listed dims.
  static Morphism projection(const ModelVariety& X, const std::vector<int>& kept) {
    std::vector<int> dims;
    dims.reserve(kept.size());
    for (int j : kept) dims.push_back(X.factor_dim(j));
    return Morphism(X, kept, ModelVariety(dims));
  }

  // Factor-wise linear embedding; arities must agree.
  static Morphism linear_embedding(const ModelVariety& sub, const ModelVariety& ambient) {
    if (sub.factors() != ambient.factors())
      throw std::invalid_argument("linear_embedding: factor count mismatch");
    std::vector<int> kept(static_cast<size_t>(sub.factors()));
    for (int j = 0; j < sub.factors(); ++j) kept[static_cast<size_t>(j)] = j;
    return Morphism(sub, kept, ambient);
  }

  const ModelVariety& source() const { return src_; }
  const ModelVariety& target() const { return tgt_; }
  int relative_dim() const { return src_.dim() - tgt_.dim(); }
  bool is_embedding() const { return static_cast<int>(kept_.size()) == src_.factors(); }

  std::string str() const { return src_.name() + " -> " + tgt_.name(); }

  // l.c.i. pullback on Chow rings: h_i -> h_{kept[i]}, truncated by the
  // source nilpotency.
  template <class K>
  ChowElt<K> pullback(const ChowElt<K>& x) const {
    require(x.variety(), tgt_, "pullback");
    ChowElt<K> r(x.field(), src_);
    for (const auto& [e, c] : x.terms()) {
      Expo es = src_.zero_expo();
      bool dead = false;
      for (size_t i = 0; i < kept_.size(); ++i) {
        if (e[i] > src_.factor_dim(kept_[i])) {
          dead = true;
          break;
        }
        es[static_cast<size_t>(kept_[i])] = e[i];
      }
      if (!dead) r.add_term(es, c);
    }
    return r;
  }

  // Projective pushforward on Chow groups. A monomial pushes forward iff the
  // dropped factors carry their point class; kept factors shift by the
  // embedding codimension.
  template <class K>
  ChowElt<K> pushforward(const ChowElt<K>& x) const {
    require(x.variety(), src_, "pushforward");
    std::vector<int> kept_of_source(static_cast<size_t>(src_.factors()), -1);
    for (size_t i = 0; i < kept_.size(); ++i) kept_of_source[static_cast<size_t>(kept_[i])] = static_cast<int>(i);
    ChowElt<K> r(x.field(), tgt_);
    for (const auto& [e, c] : x.terms()) {
      Expo et = tgt_.zero_expo();
      bool dead = false;
      for (int j = 0; j < src_.factors(); ++j) {
        int i = kept_of_source[static_cast<size_t>(j)];
        if (i < 0) {
          if (e[static_cast<size_t>(j)] != src_.factor_dim(j)) {
            dead = true;
            break;
          }
        } else {
          et[static_cast<size_t>(i)] =
              e[static_cast<size_t>(j)] + (tgt_.factor_dim(i) - src_.factor_dim(j));
        }
      }
      if (!dead) r.add_term(et, c);
    }
    return r;
  }

  // Pushforward on K0': [[I]] -> [[I on kept factors]]. Linear subspaces map
  // to linear subspaces and chi(O) of every dropped linear factor is 1, so
  // index tuples restrict; the filtration can only drop.
  KHomElt pushforward(const KHomElt& x) const {
    require(x.variety(), src_, "pushforward");
    KHomElt r(tgt_);
    for (const auto& [I, c] : x.terms()) {
      Expo It = tgt_.zero_expo();
      for (size_t i = 0; i < kept_.size(); ++i) It[i] = I[static_cast<size_t>(kept_[i])];
      r.add_term(It, c);
    }
    return r;
  }

  // Virtual tangent bundle T_f on the source: relative tangent of the
  // projection minus the pulled-back normal bundle of the embedding.
  VirtualBundle tangent() const {
    VirtualBundle t(src_);
    std::vector<bool> kept_flag(static_cast<size_t>(src_.factors()), false);
    for (size_t i = 0; i < kept_.size(); ++i) {
      kept_flag[static_cast<size_t>(kept_[i])] = true;
      const int codim = tgt_.factor_dim(static_cast<int>(i)) - src_.factor_dim(kept_[i]);
      if (codim > 0) {
        Expo tw = src_.zero_expo();
        tw[static_cast<size_t>(kept_[i])] = 1;
        t.add(tw, -codim);  // N = O(1)^codim on each embedded factor
      }
    }
    for (int j = 0; j < src_.factors(); ++j) {
      if (kept_flag[static_cast<size_t>(j)]) continue;
      Expo tw = src_.zero_expo();
      tw[static_cast<size_t>(j)] = 1;
      t.add(tw, src_.factor_dim(j) + 1);
      t.add(src_.zero_expo(), -1);
    }
    return t;
  }

 private:
  static void require(const ModelVariety& got, const ModelVariety& want, const char* what) {
    if (got != want)
      throw std::invalid_argument(std::string(what) + ": element lives on " + got.name() +
                                  ", expected " + want.name());
  }

  ModelVariety src_, tgt_;
  std::vector<int> kept_;
};

}  // namespace chern
