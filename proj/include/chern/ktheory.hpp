// K-theory of model varieties.
//
// K0(X) is represented in the canonical basis (1-t_1)^{m_1}...(1-t_k)^{m_k},
// 0 <= m_j <= n_j, where t_j is the class of O_j(-1); the relations
// (1-t_j)^{n_j+1} = 0 make this the same bounded-exponent algebra as the
// Chow ring. K0'(X) carries the basis [[I]] = [O_{L_I}] of structure sheaves
// of products of linear subspaces; the Koszul resolution identifies
// [[I]] with (1-t)^{n-I}, so the two sides translate monomial-by-monomial
// and the topological filtration of [[I]] is |I| on the nose.
#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chern/chow.hpp"
#include "chern/series.hpp"
#include "chern/variety.hpp"

namespace chern {

class KCohElt {
 public:
  using Alg = detail::BoxAlgebra<RationalField>;

  explicit KCohElt(ModelVariety X) : X_(std::move(X)) {}

  static KCohElt unit(const ModelVariety& X) {
    KCohElt r(X);
    r.terms_ = Alg::one(RationalField{}, X.factor_dims());
    return r;
  }

  // (1-t)-monomial with exponent tuple m.
  static KCohElt s_monomial(const ModelVariety& X, const Expo& m, const Rational& c) {
    X.require_expo(m, "KCohElt::s_monomial");
    KCohElt r(X);
    if (c != 0) r.terms_.emplace(m, c);
    return r;
  }

  // Class of the line bundle O(a): prod_j t_j^{-a_j} expanded in the
  // (1-t)-basis via (1-s)^e = sum_m C(e, m) (-s)^m, e of either sign.
  static KCohElt line_bundle(const ModelVariety& X, const Expo& twist) {
    if (static_cast<int>(twist.size()) != X.factors())
      throw std::invalid_argument("line_bundle: twist arity mismatch on " + X.name());
    KCohElt r = unit(X);
    for (int j = 0; j < X.factors(); ++j) {
      KCohElt f(X);
      const long e = -twist[static_cast<size_t>(j)];  // t^{-a} = (1-s)^{-a}
      Expo mono = X.zero_expo();
      for (int m = 0; m <= X.factor_dim(j); ++m) {
        mono[static_cast<size_t>(j)] = m;
        BigInt b = binomial(BigInt(e), m);
        if (m % 2 == 1) b = -b;
        if (b != 0) f.terms_.emplace(mono, Rational(b));
      }
      r = r * f;
    }
    return r;
  }

  const ModelVariety& variety() const { return X_; }
  const std::map<Expo, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Expo& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void add_term(const Expo& m, const Rational& c) {
    X_.require_expo(m, "KCohElt::add_term");
    Alg::accumulate(RationalField{}, terms_, m, c);
  }

  KCohElt operator+(const KCohElt& o) const {
    check(o);
    KCohElt r(X_);
    r.terms_ = Alg::add(RationalField{}, terms_, o.terms_);
    return r;
  }
  KCohElt operator-(const KCohElt& o) const { return *this + (-o); }
  KCohElt operator-() const {
    KCohElt r(X_);
    r.terms_ = Alg::negate(RationalField{}, terms_);
    return r;
  }
  KCohElt operator*(const KCohElt& o) const {
    check(o);
    KCohElt r(X_);
    r.terms_ = Alg::mul(RationalField{}, X_.factor_dims(), terms_, o.terms_);
    return r;
  }
  KCohElt scale(const Rational& a) const {
    KCohElt r(X_);
    r.terms_ = Alg::scale(RationalField{}, terms_, a);
    return r;
  }
  KCohElt pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    KCohElt r(X_);
    r.terms_ = Alg::power(RationalField{}, X_.factor_dims(), terms_, e);
    return r;
  }
  KCohElt inverse() const {
    KCohElt r(X_);
    r.terms_ = Alg::invert(RationalField{}, X_.factor_dims(), X_.dim(), terms_);
    return r;
  }
  bool operator==(const KCohElt& o) const {
    check(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const KCohElt& o) const { return !(*this == o); }

  // Rank of the virtual sheaf: the augmentation t_j -> 1, i.e. s_j -> 0.
  Rational augmentation() const { return coeff(X_.zero_expo()); }

  // Re-expresses the element in the monomial basis t^a, 0 <= a_j <= n_j.
  std::map<Expo, Rational> t_monomials() const {
    detail::BoxAlgebra<RationalField>::Terms out;
    for (const auto& [m, c] : terms_) {
      // (1-t)^m = sum_a C(m,a) (-t)^a, per factor
      std::vector<std::pair<Expo, Rational>> partial{{X_.zero_expo(), c}};
      for (int j = 0; j < X_.factors(); ++j) {
        std::vector<std::pair<Expo, Rational>> next;
        for (const auto& [e, v] : partial) {
          for (int a = 0; a <= m[static_cast<size_t>(j)]; ++a) {
            Expo e2 = e;
            e2[static_cast<size_t>(j)] = a;
            BigInt b = binomial(BigInt(m[static_cast<size_t>(j)]), a);
            if (a % 2 == 1) b = -b;
            next.emplace_back(std::move(e2), v * Rational(b));
          }
        }
        partial = std::move(next);
      }
      for (auto& [e, v] : partial)
        Alg::accumulate(RationalField{}, out, e, v);
    }
    return out;
  }

  std::string str() const {
    auto tm = t_monomials();
    if (tm.empty()) return "0";
    std::vector<std::pair<Expo, Rational>> sorted(tm.begin(), tm.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      const int ta = expo_total(a.first), tb = expo_total(b.first);
      if (ta != tb) return ta < tb;
      return b.first < a.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted) {
      if (!first) os << " + ";
      first = false;
      std::string cs = to_string(c);
      bool has_vars = expo_total(e) > 0;
      if (!has_vars) {
        os << cs;
        continue;
      }
      bool coef_shown = cs != "1";
      if (coef_shown) os << cs;
      bool first_var = true;
      for (size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (coef_shown || !first_var) os << "*";
        first_var = false;
        os << "t" << (j + 1);
        if (e[j] > 1) os << "^" << e[j];
      }
    }
    return os.str();
  }

 private:
  void check(const KCohElt& o) const {
    if (X_ != o.X_)
      throw std::invalid_argument("K arithmetic: elements live on different varieties (" +
                                  X_.name() + " vs " + o.X_.name() + ")");
  }

  ModelVariety X_;
  std::map<Expo, Rational> terms_;
};

// ---------------------------------------------------------------------------
// K0'(X): the linear-subspace basis with its topological filtration.

class KHomElt {
 public:
  explicit KHomElt(ModelVariety X) : X_(std::move(X)) {}

  static KHomElt basis(const ModelVariety& X, const Expo& subspace_dims) {
    X.require_expo(subspace_dims, "KHomElt::basis");
    KHomElt r(X);
    r.c_.emplace(subspace_dims, Rational(1));
    return r;
  }

  static KHomElt structure_sheaf(const ModelVariety& X) { return basis(X, X.full_expo()); }

  const ModelVariety& variety() const { return X_; }
  const std::map<Expo, Rational>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Rational coeff(const Expo& I) const {
    auto it = c_.find(I);
    return it == c_.end() ? Rational(0) : it->second;
  }
  void add_term(const Expo& I, const Rational& v) {
    X_.require_expo(I, "KHomElt::add_term");
    detail::BoxAlgebra<RationalField>::accumulate(RationalField{}, c_, I, v);
  }

  KHomElt operator+(const KHomElt& o) const {
    check(o);
    KHomElt r(X_);
    r.c_ = detail::BoxAlgebra<RationalField>::add(RationalField{}, c_, o.c_);
    return r;
  }
  KHomElt operator-(const KHomElt& o) const { return *this + o.scale(-1); }
  KHomElt scale(const Rational& a) const {
    KHomElt r(X_);
    r.c_ = detail::BoxAlgebra<RationalField>::scale(RationalField{}, c_, a);
    return r;
  }
  bool operator==(const KHomElt& o) const {
    check(o);
    return c_ == o.c_;
  }
  bool operator!=(const KHomElt& o) const { return !(*this == o); }

  // Max |I| over the support: the level of x in the topological filtration.
  int filtration_level() const {
    if (c_.empty()) throw std::domain_error("filtration_level: undefined for the zero element");
    int m = 0;
    for (const auto& [I, v] : c_) m = std::max(m, expo_total(I));
    return m;
  }

  KHomElt external(const KHomElt& o) const {
    KHomElt r(X_.product(o.X_));
    for (const auto& [Ia, ca] : c_)
      for (const auto& [Ib, cb] : o.c_) {
        Expo I = Ia;
        I.insert(I.end(), Ib.begin(), Ib.end());
        r.c_.emplace(std::move(I), ca * cb);
      }
    return r;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [I, v] : c_) {
      if (!first) os << " + ";
      first = false;
      if (v != 1) os << to_string(v) << "*";
      os << "OL(";
      for (size_t j = 0; j < I.size(); ++j) {
        if (j) os << ",";
        os << I[j];
      }
      os << ")";
    }
    return os.str();
  }

 private:
  void check(const KHomElt& o) const {
    if (X_ != o.X_)
      throw std::invalid_argument("K' arithmetic: elements live on different varieties");
  }

  ModelVariety X_;
  std::map<Expo, Rational> c_;
};

// Koszul identification [[I]] -> (1-t)^{n-I}; a monomial bijection, so the
// two conversions are exact mutual inverses.
inline KCohElt hom_to_coh(const KHomElt& x) {
  const ModelVariety& X = x.variety();
  KCohElt r(X);
  for (const auto& [I, c] : x.terms()) {
    Expo m = X.full_expo();
    for (size_t j = 0; j < m.size(); ++j) m[j] -= I[j];
    r.add_term(m, c);
  }
  return r;
}

inline KHomElt coh_to_hom(const KCohElt& x) {
  const ModelVariety& X = x.variety();
  KHomElt r(X);
  for (const auto& [m, c] : x.terms()) {
    Expo I = X.full_expo();
    for (size_t j = 0; j < I.size(); ++j) I[j] -= m[j];
    r.add_term(I, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Virtual bundles: formal Z-combinations of line-bundle classes, kept in
// line-bundle form so that genera and Bott classes can be evaluated by the
// splitting principle.

class VirtualBundle {
 public:
  explicit VirtualBundle(ModelVariety X) : X_(std::move(X)) {}

  static VirtualBundle line_bundle(const ModelVariety& X, const Expo& twist, long mult = 1) {
    if (static_cast<int>(twist.size()) != X.factors())
      throw std::invalid_argument("VirtualBundle: twist arity mismatch on " + X.name());
    VirtualBundle r(X);
    if (mult != 0) r.mult_.emplace(twist, mult);
    return r;
  }

  static VirtualBundle trivial(const ModelVariety& X, long rank) {
    return line_bundle(X, Expo(static_cast<size_t>(X.factors()), 0), rank);
  }

  const ModelVariety& variety() const { return X_; }
  const std::map<Expo, long>& parts() const { return mult_; }

  long rank() const {
    long r = 0;
    for (const auto& [a, m] : mult_) r += m;
    return r;
  }

  void add(const Expo& twist, long mult) {
    if (static_cast<int>(twist.size()) != X_.factors())
      throw std::invalid_argument("VirtualBundle::add: twist arity mismatch");
    auto it = mult_.find(twist);
    if (it == mult_.end()) {
      if (mult != 0) mult_.emplace(twist, mult);
    } else {
      it->second += mult;
      if (it->second == 0) mult_.erase(it);
    }
  }

  VirtualBundle operator+(const VirtualBundle& o) const {
    check(o);
    VirtualBundle r = *this;
    for (const auto& [a, m] : o.mult_) r.add(a, m);
    return r;
  }
  VirtualBundle operator-() const {
    VirtualBundle r(X_);
    for (const auto& [a, m] : mult_) r.mult_.emplace(a, -m);
    return r;
  }
  VirtualBundle operator-(const VirtualBundle& o) const { return *this + (-o); }
  VirtualBundle scale(long f) const {
    VirtualBundle r(X_);
    if (f != 0)
      for (const auto& [a, m] : mult_) r.mult_.emplace(a, m * f);
    return r;
  }

  // Monomial-wise l-th Adams image: O(a) -> O(l a).
  VirtualBundle adams(long l) const {
    VirtualBundle r(X_);
    for (const auto& [a, m] : mult_) {
      Expo la = a;
      for (int& v : la) v = static_cast<int>(v * l);
      r.add(la, m);
    }
    return r;
  }

  KCohElt to_kcoh() const {
    KCohElt r(X_);
    for (const auto& [a, m] : mult_)
      r = r + KCohElt::line_bundle(X_, a).scale(Rational(m));
    return r;
  }

  std::string str() const {
    if (mult_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, m] : mult_) {
      if (!first) os << " + ";
      first = false;
      if (m != 1) os << m << "*";
      os << "O(";
      for (size_t j = 0; j < a.size(); ++j) {
        if (j) os << ",";
        os << a[j];
      }
      os << ")";
    }
    return os.str();
  }

 private:
  void check(const VirtualBundle& o) const {
    if (X_ != o.X_)
      throw std::invalid_argument("VirtualBundle arithmetic: different varieties");
  }

  ModelVariety X_;
  std::map<Expo, long> mult_;
};

// Virtual tangent bundle of a product of projective spaces: the Euler
// sequences give T_X = sum_j ((n_j+1) O_j(1) - O).
inline VirtualBundle tangent_class(const ModelVariety& X) {
  VirtualBundle r(X);
  for (int j = 0; j < X.factors(); ++j) {
    Expo tw = X.zero_expo();
    tw[static_cast<size_t>(j)] = 1;
    r.add(tw, X.factor_dim(j) + 1);
    r.add(X.zero_expo(), -1);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Chern character and friends.

// First Chern class of O(a): sum_j a_j h_j.
template <class K>
ChowElt<K> c1(K field, const ModelVariety& X, const Expo& twist) {
  ChowElt<K> r(field, X);
  for (int j = 0; j < X.factors(); ++j) {
    if (twist[static_cast<size_t>(j)] == 0 || X.factor_dim(j) == 0) continue;
    Expo e = X.zero_expo();
    e[static_cast<size_t>(j)] = 1;
    r.add_term(e, field.from_long(twist[static_cast<size_t>(j)]));
  }
  return r;
}

// Cohomological Chern character: the ring map t_j -> e^{-h_j}, specified on
// the (1-t)-basis by s_j -> 1 - e^{-h_j}.
inline ChowQ ch_coh(const KCohElt& x) {
  const ModelVariety& X = x.variety();
  RationalField Q;
  // per-factor univariate pieces (1 - e^{-h_j})^m, m = 0..n_j
  std::vector<std::vector<ChowQ>> table(static_cast<size_t>(X.factors()));
  for (int j = 0; j < X.factors(); ++j) {
    ChowQ base(Q, X);
    for (int d = 1; d <= X.factor_dim(j); ++d) {
      Expo e = X.zero_expo();
      e[static_cast<size_t>(j)] = d;
      Rational c(1, factorial(d));
      base.add_term(e, d % 2 == 1 ? c : -c);  // -(-1)^d / d!
    }
    auto& row = table[static_cast<size_t>(j)];
    row.push_back(ChowQ::unit(Q, X));
    for (int m = 1; m <= X.factor_dim(j); ++m) row.push_back(row.back() * base);
  }
  ChowQ r(Q, X);
  for (const auto& [m, c] : x.terms()) {
    ChowQ term = ChowQ::unit(Q, X).scale(c);
    for (int j = 0; j < X.factors(); ++j)
      if (m[static_cast<size_t>(j)] > 0)
        term = term * table[static_cast<size_t>(j)][static_cast<size_t>(m[static_cast<size_t>(j)])];
    r = r + term;
  }
  return r;
}

// Multiplicative genus attached to a series Q with Q(0) = 1: value Q(c1) on
// line bundles, products over sums, inverses over negatives.
template <class K>
ChowElt<K> genus_apply(const TruncSeries<K>& Q, const VirtualBundle& u) {
  const ModelVariety& X = u.variety();
  if (Q.order() < X.dim())
    throw std::invalid_argument("genus_apply: series order " + std::to_string(Q.order()) +
                                " below dim " + std::to_string(X.dim()));
  if (!Q.field().eq(Q.coeff(0), Q.field().one()))
    throw std::domain_error("genus_apply: series must have constant term 1");
  ChowElt<K> r = ChowElt<K>::unit(Q.field(), X);
  for (const auto& [twist, mult] : u.parts()) {
    ChowElt<K> val = evaluate_series(Q, c1(Q.field(), X, twist));
    r = r * (mult >= 0 ? val.pow(mult) : val.inverse().pow(-mult));
  }
  return r;
}

inline ChowQ todd_class(const ModelVariety& X) {
  return genus_apply(todd_series(X.dim()), tangent_class(X));
}

template <class K>
ChowElt<K> r_genus(K field, const VirtualBundle& u) {
  return genus_apply(r_series(field, field.p(), u.variety().dim()), u);
}

template <class K>
ChowElt<K> w_genus(K field, const VirtualBundle& u) {
  return genus_apply(w_series(field, field.p(), u.variety().dim()), u);
}

// Homological Chern character of x in K0'(X): Td(T_X) . ch(hom_to_coh x),
// capped with [X]. Basis values are cached per variety.
inline const std::vector<ChowQ>& ch_basis_table(const ModelVariety& X) {
  static std::map<std::vector<int>, std::vector<ChowQ>> cache;
  auto it = cache.find(X.factor_dims());
  if (it != cache.end()) return it->second;
  std::vector<ChowQ> table;
  const ChowQ td = todd_class(X);
  for (const Expo& I : X.box()) {
    KHomElt b = KHomElt::basis(X, I);
    table.push_back(td * ch_coh(hom_to_coh(b)));
  }
  return cache.emplace(X.factor_dims(), std::move(table)).first->second;
}

inline std::size_t box_index(const ModelVariety& X, const Expo& e) {
  std::size_t idx = 0;
  for (int j = 0; j < X.factors(); ++j)
    idx = idx * static_cast<std::size_t>(X.factor_dim(j) + 1) + static_cast<std::size_t>(e[static_cast<size_t>(j)]);
  return idx;
}

inline ChowQ ch_hom_total(const KHomElt& x) {
  const ModelVariety& X = x.variety();
  const auto& table = ch_basis_table(X);
  ChowQ r(RationalField{}, X);
  for (const auto& [I, c] : x.terms()) r = r + table[box_index(X, I)].scale(c);
  return r;
}

// Graded pieces ch_i indexed by homological dimension i = 0..dim X.
inline std::vector<ChowQ> ch_hom(const KHomElt& x) {
  const ChowQ total = ch_hom_total(x);
  std::vector<ChowQ> out;
  for (int i = 0; i <= x.variety().dim(); ++i) out.push_back(total.component_homdim(i));
  return out;
}

// chi(O) via deg . ch_0; exact rational, integral on Z-inputs.
inline Rational euler_characteristic(const KHomElt& x) {
  return ch_hom_total(x).degree();
}

// ---------------------------------------------------------------------------
// Adams operations and Bott classes.

// psi^l on K0: the ring map sending each line-bundle monomial to its l-th
// tensor power; on the s-basis, s_j -> 1 - (1-s_j)^l.
inline KCohElt adams_coh(long l, const KCohElt& x) {
  if (l == 0) throw std::domain_error("adams_coh: l must be nonzero");
  const ModelVariety& X = x.variety();
  std::vector<std::vector<KCohElt>> table(static_cast<size_t>(X.factors()));
  for (int j = 0; j < X.factors(); ++j) {
    Expo tw = X.zero_expo();
    tw[static_cast<size_t>(j)] = -static_cast<int>(l);  // (1-s_j)^l = t_j^l = [O_j(-l)]
    KCohElt base = KCohElt::unit(X) - KCohElt::line_bundle(X, tw);
    auto& row = table[static_cast<size_t>(j)];
    row.push_back(KCohElt::unit(X));
    for (int m = 1; m <= X.factor_dim(j); ++m) row.push_back(row.back() * base);
  }
  KCohElt r(X);
  for (const auto& [m, c] : x.terms()) {
    KCohElt term = KCohElt::unit(X).scale(c);
    for (int j = 0; j < X.factors(); ++j)
      if (m[static_cast<size_t>(j)] > 0)
        term = term * table[static_cast<size_t>(j)][static_cast<size_t>(m[static_cast<size_t>(j)])];
    r = r + term;
  }
  return r;
}

// Bott's class theta^l(L) = t^l[L^dual] with t^l(x) = (1-x^l)/(1-x),
// extended multiplicatively; the augmentation of theta^l(u) is l^rank(u).
// For l < 0 the Laurent identity t^l(x) = -x^l t^{-l}(x) applies, with x a
// unit monomial.
inline KCohElt bott_class(long l, const VirtualBundle& u) {
  if (l == 0) throw std::domain_error("bott_class: l must be nonzero");
  const ModelVariety& X = u.variety();
  KCohElt r = KCohElt::unit(X);
  for (const auto& [twist, mult] : u.parts()) {
    // x = [L^dual] = [O(-a)]
    Expo dual = twist;
    for (int& v : dual) v = -v;
    KCohElt val(X);
    if (l > 0) {
      for (long m = 0; m < l; ++m) {
        Expo am = dual;
        for (size_t j = 0; j < am.size(); ++j) am[j] = static_cast<int>(m) * dual[j];
        val = val + KCohElt::line_bundle(X, am);
      }
    } else {
      KCohElt sum(X);
      for (long m = 0; m < -l; ++m) {
        Expo am = dual;
        for (size_t j = 0; j < am.size(); ++j) am[j] = static_cast<int>(m) * dual[j];
        sum = sum + KCohElt::line_bundle(X, am);
      }
      Expo al = dual;
      for (size_t j = 0; j < al.size(); ++j) al[j] = static_cast<int>(l) * dual[j];
      val = -(KCohElt::line_bundle(X, al) * sum);
    }
    r = r * (mult >= 0 ? val.pow(mult) : val.inverse().pow(-mult));
  }
  return r;
}

// Homological Adams operation: psi_l(x) = coh_to_hom(theta^l(-T_X) . psi^l(x)).
inline KHomElt adams_hom(long l, const KHomElt& x) {
  if (l == 0) throw std::domain_error("adams_hom: l must be nonzero");
  const ModelVariety& X = x.variety();
  const KCohElt twist = bott_class(l, -tangent_class(X));
  return coh_to_hom(twist * adams_coh(l, hom_to_coh(x)));
}

}  // namespace chern
