// Chow rings of model varieties: polynomials in the hyperplane classes
// h_1..h_k subject to h_j^{n_j+1} = 0, graded by codimension. Coefficients
// live in an exact field (Q or Z/p) carried by the element.
#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chern/field.hpp"
#include "chern/variety.hpp"

namespace chern {
namespace detail {

// Shared algebra of coefficient maps over an exponent box. Exponents outside
// the box are identically zero (nilpotency), zero coefficients are pruned.
template <class K>
struct BoxAlgebra {
  using Elem = typename K::Elem;
  using Terms = std::map<Expo, Elem>;

  static void accumulate(const K& f, Terms& t, const Expo& e, const Elem& c) {
    if (f.is_zero(c)) return;
    auto it = t.find(e);
    if (it == t.end()) {
      t.emplace(e, c);
    } else {
      it->second = f.add(it->second, c);
      if (f.is_zero(it->second)) t.erase(it);
    }
  }

  static Terms add(const K& f, const Terms& a, const Terms& b) {
    Terms r = a;
    for (const auto& [e, c] : b) accumulate(f, r, e, c);
    return r;
  }

  static Terms negate(const K& f, const Terms& a) {
    Terms r;
    for (const auto& [e, c] : a) r.emplace(e, f.neg(c));
    return r;
  }

  static Terms scale(const K& f, const Terms& a, const Elem& s) {
    Terms r;
    if (f.is_zero(s)) return r;
    for (const auto& [e, c] : a) {
      Elem v = f.mul(c, s);
      if (!f.is_zero(v)) r.emplace(e, v);
    }
    return r;
  }

  static Terms mul(const K& f, const std::vector<int>& bounds, const Terms& a, const Terms& b) {
    Terms r;
    Expo e(bounds.size(), 0);
    for (const auto& [ea, ca] : a) {
      for (const auto& [eb, cb] : b) {
        bool dead = false;
        for (size_t j = 0; j < bounds.size(); ++j) {
          e[j] = ea[j] + eb[j];
          if (e[j] > bounds[j]) {
            dead = true;
            break;
          }
        }
        if (dead) continue;
        accumulate(f, r, e, f.mul(ca, cb));
      }
    }
    return r;
  }

  static Terms one(const K& f, const std::vector<int>& bounds) {
    Terms r;
    r.emplace(Expo(bounds.size(), 0), f.one());
    return r;
  }

  static Terms power(const K& f, const std::vector<int>& bounds, Terms base, long exp) {
    Terms r = one(f, bounds);
    while (exp) {
      if (exp & 1) r = mul(f, bounds, r, base);
      exp >>= 1;
      if (exp) base = mul(f, bounds, base, base);
    }
    return r;
  }

  // Inverse of a unit: constant term invertible, the rest nilpotent of
  // index <= dim+1, so the geometric series terminates.
  static Terms invert(const K& f, const std::vector<int>& bounds, int dim, const Terms& a) {
    Expo zero(bounds.size(), 0);
    auto it = a.find(zero);
    if (it == a.end() || f.is_zero(it->second))
      throw std::domain_error("inverse: constant term is not invertible");
    const Elem c0inv = f.inv(it->second);
    Terms u = scale(f, a, c0inv);  // 1 + nilpotent
    u.erase(zero);
    Terms acc = one(f, bounds);
    Terms pw = one(f, bounds);
    for (int m = 1; m <= dim && !u.empty(); ++m) {
      pw = mul(f, bounds, pw, u);
      if (pw.empty()) break;
      acc = (m % 2 == 1) ? add(f, acc, negate(f, pw)) : add(f, acc, pw);
    }
    return scale(f, acc, c0inv);
  }
};

}  // namespace detail

template <class K>
class ChowElt {
 public:
  using Elem = typename K::Elem;
  using Alg = detail::BoxAlgebra<K>;

  ChowElt(K field, ModelVariety X) : field_(field), X_(std::move(X)) {}

  static ChowElt unit(K field, const ModelVariety& X) {  // the class [X]
    ChowElt r(field, X);
    r.terms_ = Alg::one(field, X.factor_dims());
    return r;
  }

  static ChowElt monomial(K field, const ModelVariety& X, const Expo& e, const Elem& c) {
    X.require_expo(e, "ChowElt::monomial");
    ChowElt r(field, X);
    if (!field.is_zero(c)) r.terms_.emplace(e, c);
    return r;
  }

  static ChowElt hyperplane(K field, const ModelVariety& X, int j) {
    if (j < 0 || j >= X.factors())
      throw std::invalid_argument("hyperplane index out of range for " + X.name());
    Expo e = X.zero_expo();
    if (X.factor_dim(j) == 0) return ChowElt(field, X);  // h = 0 on P^0
    e[static_cast<size_t>(j)] = 1;
    return monomial(field, X, e, field.one());
  }

  // Class of the product of linear subspaces of dimensions I: h^{n-I}.
  static ChowElt subspace_class(K field, const ModelVariety& X, const Expo& subspace_dims) {
    X.require_expo(subspace_dims, "ChowElt::subspace_class");
    Expo e = X.full_expo();
    for (size_t j = 0; j < e.size(); ++j) e[j] -= subspace_dims[j];
    return monomial(field, X, e, field.one());
  }

  const K& field() const { return field_; }
  const ModelVariety& variety() const { return X_; }
  const std::map<Expo, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Elem coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(const Expo& e, const Elem& c) {
    X_.require_expo(e, "ChowElt::add_term");
    Alg::accumulate(field_, terms_, e, c);
  }

  ChowElt operator+(const ChowElt& o) const {
    check(o);
    ChowElt r(field_, X_);
    r.terms_ = Alg::add(field_, terms_, o.terms_);
    return r;
  }
  ChowElt operator-(const ChowElt& o) const { return *this + (-o); }
  ChowElt operator-() const {
    ChowElt r(field_, X_);
    r.terms_ = Alg::negate(field_, terms_);
    return r;
  }
  ChowElt operator*(const ChowElt& o) const {
    check(o);
    ChowElt r(field_, X_);
    r.terms_ = Alg::mul(field_, X_.factor_dims(), terms_, o.terms_);
    return r;
  }
  ChowElt scale(const Elem& a) const {
    ChowElt r(field_, X_);
    r.terms_ = Alg::scale(field_, terms_, a);
    return r;
  }
  ChowElt pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    ChowElt r(field_, X_);
    r.terms_ = Alg::power(field_, X_.factor_dims(), terms_, e);
    return r;
  }
  ChowElt inverse() const {
    ChowElt r(field_, X_);
    r.terms_ = Alg::invert(field_, X_.factor_dims(), X_.dim(), terms_);
    return r;
  }

  bool operator==(const ChowElt& o) const {
    check(o);
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
      if (e != it->first || !field_.eq(c, it->second)) return false;
      ++it;
    }
    return true;
  }
  bool operator!=(const ChowElt& o) const { return !(*this == o); }

  // Codimension component (total h-degree c).
  ChowElt component_codim(int c) const {
    ChowElt r(field_, X_);
    for (const auto& [e, v] : terms_)
      if (expo_total(e) == c) r.terms_.emplace(e, v);
    return r;
  }
  // Homological component: dimension d means codimension dim - d.
  ChowElt component_homdim(int d) const { return component_codim(X_.dim() - d); }

  bool is_homogeneous(int* codim_out = nullptr) const {
    if (terms_.empty()) {
      if (codim_out) *codim_out = 0;
      return true;
    }
    int c = expo_total(terms_.begin()->first);
    for (const auto& [e, v] : terms_)
      if (expo_total(e) != c) return false;
    if (codim_out) *codim_out = c;
    return true;
  }

  // Degree map on the 0-dimensional part: coefficient of the point class.
  Elem degree() const { return coeff(X_.full_expo()); }

  std::vector<Rational> coordinates() const
    requires std::is_same_v<K, RationalField>
  {
    std::vector<Rational> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.push_back(c);
    return out;
  }

  // External product: concatenates exponent tuples bilinearly.
  ChowElt external(const ChowElt& o) const {
    require_same_field(field_, o.field_, "external product");
    ChowElt r(field_, X_.product(o.X_));
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        Expo e = ea;
        e.insert(e.end(), eb.begin(), eb.end());
        r.terms_.emplace(std::move(e), field_.mul(ca, cb));
      }
    }
    return r;
  }

  std::string str(const std::string& sym = "h") const {
    if (terms_.empty()) return "0";
    // display order: by codimension, then first factors first
    std::vector<std::pair<Expo, Elem>> sorted(terms_.begin(), terms_.end());
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
      std::string cs = field_.str(c);
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
        os << sym << (j + 1);
        if (e[j] > 1) os << "^" << e[j];
      }
    }
    return os.str();
  }

 private:
  void check(const ChowElt& o) const {
    require_same_field(field_, o.field_, "Chow arithmetic");
    if (X_ != o.X_)
      throw std::invalid_argument("Chow arithmetic: elements live on different varieties (" +
                                  X_.name() + " vs " + o.X_.name() + ")");
  }

  K field_;
  ModelVariety X_;
  std::map<Expo, Elem> terms_;
};

using ChowQ = ChowElt<RationalField>;
using ChowFp = ChowElt<PrimeField>;

// Valuation of a Q-class: minimum over coefficients in the monomial basis.
inline Valuation vp(const ChowQ& x, long p) { return vp_module(x.coordinates(), p); }

// Coefficient-wise image in Z_(p)/pZ_(p) = Z/p; defined on the lattice
// v_p >= 0 only (models are torsion-free, so this is the whole story).
inline ChowFp reduce_mod_p_lattice(const ChowQ& x, const PrimeField& F) {
  if (!(vp(x, F.p()) >= 0))
    throw std::domain_error("reduce_mod_p_lattice: negative valuation at p=" +
                            std::to_string(F.p()));
  ChowFp r(F, x.variety());
  for (const auto& [e, c] : x.terms()) r.add_term(e, F.from_rational(c));
  return r;
}

// Canonical integer lift of a mod-p class (coefficients 0..p-1).
inline ChowQ lift_mod_p(const ChowFp& x) {
  ChowQ r(RationalField{}, x.variety());
  for (const auto& [e, c] : x.terms()) r.add_term(e, Rational(c));
  return r;
}

// sum_d s_d * x^d; finite because positive-codimension classes are nilpotent.
template <class K, class Series>
ChowElt<K> evaluate_series(const Series& s, const ChowElt<K>& x) {
  ChowElt<K> acc(x.field(), x.variety());
  ChowElt<K> pw = ChowElt<K>::unit(x.field(), x.variety());
  const int top = std::min<long>(s.order(), x.variety().dim());
  acc = pw.scale(s.coeff(0));
  for (int d = 1; d <= top; ++d) {
    pw = pw * x;
    if (pw.is_zero()) break;
    acc = acc + pw.scale(s.coeff(d));
  }
  return acc;
}

}  // namespace chern
