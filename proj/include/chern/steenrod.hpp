// Steenrod-type operations mod p on the Chow groups of model varieties.
//
// Three constructions live here and are cross-validated:
//   * t_op_hom (K-theoretic): lift a cycle class through the basis
//     correspondence [L_I] -> [[I]], take p^i ch_{q-i(p-1)} of the lift,
//     reduce mod p. Well defined because lifts differ by lower filtration.
//   * t_op_via_genus: on an l.c.i. cycle, the r-genus formula
//     T_i[Z] = r_i(-T_Z).[Z] pushed forward; operations commute with
//     projective pushforward.
//   * t_op_coh: the cohomological variant T^i = sum_j r_j(T_X) . T_{i-j}.
//
// The reference Steenrod action on these cellular models is the ring
// endomorphism S with S(h_j) = h_j + h_j^p; its graded components realize
// the classical axioms (S_0 = id, Cartan, x -> x + x^p on divisor classes).
// steenrod_inverse_* computes the left inverse T' of S via the triangular
// recursion T'_i = -sum_{j>=1} T'_{i-j} S_j. The homological realization of
// the total operation differs from S by the w-genus twist
// S_hom(y) = w(-T_X) . S(y); its inverse applied to [X] is what the
// fundamental-class formula T'[X] = r(-T_X).[X] is about.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chern/ktheory.hpp"
#include "chern/morphism.hpp"
#include "chern/numtheory.hpp"
#include "chern/report.hpp"
#include "chern/sampling.hpp"

namespace chern {

// ---------------------------------------------------------------------------
// The operations T_i.

// The operations exist for every i with i(p-1) <= dim X on these models.
// For i <= p-1 the defining integrality bound holds unconditionally (the
// codimension stays below p(p-1)); beyond that it is certified by the
// l.c.i. structure of the models.
inline bool certified_unconditionally(int i, long p) { return i * (p - 1) <= p * (p - 1) - 1; }

// K-theoretic construction on a homogeneous integer class of homological
// dimension q. i = 0 is reduction mod p; i(p-1) > q yields zero.
inline ChowFp t_op_hom(int i, const ChowQ& x, const PrimeField& F) {
  const ModelVariety& X = x.variety();
  int codim = 0;
  if (!x.is_homogeneous(&codim))
    throw std::invalid_argument("t_op_hom: input must be homogeneous");
  for (const auto& [e, c] : x.terms())
    if (!is_integer(c))
      throw std::invalid_argument("t_op_hom: input must have integer coefficients");
  if (i < 0) throw std::invalid_argument("t_op_hom: i must be >= 0");
  if (i == 0) return reduce_mod_p_lattice(x, F);

  const long p = F.p();
  const int q = X.dim() - codim;
  const int target = q - i * static_cast<int>(p - 1);
  if (target < 0) return ChowFp(F, X);

  // lift through the basis correspondence [L_I] -> [[I]]
  KHomElt lift(X);
  for (const auto& [e, c] : x.terms()) {
    Expo I = X.full_expo();
    for (size_t j = 0; j < I.size(); ++j) I[j] -= e[j];
    lift.add_term(I, c);
  }
  const ChowQ comp = ch_hom(lift)[static_cast<size_t>(target)]
                         .scale(Rational(int_pow(BigInt(p), i)));
  return reduce_mod_p_lattice(comp, F);
}

// Additive extension to inhomogeneous integer classes.
inline ChowFp t_op_hom_any(int i, const ChowQ& x, const PrimeField& F) {
  ChowFp r(F, x.variety());
  for (int c = 0; c <= x.variety().dim(); ++c) {
    const ChowQ comp = x.component_codim(c);
    if (!comp.is_zero()) r = r + t_op_hom(i, comp, F);
  }
  return r;
}

inline ChowFp t_op_hom(int i, const ChowFp& x) {
  return t_op_hom_any(i, lift_mod_p(x), PrimeField(x.field()));
}

// Genus construction on a basis cycle: the subvariety L_I is itself a model,
// and T_i[L_I] = pushforward of r_i(-T_{L_I}) . [L_I].
inline ChowFp t_op_via_genus(int i, const Expo& subspace_dims, const ModelVariety& X,
                             const PrimeField& F) {
  X.require_expo(subspace_dims, "t_op_via_genus");
  if (i < 0) throw std::invalid_argument("t_op_via_genus: i must be >= 0");
  const ModelVariety L{std::vector<int>(subspace_dims.begin(), subspace_dims.end())};
  const Morphism incl = Morphism::linear_embedding(L, X);
  const ChowFp rg = r_genus(F, -tangent_class(L));
  const ChowFp comp = rg.component_codim(i * static_cast<int>(F.p() - 1));
  return incl.pushforward(comp);
}

// Cohomological operation T^i = sum_{j=0}^i r_j(T_X) . T_{i-j}.
inline ChowFp t_op_coh(int i, const ChowFp& x) {
  const ModelVariety& X = x.variety();
  const PrimeField F(x.field());
  const ChowFp rg = r_genus(F, tangent_class(X));
  ChowFp r(F, X);
  for (int j = 0; j <= i; ++j) {
    const ChowFp rj = rg.component_codim(j * static_cast<int>(F.p() - 1));
    if (rj.is_zero()) continue;
    r = r + rj * t_op_hom(i - j, x);
  }
  return r;
}

// ---------------------------------------------------------------------------
// The reference Steenrod action and its inverse.

// Total operation: the ring endomorphism with h_j -> h_j + h_j^p.
inline ChowFp steenrod_total(const ChowFp& x) {
  const ModelVariety& X = x.variety();
  const PrimeField F(x.field());
  const long p = F.p();
  // (h_j + h_j^p)^e per factor, expanded once
  std::vector<std::vector<ChowFp>> table(static_cast<size_t>(X.factors()));
  for (int j = 0; j < X.factors(); ++j) {
    ChowFp base = ChowElt<PrimeField>::hyperplane(F, X, j);
    ChowFp hp = base.pow(p);
    base = base + hp;
    auto& row = table[static_cast<size_t>(j)];
    row.push_back(ChowFp::unit(F, X));
    for (int e = 1; e <= X.factor_dim(j); ++e) row.push_back(row.back() * base);
  }
  ChowFp r(F, X);
  for (const auto& [e, c] : x.terms()) {
    ChowFp term = ChowFp::unit(F, X).scale(c);
    for (int j = 0; j < X.factors(); ++j)
      if (e[static_cast<size_t>(j)] > 0)
        term = term * table[static_cast<size_t>(j)][static_cast<size_t>(e[static_cast<size_t>(j)])];
    r = r + term;
  }
  return r;
}

// Graded piece S_n: raises codimension by n(p-1); S_0 = id.
inline ChowFp steenrod_component(int n, const ChowFp& x) {
  const ModelVariety& X = x.variety();
  const PrimeField F(x.field());
  const int shift = n * static_cast<int>(F.p() - 1);
  ChowFp r(F, X);
  for (int c = 0; c <= X.dim(); ++c) {
    const ChowFp part = x.component_codim(c);
    if (part.is_zero()) continue;
    r = r + steenrod_total(part).component_codim(c + shift);
  }
  return r;
}

// Components of the inverse of a graded unipotent total operation, by the
// recursion T'_i = -sum_{j=1}^i T'_{i-j} . S_j. Op(n, x) must be the n-th
// graded component of the operation being inverted.
inline ChowFp graded_inverse_component(
    int i, const ChowFp& x, const std::function<ChowFp(int, const ChowFp&)>& op) {
  if (i == 0) return x;
  const PrimeField F(x.field());
  ChowFp acc(F, x.variety());
  for (int j = 1; j <= i; ++j) {
    const ChowFp sj = op(j, x);
    if (sj.is_zero()) continue;
    acc = acc + graded_inverse_component(i - j, sj, op);
  }
  return -acc;
}

inline ChowFp steenrod_inverse_component(int i, const ChowFp& x) {
  return graded_inverse_component(i, x, [](int n, const ChowFp& y) {
    return steenrod_component(n, y);
  });
}

// Total inverse T' = sum_i T'_i (finitely many terms act).
inline ChowFp steenrod_inverse_total(const ChowFp& x) {
  const PrimeField F(x.field());
  ChowFp r(F, x.variety());
  const long p = F.p();
  for (int i = 0; i * (p - 1) <= x.variety().dim(); ++i)
    r = r + steenrod_inverse_component(i, x);
  return r;
}

// Reduced Steenrod recursion: rebuilds the graded components of the action
// from the components of its inverse, S_n(x) = -sum_{i=1}^n T'_i S_{n-i}(x),
// S_0 = id. Inverse-of-inverse: summing these must reproduce steenrod_total.
inline ChowFp steenrod_from_inverse(int n, const ChowFp& x) {
  return graded_inverse_component(n, x, [](int i, const ChowFp& y) {
    return steenrod_inverse_component(i, y);
  });
}

// Homological realization on a smooth model: S_hom(y) = w(-T_X) . S(y);
// its graded inverse is what acts on fundamental classes.
inline ChowFp steenrod_hom_component(int n, const ChowFp& x) {
  const ModelVariety& X = x.variety();
  const PrimeField F(x.field());
  const ChowFp w = w_genus(F, -tangent_class(X));
  const int shift = n * static_cast<int>(F.p() - 1);
  ChowFp r(F, X);
  for (int c = 0; c <= X.dim(); ++c) {
    const ChowFp part = x.component_codim(c);
    if (part.is_zero()) continue;
    r = r + (w * steenrod_total(part)).component_codim(c + shift);
  }
  return r;
}

inline ChowFp steenrod_hom_inverse_component(int i, const ChowFp& x) {
  return graded_inverse_component(i, x, [](int n, const ChowFp& y) {
    return steenrod_hom_component(n, y);
  });
}

inline ChowFp steenrod_hom_inverse_total(const ChowFp& x) {
  const PrimeField F(x.field());
  ChowFp r(F, x.variety());
  const long p = F.p();
  for (int i = 0; i * (p - 1) <= x.variety().dim(); ++i)
    r = r + steenrod_hom_inverse_component(i, x);
  return r;
}

// ---------------------------------------------------------------------------
// Checks.

// Pipeline agreement: the K-theoretic and the genus construction produce the
// same class on every basis cycle.
inline CheckReport check_pipelines_agree(const ModelVariety& X, long p) {
  PrimeField F(p);
  CheckReport rep;
  rep.check = "pipelines-agree";
  rep.param("variety", X.name());
  rep.param("p", p);
  int lci_only = 0;
  for (int i = 0; i * (p - 1) <= X.dim(); ++i)
    if (!certified_unconditionally(i, p)) ++lci_only;
  rep.param("lci_certified_range", lci_only);
  RationalField Q;
  for (const Expo& I : X.box()) {
    const int q = expo_total(I);  // homological dimension of [L_I]
    for (int i = 0; i * (p - 1) <= q; ++i) {
      Expo e = X.full_expo();
      for (size_t j = 0; j < e.size(); ++j) e[j] -= I[j];
      const ChowFp via_k = t_op_hom(i, ChowQ::monomial(Q, X, e, Rational(1)), F);
      const ChowFp via_g = t_op_via_genus(i, I, X, F);
      if (via_k == via_g)
        rep.pass();
      else
        rep.fail("I=" + expo_str(I) + " i=" + std::to_string(i),
                 via_k.str() + " != " + via_g.str());
    }
  }
  return rep;
}

// Well-definedness of the lift: perturbing the lift by lower filtration
// changes p^i ch_{q-i(p-1)} by an element of p . lattice.
inline CheckReport check_lift_independence(const ModelVariety& X, long p, std::uint64_t seed,
                                           int cases = 100) {
  PrimeField F(p);
  CheckReport rep;
  rep.check = "well-defined";
  rep.seed = seed;
  rep.param("variety", X.name());
  rep.param("p", p);
  for (int c = 0; c < cases; ++c) {
    auto rng = case_rng(seed, "well-defined/" + X.name() + "/" + std::to_string(p) + "/" +
                                  std::to_string(c));
    // random homogeneous dimension q and basis lift of that dimension
    KHomElt base = random_khom(X, rng);
    const int q = base.filtration_level();
    KHomElt lift(X);
    for (const auto& [I, v] : base.terms())
      if (expo_total(I) == q) lift.add_term(I, v);
    if (q == 0) {
      rep.pass();  // no room for a lower-filtration perturbation
      continue;
    }
    // random perturbation strictly below filtration q
    KHomElt delta(X);
    const auto box = X.box();
    for (int t = 0; t < 3; ++t) {
      const auto& I = box[static_cast<size_t>(rng.next_in(0, static_cast<long>(box.size()) - 1))];
      if (expo_total(I) <= q - 1) delta.add_term(I, Rational(rng.nonzero_in(-9, 9)));
    }
    bool ok = true;
    std::string detail;
    for (int i = 1; i * (p - 1) <= q; ++i) {
      const int target = q - i * static_cast<int>(p - 1);
      const Rational pi = Rational(int_pow(BigInt(p), i));
      const ChowQ a = ch_hom(lift)[static_cast<size_t>(target)].scale(pi);
      const ChowQ b = ch_hom(lift + delta)[static_cast<size_t>(target)].scale(pi);
      if (!(vp(a - b, p) >= 1)) {
        ok = false;
        detail = "difference not in p.lattice at i=" + std::to_string(i);
        break;
      }
    }
    if (ok)
      rep.pass();
    else
      rep.fail("random " + std::to_string(c), detail);
  }
  return rep;
}

// Cartan formulas: homological T_i on external products, cohomological T^i
// on products within one smooth model.
inline CheckReport check_cartan(const ModelVariety& X, const ModelVariety& Y, long p,
                                std::uint64_t seed, int cases = 50) {
  PrimeField F(p);
  CheckReport rep;
  rep.check = "cartan";
  rep.seed = seed;
  rep.param("X", X.name());
  rep.param("Y", Y.name());
  rep.param("p", p);
  const ModelVariety XY = X.product(Y);
  for (int c = 0; c < cases; ++c) {
    auto rng = case_rng(seed, "cartan/" + X.name() + "/" + Y.name() + "/" + std::to_string(p) +
                                  "/" + std::to_string(c));
    const ChowFp x = random_chow_fp(X, F, rng);
    const ChowFp y = random_chow_fp(Y, F, rng);
    bool ok = true;
    std::string detail;
    for (int i = 0; i * (p - 1) <= XY.dim(); ++i) {
      // homological: T_i(x ext y) = sum T_j(x) ext T_{i-j}(y)
      ChowFp rhs(F, XY);
      for (int j = 0; j <= i; ++j)
        rhs = rhs + t_op_hom(j, x).external(t_op_hom(i - j, y));
      const ChowFp lhs = t_op_hom(i, x.external(y));
      if (lhs != rhs) {
        ok = false;
        detail = "homological Cartan fails at i=" + std::to_string(i);
        break;
      }
      // cohomological: products on the smooth model X x Y
      const ChowFp xe = x.external(ChowFp::unit(F, Y));
      const ChowFp ye = ChowFp::unit(F, X).external(y);
      ChowFp rhs2(F, XY);
      for (int j = 0; j <= i; ++j)
        rhs2 = rhs2 + t_op_coh(j, xe) * t_op_coh(i - j, ye);
      if (t_op_coh(i, xe * ye) != rhs2) {
        ok = false;
        detail = "cohomological Cartan fails at i=" + std::to_string(i);
        break;
      }
    }
    if (ok)
      rep.pass();
    else
      rep.fail("random " + std::to_string(c), detail);
  }
  return rep;
}

// Riemann-Roch compatibilities along a supported morphism f: Y -> X:
//   T_i f^* = sum_j r_j(-T_f) . f^* T_{i-j}        (homological, pullback)
//   T^i f^* = f^* T^i                               (cohomological, pullback)
//   T^i f_* = f_* sum_j r_j(-T_f) . T^{i-j}         (cohomological, pushforward)
inline CheckReport check_riemann_roch(const Morphism& f, long p, std::uint64_t seed,
                                      int cases = 20) {
  PrimeField F(p);
  CheckReport rep;
  rep.check = "rr-T";
  rep.seed = seed;
  rep.param("morphism", f.str());
  rep.param("p", p);
  const ModelVariety& Y = f.source();
  const ModelVariety& X = f.target();
  const ChowFp rtf = r_genus(F, -f.tangent());

  auto run_case = [&](const ChowFp& x, const ChowFp& y, const std::string& case_id) {
    bool ok = true;
    std::string detail;
    const int top = std::max(X.dim(), Y.dim());
    for (int i = 0; i * (p - 1) <= top; ++i) {
      ChowFp rhs(F, Y);
      for (int j = 0; j <= i; ++j) {
        const ChowFp rj = rtf.component_codim(j * static_cast<int>(p - 1));
        if (rj.is_zero()) continue;
        rhs = rhs + rj * f.pullback(t_op_hom(i - j, x));
      }
      if (t_op_hom(i, f.pullback(x)) != rhs) {
        ok = false;
        detail = "pullback formula fails at i=" + std::to_string(i);
        break;
      }
      if (t_op_coh(i, f.pullback(x)) != f.pullback(t_op_coh(i, x))) {
        ok = false;
        detail = "T^i does not commute with f^* at i=" + std::to_string(i);
        break;
      }
      ChowFp rhs3(F, Y);
      for (int j = 0; j <= i; ++j) {
        const ChowFp rj = rtf.component_codim(j * static_cast<int>(p - 1));
        if (rj.is_zero()) continue;
        rhs3 = rhs3 + rj * t_op_coh(i - j, y);
      }
      if (t_op_coh(i, f.pushforward(y)) != f.pushforward(rhs3)) {
        ok = false;
        detail = "pushforward formula fails at i=" + std::to_string(i);
        break;
      }
    }
    if (ok)
      rep.pass();
    else
      rep.fail(case_id, detail);
  };

  const ChowFp zero_x(F, X);
  const ChowFp zero_y(F, Y);
  for (const Expo& e : X.box())
    run_case(ChowFp::monomial(F, X, e, F.one()), zero_y, "basis X " + expo_str(e));
  for (const Expo& e : Y.box())
    run_case(zero_x, ChowFp::monomial(F, Y, e, F.one()), "basis Y " + expo_str(e));
  for (int c = 0; c < cases; ++c) {
    auto rng = case_rng(seed, "rr-T/" + f.str() + "/" + std::to_string(p) + "/" + std::to_string(c));
    run_case(random_chow_fp(X, F, rng), random_chow_fp(Y, F, rng), "random " + std::to_string(c));
  }
  return rep;
}

// T'_i = (-1)^i S_i for i <= p, on every monomial class. For the first
// i > p the equality is allowed to fail; witnesses are recorded, not
// asserted.
inline CheckReport check_inverse_vs_steenrod(const ModelVariety& X, long p) {
  PrimeField F(p);
  CheckReport rep;
  rep.check = "prop-st";
  rep.param("variety", X.name());
  rep.param("p", p);
  long disagreements_past_p = 0;
  for (const Expo& e : X.box()) {
    const ChowFp x = ChowFp::monomial(F, X, e, F.one());
    for (int i = 0; i * (p - 1) <= X.dim(); ++i) {
      const ChowFp lhs = steenrod_inverse_component(i, x);
      ChowFp rhs = steenrod_component(i, x);
      if (i % 2 == 1) rhs = -rhs;
      if (i <= p) {
        if (lhs == rhs)
          rep.pass();
        else
          rep.fail("monomial " + expo_str(e) + " i=" + std::to_string(i),
                   lhs.str() + " != " + rhs.str());
      } else if (lhs != rhs) {
        ++disagreements_past_p;
      }
    }
  }
  rep.param("disagreements_past_p", disagreements_past_p);
  return rep;
}

// Fundamental-class formula and the smooth comparison: the homological
// inverse applied to [X] equals r(-T_X).[X], and its components agree with
// the K-theoretic operations on every basis cycle.
inline CheckReport check_fundamental_class(const ModelVariety& X, long p) {
  PrimeField F(p);
  CheckReport rep;
  rep.check = "prop-tr";
  rep.param("variety", X.name());
  rep.param("p", p);
  const ChowFp unit = ChowFp::unit(F, X);
  const ChowFp lhs = steenrod_hom_inverse_total(unit);
  const ChowFp rhs = r_genus(F, -tangent_class(X));
  if (lhs == rhs)
    rep.pass();
  else
    rep.fail("[X]", "T'[X] = " + lhs.str() + " != r(-T_X).[X] = " + rhs.str());
  RationalField Q;
  for (const Expo& e : X.box()) {
    const ChowFp x = ChowFp::monomial(F, X, e, F.one());
    for (int i = 0; i * (p - 1) <= X.dim(); ++i) {
      const ChowFp via_inverse = steenrod_hom_inverse_component(i, x);
      const ChowFp via_k = t_op_hom(i, ChowQ::monomial(Q, X, e, Rational(1)), F);
      if (via_inverse == via_k)
        rep.pass();
      else
        rep.fail("monomial " + expo_str(e) + " i=" + std::to_string(i),
                 via_inverse.str() + " != " + via_k.str());
    }
  }
  return rep;
}

}  // namespace chern
