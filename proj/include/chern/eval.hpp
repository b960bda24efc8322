// Evaluation of parsed expressions over a bound variety, either with
// rational coefficients or mod p (--mod). Values carry their own kind; the
// renderers below produce the text/JSON/CSV surface.
#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chern/expr.hpp"
#include "chern/ktheory.hpp"
#include "chern/steenrod.hpp"

namespace chern {
namespace expr {

struct GradedCh {
  std::vector<ChowQ> parts;  // indexed by homological dimension
};

using Value = std::variant<Rational, ChowQ, ChowFp, KCohElt, VirtualBundle, GradedCh>;

struct EvalEnv {
  ModelVariety X;
  std::optional<long> mod_p;  // set by --mod
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail_eval {

inline Rational as_scalar(const Value& v, const char* what) {
  if (const auto* r = std::get_if<Rational>(&v)) return *r;
  throw EvalError(std::string(what) + ": expected a scalar");
}

inline long as_int(const Value& v, const char* what) {
  const Rational r = as_scalar(v, what);
  if (!is_integer(r)) throw EvalError(std::string(what) + ": expected an integer");
  return static_cast<long>(num(r));
}

}  // namespace detail_eval

inline Value evaluate(const Node& e, const EvalEnv& env, Ctx ctx);

namespace detail_eval {

inline Value binary(const Node& e, const EvalEnv& env, Ctx ctx) {
  const Value a = evaluate(e.args[0], env, ctx);
  const Value b = evaluate(e.args[1], env, ctx);
  const bool add = e.kind == Kind::Add;
  const bool sub = e.kind == Kind::Sub;
  const bool mul = e.kind == Kind::Mul;

  if (std::holds_alternative<GradedCh>(a) || std::holds_alternative<GradedCh>(b))
    throw EvalError("chh(...) values cannot be combined with operators");

  // scalar x scalar
  if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
    const Rational x = std::get<Rational>(a), y = std::get<Rational>(b);
    if (add) return Rational(x + y);
    if (sub) return Rational(x - y);
    return Rational(x * y);
  }

  auto promote_chow_q = [&](const Value& v) -> std::optional<ChowQ> {
    if (const auto* c = std::get_if<ChowQ>(&v)) return *c;
    if (const auto* s = std::get_if<Rational>(&v))
      return ChowQ::unit(RationalField{}, env.X).scale(*s);
    return std::nullopt;
  };
  auto promote_chow_fp = [&](const Value& v) -> std::optional<ChowFp> {
    if (const auto* c = std::get_if<ChowFp>(&v)) return *c;
    if (const auto* s = std::get_if<Rational>(&v)) {
      PrimeField F(*env.mod_p);
      return ChowFp::unit(F, env.X).scale(F.from_rational(*s));
    }
    return std::nullopt;
  };
  auto promote_k = [&](const Value& v) -> std::optional<KCohElt> {
    if (const auto* c = std::get_if<KCohElt>(&v)) return *c;
    if (const auto* s = std::get_if<Rational>(&v)) return KCohElt::unit(env.X).scale(*s);
    if (const auto* u = std::get_if<VirtualBundle>(&v)) return u->to_kcoh();
    return std::nullopt;
  };

  if (std::holds_alternative<ChowFp>(a) || std::holds_alternative<ChowFp>(b)) {
    auto x = promote_chow_fp(a), y = promote_chow_fp(b);
    if (!x || !y) throw EvalError("cannot mix mod-p classes with other kinds");
    return add ? *x + *y : sub ? *x - *y : *x * *y;
  }
  if (std::holds_alternative<ChowQ>(a) || std::holds_alternative<ChowQ>(b)) {
    auto x = promote_chow_q(a), y = promote_chow_q(b);
    if (!x || !y) throw EvalError("cannot mix Chow classes with K-classes");
    return add ? *x + *y : sub ? *x - *y : *x * *y;
  }
  if (std::holds_alternative<VirtualBundle>(a) || std::holds_alternative<VirtualBundle>(b)) {
    if (ctx == Ctx::Bundle) {
      // bundle arithmetic: sums, differences, integer multiples, and tensor
      // products of single line bundles
      auto lhs = std::get_if<VirtualBundle>(&a);
      auto rhs = std::get_if<VirtualBundle>(&b);
      if (mul) {
        if (lhs && rhs) {
          if (lhs->parts().size() == 1 && rhs->parts().size() == 1 &&
              lhs->parts().begin()->second == 1 && rhs->parts().begin()->second == 1) {
            Expo tw = lhs->parts().begin()->first;
            for (size_t j = 0; j < tw.size(); ++j) tw[j] += rhs->parts().begin()->first[j];
            return VirtualBundle::line_bundle(env.X, tw);
          }
          throw EvalError("product of virtual bundles is only defined for line bundles");
        }
        const VirtualBundle& u = lhs ? *lhs : *rhs;
        const long n = as_int(lhs ? b : a, "bundle scaling");
        return u.scale(n);
      }
      if (lhs && rhs) return add ? *lhs + *rhs : *lhs - *rhs;
      // scalar means a trivial bundle of that rank
      auto as_bundle = [&](const Value& v) {
        if (const auto* u = std::get_if<VirtualBundle>(&v)) return *u;
        return VirtualBundle::trivial(env.X, as_int(v, "bundle term"));
      };
      const VirtualBundle x = as_bundle(a), y = as_bundle(b);
      return add ? x + y : x - y;
    }
    auto x = promote_k(a), y = promote_k(b);
    if (!x || !y) throw EvalError("cannot mix K-classes with other kinds");
    return add ? *x + *y : sub ? *x - *y : *x * *y;
  }
  if (std::holds_alternative<KCohElt>(a) || std::holds_alternative<KCohElt>(b)) {
    auto x = promote_k(a), y = promote_k(b);
    if (!x || !y) throw EvalError("cannot mix K-classes with other kinds");
    return add ? *x + *y : sub ? *x - *y : *x * *y;
  }
  throw EvalError("unsupported operand combination");
}

inline Value call(const Node& e, const EvalEnv& env, Ctx ctx) {
  const std::string& fn = e.fn;
  auto int_arg = [&](size_t i, const char* what) {
    return as_int(evaluate(e.args[i], env, Ctx::Scalar), what);
  };
  auto k_arg = [&](size_t i) {
    Value v = evaluate(e.args[i], env, Ctx::K);
    if (const auto* k = std::get_if<KCohElt>(&v)) return *k;
    if (const auto* u = std::get_if<VirtualBundle>(&v)) return u->to_kcoh();
    if (const auto* s = std::get_if<Rational>(&v)) return KCohElt::unit(env.X).scale(*s);
    throw EvalError("'" + fn + "': expected a K-class argument");
  };
  auto bundle_arg = [&](size_t i) {
    Value v = evaluate(e.args[i], env, Ctx::Bundle);
    if (const auto* u = std::get_if<VirtualBundle>(&v)) return *u;
    if (const auto* s = std::get_if<Rational>(&v)) {
      if (!is_integer(*s)) throw EvalError("'" + fn + "': bundle rank must be an integer");
      return VirtualBundle::trivial(env.X, static_cast<long>(num(*s)));
    }
    throw EvalError("'" + fn + "': expected a virtual-bundle argument "
                    "(an integer combination of O(...) classes)");
  };
  auto chow_fp_arg = [&](size_t i, const char* what) {
    if (!env.mod_p) throw EvalError("'" + fn + "' requires --mod p");
    Value v = evaluate(e.args[i], env, Ctx::Chow);
    if (const auto* c = std::get_if<ChowFp>(&v)) return *c;
    PrimeField F(*env.mod_p);
    if (const auto* c = std::get_if<ChowQ>(&v)) return reduce_mod_p_lattice(*c, F);
    if (const auto* s = std::get_if<Rational>(&v))
      return ChowFp::unit(F, env.X).scale(F.from_rational(*s));
    throw EvalError(std::string(what) + ": expected a Chow class");
  };

  if (fn == "td") return genus_apply(todd_series(env.X.dim()), bundle_arg(0));
  if (fn == "ch") return ch_coh(k_arg(0));
  if (fn == "chh") {
    GradedCh g;
    g.parts = ch_hom(coh_to_hom(k_arg(0)));
    return g;
  }
  if (fn == "psi") {
    const long l = int_arg(0, "psi: l");
    if (l == 0) throw EvalError("psi: l must be nonzero");
    return adams_coh(l, k_arg(1));
  }
  if (fn == "theta") {
    const long l = int_arg(0, "theta: l");
    if (l == 0) throw EvalError("theta: l must be nonzero");
    return bott_class(l, bundle_arg(1));
  }
  if (fn == "r") {
    const long p = int_arg(0, "r: p");
    require_prime(p);
    if (env.mod_p && *env.mod_p != p)
      throw EvalError("r: prime argument conflicts with --mod");
    return r_genus(PrimeField(p), bundle_arg(1));
  }
  if (fn == "T" || fn == "Tc") {
    const long i = int_arg(0, "T: i");
    if (i < 0) throw EvalError("T: i must be >= 0");
    const ChowFp x = chow_fp_arg(1, "T");
    return fn == "T" ? t_op_hom(static_cast<int>(i), x) : t_op_coh(static_cast<int>(i), x);
  }
  if (fn == "S") return steenrod_total(chow_fp_arg(0, "S"));
  if (fn == "Tp") return steenrod_inverse_total(chow_fp_arg(0, "Tp"));
  throw EvalError("unknown function '" + fn + "'");
}

}  // namespace detail_eval

inline Value evaluate(const Node& e, const EvalEnv& env, Ctx ctx) {
  using namespace detail_eval;
  switch (e.kind) {
    case Kind::Int:
      return Rational(e.value);
    case Kind::Hyper: {
      const int j = static_cast<int>(e.value) - 1;
      if (env.mod_p) {
        PrimeField F(*env.mod_p);
        return ChowFp::hyperplane(F, env.X, j);
      }
      return ChowQ::hyperplane(RationalField{}, env.X, j);
    }
    case Kind::Cycle: {
      if (env.mod_p) {
        PrimeField F(*env.mod_p);
        return ChowElt<PrimeField>::subspace_class(F, env.X, e.tuple);
      }
      return ChowQ::subspace_class(RationalField{}, env.X, e.tuple);
    }
    case Kind::LineBundle:
      if (ctx == Ctx::Bundle) return VirtualBundle::line_bundle(env.X, e.tuple);
      return KCohElt::line_bundle(env.X, e.tuple);
    case Kind::KCycle:
      return hom_to_coh(KHomElt::basis(env.X, e.tuple));
    case Kind::Neg: {
      Node zero{Kind::Int, e.offset, 0};
      Node sub{Kind::Sub, e.offset};
      sub.args.push_back(zero);
      sub.args.push_back(e.args[0]);
      return binary(sub, env, ctx);
    }
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
      return binary(e, env, ctx);
    case Kind::Pow: {
      const Value base = evaluate(e.args[0], env, ctx);
      const long n = e.value;
      if (const auto* s = std::get_if<Rational>(&base)) return rational_pow(*s, n);
      if (const auto* c = std::get_if<ChowQ>(&base)) return c->pow(n);
      if (const auto* c = std::get_if<ChowFp>(&base)) return c->pow(n);
      if (const auto* k = std::get_if<KCohElt>(&base)) return k->pow(n);
      if (const auto* u = std::get_if<VirtualBundle>(&base)) {
        if (u->parts().size() == 1 && u->parts().begin()->second == 1) {
          Expo tw = u->parts().begin()->first;
          for (int& t : tw) t = static_cast<int>(t * n);
          return VirtualBundle::line_bundle(env.X, tw);
        }
        throw EvalError("^ on a virtual bundle is only defined for line bundles");
      }
      throw EvalError("^ undefined for this operand");
    }
    case Kind::Call:
      return detail_eval::call(e, env, ctx);
  }
  throw EvalError("unreachable expression kind");
}

// Entry point used by the CLI: parse, elaborate (auto-detecting the context
// unless forced), evaluate.
inline Value evaluate_source(const std::string& src, const EvalEnv& env,
                             std::optional<Ctx> forced = std::nullopt) {
  Node n = parse(src);
  if (forced) {
    elaborate(n, env.X, *forced);
    return evaluate(n, env, *forced);
  }
  try {
    elaborate(n, env.X, Ctx::Chow);
    return evaluate(n, env, Ctx::Chow);
  } catch (const ElabError&) {
    elaborate(n, env.X, Ctx::K);
    return evaluate(n, env, Ctx::K);
  }
}

// ---------------------------------------------------------------------------
// Rendering.

inline nlohmann::json terms_json(const std::map<Expo, Rational>& terms) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : terms) {
    nlohmann::json t;
    t["exp"] = e;
    t["coef"] = to_string(c);
    arr.push_back(t);
  }
  return arr;
}

inline nlohmann::json value_json(const Value& v, const ModelVariety& X) {
  nlohmann::json j;
  j["variety"] = X.name();
  if (const auto* s = std::get_if<Rational>(&v)) {
    j["value"] = to_string(*s);
  } else if (const auto* c = std::get_if<ChowQ>(&v)) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, q] : c->terms()) arr.push_back({{"exp", e}, {"coef", to_string(q)}});
    j["terms"] = arr;
  } else if (const auto* c = std::get_if<ChowFp>(&v)) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, q] : c->terms()) arr.push_back({{"exp", e}, {"coef", std::to_string(q)}});
    j["terms"] = arr;
    j["mod"] = c->field().p();
  } else if (const auto* k = std::get_if<KCohElt>(&v)) {
    j["terms"] = terms_json(k->t_monomials());
    j["basis"] = "t";
  } else if (const auto* u = std::get_if<VirtualBundle>(&v)) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [tw, m] : u->parts()) arr.push_back({{"twist", tw}, {"mult", m}});
    j["bundle"] = arr;
  } else if (const auto* g = std::get_if<GradedCh>(&v)) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < g->parts.size(); ++i) {
      nlohmann::json part;
      part["dim"] = i;
      nlohmann::json ts = nlohmann::json::array();
      for (const auto& [e, q] : g->parts[i].terms())
        ts.push_back({{"exp", e}, {"coef", to_string(q)}});
      part["terms"] = ts;
      arr.push_back(part);
    }
    j["graded"] = arr;
  }
  return j;
}

inline std::string value_text(const Value& v) {
  if (const auto* s = std::get_if<Rational>(&v)) return to_string(*s);
  if (const auto* c = std::get_if<ChowQ>(&v)) return c->str();
  if (const auto* c = std::get_if<ChowFp>(&v))
    return c->str() + "  (mod " + std::to_string(c->field().p()) + ")";
  if (const auto* k = std::get_if<KCohElt>(&v)) return k->str();
  if (const auto* u = std::get_if<VirtualBundle>(&v)) return u->str();
  if (const auto* g = std::get_if<GradedCh>(&v)) {
    std::ostringstream os;
    for (size_t i = g->parts.size(); i-- > 0;)
      os << "ch_" << i << " = " << g->parts[i].str() << "\n";
    return os.str();
  }
  return "?";
}

inline std::string value_csv(const Value& v, const ModelVariety& X) {
  std::ostringstream os;
  const int k = X.factors();
  auto header = [&](const char* extra, const char* val) {
    if (extra[0]) os << extra << ",";
    for (int j = 1; j <= k; ++j) os << "e" << j << ",";
    os << val << "\n";
  };
  auto expo_row = [&](const Expo& e) {
    for (int j = 0; j < k; ++j) os << e[static_cast<size_t>(j)] << ",";
  };
  if (const auto* s = std::get_if<Rational>(&v)) {
    os << "value\n" << to_string(*s) << "\n";
  } else if (const auto* c = std::get_if<ChowQ>(&v)) {
    header("", "coef");
    for (const auto& [e, q] : c->terms()) {
      expo_row(e);
      os << to_string(q) << "\n";
    }
  } else if (const auto* c = std::get_if<ChowFp>(&v)) {
    header("", "coef");
    for (const auto& [e, q] : c->terms()) {
      expo_row(e);
      os << q << "\n";
    }
  } else if (const auto* kk = std::get_if<KCohElt>(&v)) {
    header("", "coef");
    for (const auto& [e, q] : kk->t_monomials()) {
      expo_row(e);
      os << to_string(q) << "\n";
    }
  } else if (const auto* u = std::get_if<VirtualBundle>(&v)) {
    header("", "mult");
    for (const auto& [e, m] : u->parts()) {
      expo_row(e);
      os << m << "\n";
    }
  } else if (const auto* g = std::get_if<GradedCh>(&v)) {
    header("dim", "coef");
    for (size_t i = 0; i < g->parts.size(); ++i)
      for (const auto& [e, q] : g->parts[i].terms()) {
        os << i << ",";
        expo_row(e);
        os << to_string(q) << "\n";
      }
  }
  return os.str();
}

}  // namespace expr
}  // namespace chern
