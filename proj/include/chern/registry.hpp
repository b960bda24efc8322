// The verify-command registry: stable check ids dispatched to the check
// implementations with validated parameters. Exit-code contract: ok -> 0,
// failures -> 1, unknown id or bad parameters -> 2 (enforced by the CLI via
// the exceptions thrown here).
#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "chern/degree.hpp"
#include "chern/integrality.hpp"
#include "chern/morphism.hpp"
#include "chern/series.hpp"
#include "chern/steenrod.hpp"

namespace chern {

struct UnknownCheck : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CheckParams {
  std::map<std::string, std::string> kv;
  std::uint64_t seed = 0;

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  std::string get(const std::string& k, const std::string& fallback) const {
    auto it = kv.find(k);
    return it == kv.end() ? fallback : it->second;
  }
  long get_long(const std::string& k, long fallback) const {
    auto it = kv.find(k);
    if (it == kv.end()) return fallback;
    try {
      return std::stol(it->second);
    } catch (const std::exception&) {
      throw BadParams("parameter '" + k + "' must be an integer, got '" + it->second + "'");
    }
  }
  long require_long(const std::string& k) const {
    if (!has(k)) throw BadParams("missing required parameter '" + k + "'");
    return get_long(k, 0);
  }
};

// The criterion corpus for the Adams/Chern identities.
inline std::vector<ModelVariety> corpus_small() {
  return {ModelVariety{{1}},    ModelVariety{{2}},    ModelVariety{{3}},
          ModelVariety{{4}},    ModelVariety{{2, 1}}, ModelVariety{{2, 3}}};
}

// Supported-morphism corpus exercised by the Riemann-Roch checks. The
// divisor-type embeddings with source dimension >= p-1 are the cases that
// detect sign errors in r(-T_f) at odd p.
inline std::vector<Morphism> morphism_corpus() {
  const ModelVariety P1{{1}}, P2{{2}}, P3{{3}}, P4{{4}};
  const ModelVariety P2xP1{{2, 1}}, P2xP3{{2, 3}}, P1xP1{{1, 1}}, P2xP2{{2, 2}};
  std::vector<Morphism> out;
  out.push_back(Morphism::identity(P2));
  out.push_back(Morphism::projection(P2xP1, {0}));          // P2xP1 -> P2
  out.push_back(Morphism::projection(P2xP1, {1}));          // P2xP1 -> P1
  out.push_back(Morphism::projection(P2xP3, {1}));          // P2xP3 -> P3
  out.push_back(Morphism::linear_embedding(P1, P2));        // divisor case
  out.push_back(Morphism::linear_embedding(P2, P3));        // divisor, dim 2 source
  out.push_back(Morphism::linear_embedding(P3, P4));        // divisor, dim 3 source
  out.push_back(Morphism::linear_embedding(P2, P4));
  out.push_back(Morphism::linear_embedding(ModelVariety{{0}}, P3));  // point in P3
  out.push_back(Morphism::linear_embedding(P1xP1, P2xP2));
  out.push_back(Morphism(P2xP1, {0}, P3));                  // project then embed
  return out;
}

inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {
      "chpsi",   "graded",  "mainvp",  "lci-integrality", "toddvp",          "toddp",
      "inv-series", "cartan", "rr-T",  "prop-st",         "prop-tr",         "pipelines-agree",
      "well-defined", "degf"};
  return ids;
}

inline CheckReport run_check_impl(const std::string& id, const CheckParams& params);

// Dispatch with wall-clock accounting; elapsed time lives on the report
// struct only and is never rendered (reports must be byte-stable).
inline CheckReport run_check(const std::string& id, const CheckParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport rep = run_check_impl(id, params);
  rep.elapsed_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - t0)
                                         .count());
  return rep;
}

inline CheckReport run_check_impl(const std::string& id, const CheckParams& params) {
  const std::uint64_t seed = params.seed;
  auto variety = [&](const std::string& fallback) {
    return ModelVariety::parse(params.get("variety", fallback));
  };
  auto prime = [&](long fallback) {
    long p = params.get_long("p", fallback);
    if (!is_prime(p)) throw BadParams("parameter 'p' must be prime, got " + std::to_string(p));
    return p;
  };

  if (id == "chpsi") {
    const long l = params.require_long("l");
    if (l == 0) throw BadParams("'l' must be nonzero");
    CheckReport total;
    if (params.has("variety")) return check_chern_adams(variety(""), l, seed, static_cast<int>(params.get_long("cases", 25)));
    for (const auto& X : corpus_small()) {
      CheckReport r = check_chern_adams(X, l, seed, static_cast<int>(params.get_long("cases", 25)));
      if (total.check.empty()) total = r;
      else total.merge(r);
    }
    total.params.clear();
    total.param("corpus", "small");
    total.param("l", l);
    return total;
  }
  if (id == "graded") {
    const long l = params.require_long("l");
    if (l == 0) throw BadParams("'l' must be nonzero");
    CheckReport total;
    if (params.has("variety")) return check_graded(variety(""), l, seed, static_cast<int>(params.get_long("cases", 25)));
    for (const auto& X : corpus_small()) {
      CheckReport r = check_graded(X, l, seed, static_cast<int>(params.get_long("cases", 25)));
      if (total.check.empty()) total = r;
      else total.merge(r);
    }
    total.params.clear();
    total.param("corpus", "small");
    total.param("l", l);
    return total;
  }
  if (id == "mainvp") {
    const long p = prime(2);
    const int cases = static_cast<int>(params.get_long("cases", 100));
    const bool strict = params.get("strict", "false") == "true";
    if (params.has("variety"))
      return check_chern_integrality(variety(""), p, seed, cases, strict);
    const int max_dim = static_cast<int>(params.get_long("max-dim", 6));
    CheckReport total;
    for (const auto& X : models_up_to_dim(max_dim)) {
      CheckReport r = check_chern_integrality(X, p, seed, cases, strict);
      if (total.check.empty()) total = r;
      else total.merge(r);
    }
    total.params.clear();
    total.param("max-dim", max_dim);
    total.param("p", p);
    total.param("strict_paper_range", strict ? "true" : "false");
    return total;
  }
  if (id == "lci-integrality") {
    if (params.has("variety")) return check_lci_integrality(variety(""), params.get_long("p", 0));
    CheckReport total;
    for (const auto& X : corpus_small()) {
      CheckReport r = check_lci_integrality(X, params.get_long("p", 0));
      if (total.check.empty()) total = r;
      else total.merge(r);
    }
    total.params.clear();
    total.param("corpus", "small");
    return total;
  }
  if (id == "toddvp")
    return check_todd_valuation(variety("P5"), prime(2), seed,
                                static_cast<int>(params.get_long("cases", 50)));
  if (id == "toddp")
    return check_todd_mod_p(variety("P8"), prime(2), seed,
                            static_cast<int>(params.get_long("cases", 50)));
  if (id == "inv-series") {
    const long p = prime(2);
    const int n = static_cast<int>(params.get_long("max-deg", p * p * p * p));
    CheckReport rep;
    rep.check = "inv-series";
    rep.seed = seed;
    rep.param("p", p);
    rep.param("max-deg", n);
    PrimeField F(p);
    const auto xr = TruncSeries<PrimeField>::identity(F, n) * r_series(F, p, n);
    const auto xw = TruncSeries<PrimeField>::identity(F, n) * w_series(F, p, n);
    if (xr.compose(xw) == TruncSeries<PrimeField>::identity(F, n))
      rep.pass();
    else
      rep.fail("compose", "(x R) o (x W) != x up to degree " + std::to_string(n));
    return rep;
  }
  if (id == "cartan") {
    const long p = prime(2);
    const ModelVariety X = variety("P2");
    const ModelVariety Y = ModelVariety::parse(params.get("variety2", "P2xP1"));
    return check_cartan(X, Y, p, seed, static_cast<int>(params.get_long("cases", 50)));
  }
  if (id == "rr-T") {
    const long p = prime(2);
    CheckReport total;
    for (const auto& f : morphism_corpus()) {
      CheckReport r = check_riemann_roch(f, p, seed, static_cast<int>(params.get_long("cases", 10)));
      if (total.check.empty()) total = r;
      else total.merge(r);
    }
    total.params.clear();
    total.param("corpus", "supported-morphisms");
    total.param("p", p);
    return total;
  }
  if (id == "prop-st") return check_inverse_vs_steenrod(variety("P8"), prime(2));
  if (id == "prop-tr") return check_fundamental_class(variety("P2"), prime(2));
  if (id == "pipelines-agree") {
    const long p = prime(2);
    if (params.has("variety")) return check_pipelines_agree(variety(""), p);
    const int max_dim = static_cast<int>(params.get_long("max-dim", 4));
    CheckReport total;
    for (const auto& X : models_up_to_dim(max_dim)) {
      CheckReport r = check_pipelines_agree(X, p);
      if (total.check.empty()) total = r;
      else total.merge(r);
    }
    total.params.clear();
    total.param("max-dim", max_dim);
    total.param("p", p);
    return total;
  }
  if (id == "well-defined")
    return check_lift_independence(variety("P4"), prime(2), seed,
                                   static_cast<int>(params.get_long("cases", 100)));
  if (id == "degf") {
    const long p = prime(3);
    CheckReport rep;
    rep.check = "degf";
    rep.seed = seed;
    rep.param("p", p);
    if (params.has("records")) {
      // user data: any violation is a failure
      std::ifstream in(params.get("records", ""));
      if (!in) throw BadParams("cannot open records file '" + params.get("records", "") + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const std::exception& ex) {
        throw BadParams(std::string("malformed records JSON: ") + ex.what());
      }
      const auto file = degree::parse_records(j);
      rep.param("records", params.get("records", ""));
      for (const auto& v : degree::run_degree_checks(file, p)) {
        if (v.verdict == degree::Verdict::Violates ||
            v.verdict == degree::Verdict::InconsistentData)
          rep.fail(v.subject, v.rule + ": " + degree::verdict_str(v.verdict) +
                                  (v.detail.empty() ? "" : " (" + v.detail + ")"));
        else
          rep.pass();
      }
      return rep;
    }
    // built-in trio: a degree-p division-algebra profile, a conic profile,
    // and a deliberately inconsistent record; the check passes when the
    // arithmetic flags exactly the bad one
    degree::RecordFile file;
    file.varieties.push_back({"sb-division-algebra", p - 1, BigInt(1), BigInt(p)});
    file.varieties.push_back({"anisotropic-conic", 1, BigInt(1), BigInt(2)});
    file.varieties.push_back({"impossible-profile", 1, BigInt(1), BigInt(p * p)});
    rep.param("records", "built-in");
    const auto verdicts = degree::run_degree_checks(file, p);
    for (size_t k = 0; k < verdicts.size(); ++k) {
      const bool bad = verdicts[k].verdict == degree::Verdict::Violates ||
                       verdicts[k].verdict == degree::Verdict::InconsistentData;
      const bool want_bad = verdicts[k].subject == "impossible-profile";
      if (bad == want_bad)
        rep.pass();
      else
        rep.fail(verdicts[k].subject,
                 "unexpected verdict " + degree::verdict_str(verdicts[k].verdict));
    }
    return rep;
  }
  std::string known;
  for (const auto& k : check_ids()) known += (known.empty() ? "" : ", ") + k;
  throw UnknownCheck("unknown check id '" + id + "' (known: " + known + ")");
}

}  // namespace chern
