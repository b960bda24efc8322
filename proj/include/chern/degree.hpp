// Degree-formula arithmetic over abstract variety records: index bounds,
// the t_p class, degree-formula consistency, incompressibility and
// index-reduction verdicts. Records are trusted input; the checks test
// arithmetic consistency; they do not prove geometric existence.
#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chern/numeric.hpp"

namespace chern {
namespace degree {

struct VarietyRecord {
  std::string name;
  long dim = 0;       // nonnegative
  BigInt chi = 0;     // chi(O_X)
  BigInt index = 1;   // n_X >= 1

  void validate() const {
    if (dim < 0) throw std::invalid_argument("record '" + name + "': dim must be >= 0");
    if (index < 1) throw std::invalid_argument("record '" + name + "': index must be >= 1");
  }
};

struct MorphismRecord {
  std::string source;  // for f: source -> target the congruence is taken mod the target index
  std::string target;
  BigInt deg = 0;  // 0 encodes non-dominant
};

// p-primary part of the index: p^{v_p(n_X)}.
inline BigInt index_p_part(const VarietyRecord& r, long p) {
  require_prime(p);
  return int_pow(BigInt(p), integer_valuation(r.index, p));
}

struct TpClass {
  BigInt residue;  // in [0, modulus)
  BigInt modulus;  // = index_p_part
  long i;          // dim = i(p-1)
};

// t_p(X) = p^{i-1} chi(O_X) mod n_X(p), defined when dim = i(p-1), i > 0.
inline TpClass t_p_class(const VarietyRecord& r, long p) {
  require_prime(p);
  if (r.dim <= 0 || r.dim % (p - 1) != 0)
    throw std::domain_error("t_p undefined: dim of '" + r.name +
                            "' is not a positive multiple of p-1");
  const long i = r.dim / (p - 1);
  const BigInt modulus = index_p_part(r, p);
  BigInt res = (int_pow(BigInt(p), i - 1) * r.chi) % modulus;
  if (res < 0) res += modulus;
  return {res, modulus, i};
}

enum class Verdict { Consistent, Violates, NotApplicable, Incompressible, InconsistentData, NoConclusion };

inline std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violates: return "VIOLATES";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Incompressible: return "strongly p-incompressible";
    case Verdict::InconsistentData: return "INCONSISTENT DATA";
    case Verdict::NoConclusion: return "no conclusion";
  }
  return "?";
}

// v_p(n_X) <= [dim/(p-1)] + v_p(chi(O_X)), for dim < p(p-1). chi = 0 is
// vacuously consistent (v_p(0) is infinite).
inline Verdict check_index_bound(const VarietyRecord& r, long p) {
  require_prime(p);
  r.validate();
  if (r.dim >= p * (p - 1)) return Verdict::NotApplicable;
  if (r.chi == 0) return Verdict::Consistent;
  const long lhs = integer_valuation(r.index, p);
  const long rhs = r.dim / (p - 1) + integer_valuation(r.chi, p);
  return lhs <= rhs ? Verdict::Consistent : Verdict::Violates;
}

// Degree formula: t_p(source) = deg . t_p(target) mod n_target(p), for
// morphisms between records of equal dimension i(p-1), 0 < i <= p.
inline Verdict check_degree_formula(const MorphismRecord& m,
                                    const std::map<std::string, VarietyRecord>& records, long p) {
  require_prime(p);
  const auto is = records.find(m.source);
  const auto it = records.find(m.target);
  if (is == records.end() || it == records.end())
    throw std::invalid_argument("morphism references unknown record '" +
                                (is == records.end() ? m.source : m.target) + "'");
  const VarietyRecord& src = is->second;
  const VarietyRecord& tgt = it->second;
  if (src.dim != tgt.dim)
    throw std::domain_error("degree formula: source and target dimensions differ");
  if (src.dim <= 0 || src.dim % (p - 1) != 0)
    throw std::domain_error("degree formula: dim is not a positive multiple of p-1");
  const long i = src.dim / (p - 1);
  if (i > p) throw std::domain_error("degree formula requires i <= p, got i=" + std::to_string(i));
  const BigInt modulus = index_p_part(tgt, p);
  const BigInt lhs = int_pow(BigInt(p), i - 1) * src.chi;
  const BigInt rhs = m.deg * int_pow(BigInt(p), i - 1) * tgt.chi;
  return (lhs - rhs) % modulus == 0 ? Verdict::Consistent : Verdict::Violates;
}

// Incompressibility criterion at a chosen i (hypotheses: 0 < i <= p,
// v_p(n_X) >= i, gcd(chi, p) = 1): dim < i(p-1) contradicts the theory
// (bad data), equality certifies strong p-incompressibility, beyond it no
// conclusion.
inline Verdict incompressibility_criterion(const VarietyRecord& r, long p, long i) {
  require_prime(p);
  r.validate();
  if (i < 1 || i > p) return Verdict::NotApplicable;
  if (integer_valuation(r.index, p) < i) return Verdict::NotApplicable;
  if (r.chi % p == 0) return Verdict::NotApplicable;
  if (r.dim < i * (p - 1)) return Verdict::InconsistentData;
  if (r.dim == i * (p - 1)) return Verdict::Incompressible;
  return Verdict::NoConclusion;
}

// Best conclusion over the admissible range of i (inferred from the record).
inline Verdict incompressibility_criterion(const VarietyRecord& r, long p) {
  require_prime(p);
  r.validate();
  const long vmax = std::min<long>(integer_valuation(r.index, p), p);
  Verdict best = Verdict::NotApplicable;
  for (long i = 1; i <= vmax; ++i) {
    const Verdict v = incompressibility_criterion(r, p, i);
    if (v == Verdict::InconsistentData) return v;
    if (v == Verdict::Incompressible) best = v;
    if (v == Verdict::NoConclusion && best == Verdict::NotApplicable) best = v;
  }
  return best;
}

// Index reduction: no correspondence X ~> Y of multiplicity prime to p can
// exist when v_p(n_Y) >= v_p(n_X) >= i, p | chi(O_Y), gcd(chi(O_X), p) = 1,
// and both dims <= i(p-1) with i <= p.
inline Verdict index_reduction(const VarietyRecord& X, const VarietyRecord& Y, long p, long i) {
  require_prime(p);
  if (i < 1 || i > p) return Verdict::NotApplicable;
  if (integer_valuation(X.index, p) < i) return Verdict::NotApplicable;
  if (integer_valuation(Y.index, p) < integer_valuation(X.index, p)) return Verdict::NotApplicable;
  if (Y.chi % p != 0) return Verdict::NotApplicable;
  if (X.chi % p == 0) return Verdict::NotApplicable;
  if (X.dim > i * (p - 1) || Y.dim > i * (p - 1)) return Verdict::NotApplicable;
  return Verdict::Violates;  // "correspondence impossible"
}

// ---------------------------------------------------------------------------
// JSON ingestion. Integers may be JSON numbers or decimal strings (the
// string form is big-integer safe).

inline BigInt json_bigint(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
      throw std::invalid_argument(where + ": malformed integer string '" + v.get<std::string>() + "'");
    }
  }
  throw std::invalid_argument(where + ": expected an integer or a decimal string");
}

struct RecordFile {
  std::vector<VarietyRecord> varieties;  // in file order
  std::vector<MorphismRecord> morphisms;

  std::map<std::string, VarietyRecord> by_name() const {
    std::map<std::string, VarietyRecord> m;
    for (const auto& r : varieties) m[r.name] = r;
    return m;
  }
};

inline RecordFile parse_records(const nlohmann::json& j) {
  RecordFile out;
  if (!j.is_object()) throw std::invalid_argument("records: top level must be an object");
  if (j.contains("varieties")) {
    if (!j["varieties"].is_array()) throw std::invalid_argument("records: 'varieties' must be an array");
    for (size_t k = 0; k < j["varieties"].size(); ++k) {
      const auto& v = j["varieties"][k];
      const std::string where = "varieties[" + std::to_string(k) + "]";
      VarietyRecord r;
      if (!v.contains("name") || !v["name"].is_string())
        throw std::invalid_argument(where + ": missing string field 'name'");
      r.name = v["name"].get<std::string>();
      if (!v.contains("dim")) throw std::invalid_argument(where + ": missing field 'dim'");
      r.dim = static_cast<long>(json_bigint(v["dim"], where + ".dim"));
      if (!v.contains("chi")) throw std::invalid_argument(where + ": missing field 'chi'");
      r.chi = json_bigint(v["chi"], where + ".chi");
      if (!v.contains("index")) throw std::invalid_argument(where + ": missing field 'index'");
      r.index = json_bigint(v["index"], where + ".index");
      r.validate();
      out.varieties.push_back(std::move(r));
    }
  }
  if (j.contains("morphisms")) {
    if (!j["morphisms"].is_array()) throw std::invalid_argument("records: 'morphisms' must be an array");
    for (size_t k = 0; k < j["morphisms"].size(); ++k) {
      const auto& v = j["morphisms"][k];
      const std::string where = "morphisms[" + std::to_string(k) + "]";
      MorphismRecord r;
      if (!v.contains("source") || !v.contains("target"))
        throw std::invalid_argument(where + ": needs 'source' and 'target'");
      r.source = v["source"].get<std::string>();
      r.target = v["target"].get<std::string>();
      if (!v.contains("deg")) throw std::invalid_argument(where + ": missing field 'deg'");
      r.deg = json_bigint(v["deg"], where + ".deg");
      if (r.deg < 0) throw std::invalid_argument(where + ": deg must be >= 0");
      out.morphisms.push_back(std::move(r));
    }
  }
  return out;
}

// Big-integer-safe JSON rendering: numbers beyond 2^53 go out as strings.
inline nlohmann::json bigint_json(const BigInt& v) {
  static const BigInt lim = BigInt(1) << 53;
  if (v < lim && v > -lim) return static_cast<long long>(v);
  return v.str();
}

struct RecordVerdict {
  std::string subject;   // record name or "source->target"
  std::string rule;      // which arithmetic rule produced it
  Verdict verdict;
  std::string detail;

  nlohmann::json to_json() const {
    return {{"subject", subject},
            {"paper_ref", rule},
            {"verdict", verdict_str(verdict)},
            {"detail", detail}};
  }
};

// One primary verdict per record (index-bound violations dominate, then
// incompressibility conclusions, then plain consistency), one per morphism.
inline std::vector<RecordVerdict> run_degree_checks(const RecordFile& file, long p) {
  std::vector<RecordVerdict> out;
  const auto records = file.by_name();
  for (const auto& r : file.varieties) {
    const Verdict bound = check_index_bound(r, p);
    if (bound == Verdict::Violates) {
      std::ostringstream os;
      os << "v_p(index)=" << integer_valuation(r.index, p) << " exceeds [dim/(p-1)]+v_p(chi)="
         << r.dim / (p - 1) + (r.chi == 0 ? 0 : integer_valuation(r.chi, p));
      out.push_back({r.name, "index-bound", Verdict::Violates, os.str()});
      continue;
    }
    const Verdict inc = incompressibility_criterion(r, p);
    if (inc == Verdict::Incompressible || inc == Verdict::InconsistentData) {
      out.push_back({r.name, "incompressibility", inc,
                     "dim=" + std::to_string(r.dim) + " vs i(p-1) with i<=v_p(index)"});
      continue;
    }
    out.push_back({r.name, "index-bound", bound,
                   bound == Verdict::NotApplicable ? "dim >= p(p-1)" : ""});
  }
  for (const auto& m : file.morphisms) {
    Verdict v;
    std::string detail;
    try {
      v = check_degree_formula(m, records, p);
    } catch (const std::domain_error& e) {
      v = Verdict::NotApplicable;
      detail = e.what();
    }
    out.push_back({m.source + "->" + m.target, "degree-formula", v, detail});
  }
  return out;
}

}  // namespace degree
}  // namespace chern
