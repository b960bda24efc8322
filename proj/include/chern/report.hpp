// Structured check reports: stable check ids, parameters, case counts and
// failures. Reports are values, never bare booleans, so the CLI can emit
// machine-readable evidence. Rendering is byte-stable for fixed seed and
// parameters; wall-clock time is tracked but never rendered.
#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace chern {

struct CheckFailure {
  std::string case_id;
  std::string detail;
};

struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;  // insertion order
  long cases = 0;
  std::vector<CheckFailure> failures;
  std::uint64_t seed = 0;
  long elapsed_ms = 0;  // internal only; rendering must stay byte-stable

  bool ok() const { return failures.empty(); }

  void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  void param(const std::string& key, long value) { params.emplace_back(key, std::to_string(value)); }

  void pass() { ++cases; }
  void fail(const std::string& case_id, const std::string& detail) {
    ++cases;
    failures.push_back({case_id, detail});
  }
  void merge(const CheckReport& o) {
    cases += o.cases;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["check"] = check;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    j["cases"] = cases;
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : failures) f.push_back({{"case", x.case_id}, {"detail", x.detail}});
    j["failures"] = f;
    j["status"] = ok() ? "ok" : "fail";
    j["seed"] = seed;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << (ok() ? "ok" : "FAIL") << " " << check;
    for (const auto& [k, v] : params) os << " " << k << "=" << v;
    os << " cases=" << cases << " failures=" << failures.size() << " seed=" << seed << "\n";
    for (const auto& f : failures) os << "  case " << f.case_id << ": " << f.detail << "\n";
    return os.str();
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "check,status,cases,failures,seed\n";
    os << check << "," << (ok() ? "ok" : "fail") << "," << cases << "," << failures.size() << ","
       << seed << "\n";
    for (const auto& f : failures) os << "failure," << f.case_id << ",\"" << f.detail << "\",,\n";
    return os.str();
  }
};

}  // namespace chern
