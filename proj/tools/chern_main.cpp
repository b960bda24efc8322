// chern: exact characteristic-class calculator for products of projective
// spaces. Subcommands: verify | compute | table | degree.
//
// Exit codes: 0 success, 1 a check or verdict failed, 2 usage/parse errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "chern/degree.hpp"
#include "chern/eval.hpp"
#include "chern/numtheory.hpp"
#include "chern/registry.hpp"
#include "chern/series.hpp"

namespace {

struct GlobalOpts {
  std::string format = "text";
  std::uint64_t seed = 0;
  bool quiet = false;
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (!g.quiet) std::cout << text;
}

int cmd_verify(const GlobalOpts& g, const std::string& id, const chern::CheckParams& params) {
  chern::CheckReport rep = chern::run_check(id, params);
  if (g.format == "json")
    emit(g, rep.to_json().dump(2) + "\n");
  else if (g.format == "csv")
    emit(g, rep.to_csv());
  else
    emit(g, rep.to_text());
  return rep.ok() ? 0 : 1;
}

int cmd_compute(const GlobalOpts& g, const std::string& variety, const std::string& source,
                long mod, const std::string& context) {
  chern::expr::EvalEnv env{chern::ModelVariety::parse(variety), std::nullopt};
  if (mod != 0) {
    chern::require_prime(mod);
    env.mod_p = mod;
  }
  std::optional<chern::expr::Ctx> forced;
  if (context == "chow") forced = chern::expr::Ctx::Chow;
  else if (context == "k") forced = chern::expr::Ctx::K;
  else if (context != "auto") throw chern::BadParams("--context must be auto, chow or k");

  const chern::expr::Value v = chern::expr::evaluate_source(source, env, forced);
  if (g.format == "json")
    emit(g, chern::expr::value_json(v, env.X).dump(2) + "\n");
  else if (g.format == "csv")
    emit(g, chern::expr::value_csv(v, env.X));
  else {
    std::string t = chern::expr::value_text(v);
    emit(g, t + (t.empty() || t.back() != '\n' ? "\n" : ""));
  }
  return 0;
}

int cmd_table(const GlobalOpts& g, const std::string& which, long max, long max_deg, long p) {
  using nlohmann::json;
  std::ostringstream text;
  json j;
  if (which == "todd-numbers") {
    if (max < 0) throw chern::BadParams("--max must be >= 0");
    json arr = json::array();
    for (long d = 0; d <= max; ++d) {
      const chern::BigInt t = chern::todd_number(d);
      text << "tau_" << d << " = " << t.str() << "\n";
      arr.push_back({{"d", d}, {"value", chern::degree::bigint_json(t)}});
    }
    j["todd-numbers"] = arr;
  } else if (which == "todd-series") {
    if (max_deg < 0) throw chern::BadParams("--max-deg must be >= 0");
    const auto s = chern::todd_series(static_cast<int>(max_deg));
    json arr = json::array();
    for (int d = 0; d <= max_deg; ++d) {
      text << "x^" << d << ": " << chern::to_string(s.coeff(d)) << "\n";
      arr.push_back(chern::to_string(s.coeff(d)));
    }
    j["todd-series"] = arr;
  } else if (which == "r-series") {
    chern::require_prime(p);
    if (max_deg < 0) throw chern::BadParams("--max-deg must be >= 0");
    const auto s = chern::r_series_q(p, static_cast<int>(max_deg));
    json arr = json::array();
    for (int d = 0; d <= max_deg; ++d) {
      text << "x^" << d << ": " << chern::to_string(s.coeff(d)) << "\n";
      arr.push_back(chern::to_string(s.coeff(d)));
    }
    j["r-series"] = arr;
    j["p"] = p;
  } else {
    throw chern::BadParams("unknown table '" + which +
                           "' (expected todd-numbers, todd-series or r-series)");
  }
  if (g.format == "json")
    emit(g, j.dump(2) + "\n");
  else if (g.format == "csv") {
    std::ostringstream csv;
    csv << "index,value\n";
    std::istringstream lines(text.str());
    std::string line;
    long i = 0;
    while (std::getline(lines, line)) {
      const auto pos = line.find(": ");
      const auto eq = line.find(" = ");
      csv << i++ << "," << line.substr(pos != std::string::npos ? pos + 2 : eq + 3) << "\n";
    }
    emit(g, csv.str());
  } else
    emit(g, text.str());
  return 0;
}

int cmd_degree(const GlobalOpts& g, const std::string& path, long p) {
  chern::require_prime(p);
  std::ifstream in(path);
  if (!in) throw chern::BadParams("cannot open records file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw chern::BadParams("malformed JSON in '" + path + "': " + ex.what());
  }
  const auto file = chern::degree::parse_records(j);
  const auto verdicts = chern::degree::run_degree_checks(file, p);
  bool any_violation = false;
  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "subject,rule,verdict\n";
  for (const auto& v : verdicts) {
    arr.push_back(v.to_json());
    text << v.subject << ": " << chern::degree::verdict_str(v.verdict) << " [" << v.rule << "]"
         << (v.detail.empty() ? "" : " " + v.detail) << "\n";
    csv << v.subject << "," << v.rule << "," << chern::degree::verdict_str(v.verdict) << "\n";
    if (v.verdict == chern::degree::Verdict::Violates ||
        v.verdict == chern::degree::Verdict::InconsistentData)
      any_violation = true;
  }
  if (g.format == "json")
    emit(g, arr.dump(2) + "\n");
  else if (g.format == "csv")
    emit(g, csv.str());
  else
    emit(g, text.str());
  return any_violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact characteristic-class calculus on products of projective spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--format", g.format, "output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", g.seed, "seed for randomized sweeps (default 0)");
  app.add_flag("--quiet", g.quiet, "suppress stdout; exit code only");

  // verify
  auto* verify = app.add_subcommand("verify", "run a registered identity check");
  std::string check_id;
  verify->add_option("check", check_id, "check id")->required();
  long v_p = 0, v_l = 0, v_cases = -1, v_maxdim = -1, v_maxdeg = -1;
  std::string v_variety, v_variety2, v_records, v_strict;
  verify->add_option("--p", v_p, "prime p");
  verify->add_option("--l", v_l, "Adams parameter l");
  verify->add_option("--variety", v_variety, "model variety, e.g. P2xP1");
  verify->add_option("--variety2", v_variety2, "second model variety (cartan)");
  verify->add_option("--cases", v_cases, "random cases per sweep");
  verify->add_option("--max-dim", v_maxdim, "sweep all models up to this dimension");
  verify->add_option("--max-deg", v_maxdeg, "series truncation degree");
  verify->add_option("--records", v_records, "degree-records JSON file (degf)");
  verify->add_option("--strict", v_strict, "true: restrict to the unconditional codimension range");

  // compute
  auto* compute = app.add_subcommand("compute", "evaluate an expression");
  std::string c_variety, c_expr, c_context = "auto";
  long c_mod = 0;
  compute->add_option("--variety", c_variety, "model variety")->required();
  compute->add_option("--expr", c_expr, "expression source")->required();
  compute->add_option("--mod", c_mod, "evaluate Chow classes mod this prime");
  compute->add_option("--context", c_context, "auto, chow or k");

  // table
  auto* table = app.add_subcommand("table", "print a named table");
  std::string t_which;
  long t_max = 10, t_maxdeg = 10, t_p = 2;
  table->add_option("which", t_which, "todd-numbers | todd-series | r-series")->required();
  table->add_option("--max", t_max, "last Todd number index");
  table->add_option("--max-deg", t_maxdeg, "series truncation degree");
  table->add_option("--p", t_p, "prime for r-series");

  // degree
  auto* deg = app.add_subcommand("degree", "check a degree-records file");
  std::string d_records;
  long d_p = 0;
  deg->add_option("--records", d_records, "records JSON file")->required();
  deg->add_option("--p", d_p, "prime p")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      chern::CheckParams params;
      params.seed = g.seed;
      if (verify->count("--p")) params.kv["p"] = std::to_string(v_p);
      if (verify->count("--l")) params.kv["l"] = std::to_string(v_l);
      if (!v_variety.empty()) params.kv["variety"] = v_variety;
      if (!v_variety2.empty()) params.kv["variety2"] = v_variety2;
      if (v_cases >= 0) params.kv["cases"] = std::to_string(v_cases);
      if (v_maxdim >= 0) params.kv["max-dim"] = std::to_string(v_maxdim);
      if (v_maxdeg >= 0) params.kv["max-deg"] = std::to_string(v_maxdeg);
      if (!v_records.empty()) params.kv["records"] = v_records;
      if (!v_strict.empty()) params.kv["strict"] = v_strict;
      return cmd_verify(g, check_id, params);
    }
    if (compute->parsed()) return cmd_compute(g, c_variety, c_expr, c_mod, c_context);
    if (table->parsed()) return cmd_table(g, t_which, t_max, t_maxdeg, t_p);
    if (deg->parsed()) return cmd_degree(g, d_records, d_p);
  } catch (const chern::UnknownCheck& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const chern::BadParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const chern::expr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const chern::expr::ElabError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const chern::expr::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
