// Acceptance suite: every criterion is exact (tolerance zero) and prints one
// pass/fail line. Exit code 0 iff all criteria pass.
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chern/degree.hpp"
#include "chern/integrality.hpp"
#include "chern/registry.hpp"
#include "chern/steenrod.hpp"
#include "oracles.hpp"

using namespace chern;

namespace {

RationalField Q;
int failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " " << name;
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
}

bool report_ok(const CheckReport& rep, std::string& detail) {
  if (rep.ok()) return true;
  detail = rep.failures.front().case_id + ": " + rep.failures.front().detail;
  return false;
}

}  // namespace

int main() {
  // 1. Todd numbers two ways; tau_d clears the Todd-series denominators.
  criterion("01-todd-numbers-and-series-integrality", [](std::string& detail) {
    const auto td = todd_series(10);
    for (long d = 0; d <= 10; ++d) {
      const BigInt direct = todd_number(d);
      BigInt stepwise = d == 0 ? BigInt(1) : todd_number(d - 1);
      if (d > 0)
        for (long p : primes_upto(d + 1))
          if (d % (p - 1) == 0) stepwise *= p;
      if (direct != stepwise) {
        detail = "tau_" + std::to_string(d) + " differs between the two routes";
        return false;
      }
      if (!is_integer(Rational(direct) * td.coeff(static_cast<int>(d)))) {
        detail = "tau_" + std::to_string(d) + " does not clear the x^" + std::to_string(d) +
                 " Todd coefficient";
        return false;
      }
    }
    return true;
  });

  // 2. (x R) o (x W) = x over Z/p up to degree p^4.
  criterion("02-series-composition-inverse", [](std::string& detail) {
    for (long p : {2L, 3L, 5L}) {
      PrimeField F(p);
      const int N = static_cast<int>(p * p * p * p);
      const auto x = TruncSeries<PrimeField>::identity(F, N);
      if (!(((x * r_series(F, p, N)).compose(x * w_series(F, p, N))) == x)) {
        detail = "failed at p=" + std::to_string(p);
        return false;
      }
    }
    return true;
  });

  // 3. ch_n psi_l = l^{-n} ch_n on the criterion corpus, l in {2,3,5,7}.
  criterion("03-chern-adams-commutation", [](std::string& detail) {
    for (const auto& X : corpus_small())
      for (long l : {2L, 3L, 5L, 7L}) {
        const CheckReport rep = check_chern_adams(X, l, 0, 0);
        if (!report_ok(rep, detail)) return false;
      }
    return true;
  });

  // 4. psi_l(x) - l^{-d} x drops filtration on the same corpus.
  criterion("04-adams-filtration-drop", [](std::string& detail) {
    for (const auto& X : corpus_small())
      for (long l : {2L, 3L, 5L, 7L}) {
        const CheckReport rep = check_graded(X, l, 0, 0);
        if (!report_ok(rep, detail)) return false;
      }
    return true;
  });

  // 5. v_p(ch_{d-n}(x)) >= -[n/(p-1)] on every model of dim <= 8, every
  //    basis class plus 100 seeded random combinations, all n <= d.
  criterion("05-chern-integrality-sweep", [](std::string& detail) {
    for (const auto& X : models_up_to_dim(8)) {
      for (long p : {2L, 3L, 5L}) {
        const CheckReport rep = check_chern_integrality(X, p, 0, 100, false);
        if (!rep.ok()) {
          detail = X.name() + " p=" + std::to_string(p) + ": " + rep.failures.front().detail;
          return false;
        }
      }
    }
    return true;
  });

  // 6. The three Todd/Bott/Adams identities on 50 random bundles per model.
  criterion("06-todd-bott-adams-identities", [](std::string& detail) {
    for (const auto& X : corpus_small()) {
      const auto td = todd_series(X.dim());
      auto rng = case_rng(0, "acc6/" + X.name());
      for (int c = 0; c < 50; ++c) {
        const VirtualBundle u = random_bundle(X, rng);
        const KCohElt k = u.to_kcoh();
        for (long l : {2L, 3L, 5L}) {
          const ChowQ tdmu = genus_apply(td, -u);
          if (tdmu * ch_coh(bott_class(l, u)) !=
              genus_apply(td, -(u.adams(l))).scale(rational_pow(Rational(l), u.rank()))) {
            detail = "first identity fails on " + X.name();
            return false;
          }
          ChowQ sum1(Q, X);
          for (int i = 0; i <= X.dim(); ++i)
            sum1 = sum1 + tdmu.component_codim(i).scale(rational_pow(Rational(l), i));
          if (genus_apply(td, (-u).adams(l)) != sum1) {
            detail = "second identity fails on " + X.name();
            return false;
          }
          const ChowQ chk = ch_coh(k);
          ChowQ sum2(Q, X);
          for (int j = 0; j <= X.dim(); ++j)
            sum2 = sum2 + chk.component_codim(j).scale(rational_pow(Rational(l), j));
          if (ch_coh(adams_coh(l, k)) != sum2) {
            detail = "third identity fails on " + X.name();
            return false;
          }
        }
      }
    }
    return true;
  });

  // 7. p^j Td^{j(p-1)}(-u) = r_j(u) mod p up to j(p-1) <= 8.
  criterion("07-todd-vs-r-genus-mod-p", [](std::string& detail) {
    for (const auto& X : {ModelVariety{{8}}, ModelVariety{{2, 3, 3}}})
      for (long p : {2L, 3L, 5L}) {
        const CheckReport rep = check_todd_mod_p(X, p, 0, 50);
        if (!rep.ok()) {
          detail = X.name() + " p=" + std::to_string(p) + ": " + rep.failures.front().detail;
          return false;
        }
      }
    return true;
  });

  // 8. Factorial valuations against the counting oracle; prime-power
  //    factorial residues equal (-1)^i mod p.
  criterion("08-factorial-valuations-and-residues", [](std::string& detail) {
    for (long p : {2L, 3L, 5L, 7L, 11L})
      for (long n = 0; n <= 10000; ++n)
        if (factorial_valuation(n, p) != oracles::factorial_valuation_by_counting(n, p)) {
          detail = "n=" + std::to_string(n) + " p=" + std::to_string(p);
          return false;
        }
    const std::vector<std::pair<long, int>> range = {{2, 4}, {3, 3}, {5, 2}};
    for (const auto& [p, imax] : range)
      for (int i = 0; i <= imax; ++i) {
        const long want = (i % 2 == 0) ? 1 % p : p - 1;
        if (prime_power_factorial_residue(p, i) != want) {
          detail = "p=" + std::to_string(p) + " i=" + std::to_string(i);
          return false;
        }
      }
    return true;
  });

  // 9. The K-theoretic and genus pipelines agree on every basis cycle of
  //    every model of dim <= 6; spot value T_1[P2] = [line] mod 2.
  criterion("09-steenrod-pipeline-agreement", [](std::string& detail) {
    PrimeField F2(2);
    const ModelVariety P2{{2}};
    if (t_op_hom(1, ChowQ::unit(Q, P2), F2) != ChowFp::hyperplane(F2, P2, 0) ||
        t_op_via_genus(1, {2}, P2, F2) != ChowFp::hyperplane(F2, P2, 0)) {
      detail = "spot value T_1[P2] != [line]";
      return false;
    }
    for (const auto& X : models_up_to_dim(6))
      for (long p : {2L, 3L}) {
        const CheckReport rep = check_pipelines_agree(X, p);
        if (!rep.ok()) {
          detail = X.name() + " p=" + std::to_string(p) + ": " + rep.failures.front().case_id;
          return false;
        }
      }
    return true;
  });

  // 10. Cohomological-operation suite: unit laws, divisor law, Cartan on 50
  //     random pairs, Riemann-Roch on every supported morphism of the corpus.
  criterion("10-cohomological-operations-suite", [](std::string& detail) {
    for (long p : {2L, 3L}) {
      PrimeField F(p);
      const ModelVariety X{{static_cast<int>(4 * (p - 1))}};
      const ChowFp h = ChowFp::hyperplane(F, X, 0);
      if (t_op_coh(0, h) != h) {
        detail = "T^0 != id";
        return false;
      }
      if (t_op_coh(1, h) != -(h.pow(p))) {
        detail = "T^1(h) != -h^p at p=" + std::to_string(p);
        return false;
      }
      for (int i = 1; i * (p - 1) <= X.dim(); ++i)
        if (!t_op_coh(i, ChowFp::unit(F, X)).is_zero()) {
          detail = "T^i[X] != 0";
          return false;
        }
    }
    {
      const CheckReport a = check_cartan(ModelVariety{{2}}, ModelVariety{{2, 1}}, 2, 0, 25);
      const CheckReport b = check_cartan(ModelVariety{{1, 1}}, ModelVariety{{2}}, 3, 0, 25);
      if (!report_ok(a, detail) || !report_ok(b, detail)) return false;
    }
    for (long p : {2L, 3L})
      for (const auto& f : morphism_corpus()) {
        const CheckReport rep = check_riemann_roch(f, p, 0, 10);
        if (!rep.ok()) {
          detail = f.str() + " p=" + std::to_string(p) + ": " + rep.failures.front().detail;
          return false;
        }
      }
    return true;
  });

  // 11. T'_i = (-1)^i S_i for i <= p on all monomials of P^n, n <= 8; the
  //     fundamental-class formula; the recorded witness beyond i = p.
  criterion("11-inverse-steenrod-comparison", [](std::string& detail) {
    for (long p : {2L, 3L})
      for (int n = 1; n <= 8; ++n) {
        const CheckReport rep = check_inverse_vs_steenrod(ModelVariety{{n}}, p);
        if (!rep.ok()) {
          detail = "P" + std::to_string(n) + " p=" + std::to_string(p) + ": " +
                   rep.failures.front().case_id;
          return false;
        }
      }
    for (const auto& X : {ModelVariety{{2}}, ModelVariety{{1, 1}}, ModelVariety{{2, 1}}})
      for (long p : {2L, 3L}) {
        const CheckReport rep = check_fundamental_class(X, p);
        if (!rep.ok()) {
          detail = "fundamental class on " + X.name();
          return false;
        }
      }
    PrimeField F2(2);
    const ModelVariety P4{{4}};
    const ChowFp h = ChowFp::hyperplane(F2, P4, 0);
    if (steenrod_inverse_component(3, h) != h.pow(4) || !steenrod_component(3, h).is_zero()) {
      detail = "witness T'_3(h) = h^4 != S_3(h) = 0 not reproduced";
      return false;
    }
    return true;
  });

  // 12. The bundled record file yields exactly the expected verdicts.
  criterion("12-degree-record-verdicts", [](std::string& detail) {
    const char* env = std::getenv("CHERN_DATA");
    const std::string path = (env ? std::string(env) : std::string("data")) +
                             "/sample_records.json";
    std::ifstream in(path);
    if (!in) {
      detail = "cannot open " + path;
      return false;
    }
    nlohmann::json j;
    in >> j;
    const auto file = degree::parse_records(j);
    const auto verdicts = degree::run_degree_checks(file, 3);
    const std::vector<std::string> expect = {"strongly p-incompressible", "consistent",
                                             "VIOLATES"};
    if (verdicts.size() != expect.size()) {
      detail = "expected 3 verdicts, got " + std::to_string(verdicts.size());
      return false;
    }
    for (size_t i = 0; i < expect.size(); ++i)
      if (degree::verdict_str(verdicts[i].verdict) != expect[i]) {
        detail = "verdict " + std::to_string(i) + " is '" +
                 degree::verdict_str(verdicts[i].verdict) + "', expected '" + expect[i] + "'";
        return false;
      }
    return true;
  });

  if (failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " acceptance criteria failed" << std::endl;
  return 1;
}
