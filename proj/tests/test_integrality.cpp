#include <catch2/catch_amalgamated.hpp>

#include "chern/integrality.hpp"
#include "chern/registry.hpp"

using namespace chern;

namespace {
RationalField Q;
const ModelVariety P1{{1}}, P2{{2}}, P3{{3}};
const ModelVariety P2xP1{{2, 1}}, P2xP2{{2, 2}};
}  // namespace

TEST_CASE("chpsi check on examples") {
  CHECK(check_chern_adams(P1, 2, 0, 10).ok());
  CHECK(check_chern_adams(ModelVariety{{0}}, 7, 0, 3).ok());
  CHECK(check_chern_adams(ModelVariety{}, 7, 0, 3).ok());  // the base point
  CHECK(check_chern_adams(P2xP1, 3, 0, 25).ok());
  // spot value: ch_0 fixed, ch_1 halved for l=2 on [O_P1]
  const auto before = ch_hom(KHomElt::structure_sheaf(P1));
  const auto after = ch_hom(adams_hom(2, KHomElt::structure_sheaf(P1)));
  CHECK(after[0] == before[0]);
  CHECK(after[1] == before[1].scale(Rational(1, 2)));
}

TEST_CASE("chpsi for negative l") {
  CHECK(check_chern_adams(P2, -2, 0, 10).ok());
  CHECK(check_chern_adams(P2xP1, -3, 0, 10).ok());
}

TEST_CASE("graded check on examples") {
  // point: difference is exactly zero
  {
    CheckReport rep;
    check_graded_case(rep, 2, KHomElt::basis(P3, {0}), "pt");
    CHECK(rep.ok());
  }
  // [O_P1], l=5: difference is (4/5)[[0]], level 0
  const KHomElt x = KHomElt::structure_sheaf(P1);
  const KHomElt diff = adams_hom(5, x) - x.scale(Rational(1, 5));
  KHomElt expect(P1);
  expect.add_term({0}, Rational(4, 5));
  CHECK(diff == expect);
  CHECK(diff.filtration_level() == 0);
  // full sweep on P2xP2 for l = 3
  CHECK(check_graded(P2xP2, 3, 0, 25).ok());
  for (long l : {2L, 5L, 7L}) CHECK(check_graded(P2xP1, l, 0, 25).ok());
  // zero input has no filtration level
  CheckReport rep;
  CHECK_THROWS_AS(check_graded_case(rep, 2, KHomElt(P1), "zero"), std::domain_error);
}

TEST_CASE("integrality bound on examples") {
  // (P2, p=2, [O_P2]): v_2(ch_0) = 0 >= -2
  const auto ch = ch_hom(KHomElt::structure_sheaf(P2));
  CHECK(vp(ch[0], 2) == Valuation::of(0));
  CHECK(check_chern_integrality(P2, 2, 0, 25).ok());
  CHECK(check_chern_integrality(P1, 3, 0, 25).ok());
  CHECK(check_chern_integrality(P2xP1, 5, 0, 25).ok());
  // strict range restriction also passes
  CHECK(check_chern_integrality(P2xP2, 2, 0, 25, true).ok());
  // n_max beyond the filtration level is rejected
  CheckReport rep;
  CHECK_THROWS_AS(
      check_integrality_case(rep, P2, 2, KHomElt::basis(P2, {0}), 1, false, "bad"),
      std::invalid_argument);
}

TEST_CASE("lci integrality") {
  CHECK(check_lci_integrality(ModelVariety{{4}}).ok());
  CHECK(check_lci_integrality(ModelVariety{}).ok());
  CHECK(check_lci_integrality(ModelVariety{{2, 3}}).ok());
  CHECK(check_lci_integrality(ModelVariety{{4}}, 2).ok());
  // tau_4 = 720 exactly clears the degree-4 Todd denominator of a line
  // bundle on P4 (the top Todd component of the full tangent class has
  // integral degree chi = 1 already, so the line-bundle case is the sharp one)
  const ChowQ td = genus_apply(todd_series(4), VirtualBundle::line_bundle(ModelVariety{{4}}, {1}));
  const Rational c = td.coeff({4});
  CHECK(!is_integer(c * Rational(todd_number(3))));
  CHECK(is_integer(c * Rational(todd_number(4))));
}

TEST_CASE("todd valuation bound") {
  CHECK(check_todd_valuation(ModelVariety{{4}}, 2, 0, 25).ok());
  CHECK(check_todd_valuation(ModelVariety{{5}}, 3, 0, 25).ok());
  // u = 0: only Td^0 = 1 survives
  const ChowQ one = genus_apply(todd_series(3), VirtualBundle(P3));
  CHECK(one == ChowQ::unit(Q, P3));
  // u = O(1) - O(2) on P5 at p = 3
  const ModelVariety P5{{5}};
  VirtualBundle u = VirtualBundle::line_bundle(P5, {1});
  u.add({2}, -1);
  CheckReport rep;
  check_todd_valuation_case(rep, P5, 3, u, "O(1)-O(2)");
  CHECK(rep.ok());
}

TEST_CASE("todd vs r-genus mod p") {
  // single line bundle, p=2, j=1: 2 Td^1(-L) = -c1 = c1 = r_1(L) mod 2
  PrimeField F2(2);
  const VirtualBundle L = VirtualBundle::line_bundle(P2, {1});
  const ChowQ td = genus_apply(todd_series(2), -L);
  CHECK(td.coeff({1}) == Rational(-1, 2));
  const ChowFp lhs = reduce_mod_p_lattice(td.component_codim(1).scale(Rational(2)), F2);
  const ChowFp rhs = r_genus(F2, L).component_codim(1);
  CHECK(lhs == rhs);

  CHECK(check_todd_mod_p(ModelVariety{{4}}, 3, 0, 25).ok());
  CHECK(check_todd_mod_p(ModelVariety{{2, 3}}, 2, 0, 25).ok());
}

TEST_CASE("proof mechanics replay") {
  for (long p : {2L, 3L}) {
    CheckReport rep;
    rep.check = "replay";
    for (const auto& X : {P1, P2, P2xP1}) {
      for (const Expo& I : X.box())
        check_proof_replay_case(rep, X, p, KHomElt::basis(X, I), "basis");
      auto rng = case_rng(0, "replay/" + X.name() + "/" + std::to_string(p));
      for (int c = 0; c < 10; ++c)
        check_proof_replay_case(rep, X, p, random_khom(X, rng), "random");
    }
    INFO("p = " << p);
    CHECK(rep.ok());
  }
}

TEST_CASE("reports are structured and mergeable") {
  CheckReport a = check_chern_adams(P1, 2, 0, 5);
  CHECK(a.check == "chpsi");
  CHECK(a.cases > 0);
  const auto j = a.to_json();
  CHECK(j["status"] == "ok");
  CHECK(j["check"] == "chpsi");
  CHECK(j["failures"].is_array());
  CheckReport b = check_chern_adams(P2, 2, 0, 5);
  const long total = a.cases + b.cases;
  a.merge(b);
  CHECK(a.cases == total);
}

TEST_CASE("registry dispatch and parameter validation") {
  CheckParams p;
  p.kv["l"] = "2";
  p.kv["cases"] = "5";
  CHECK(run_check("chpsi", p).ok());
  CHECK_THROWS_AS(run_check("nonsense", {}), UnknownCheck);
  CheckParams bad;
  bad.kv["p"] = "4";
  CHECK_THROWS_AS(run_check("mainvp", bad), BadParams);
  CheckParams missing;
  CHECK_THROWS_AS(run_check("chpsi", missing), BadParams);
  CheckParams inv;
  inv.kv["p"] = "3";
  inv.kv["max-deg"] = "30";
  CHECK(run_check("inv-series", inv).ok());
}
