#include <catch2/catch_amalgamated.hpp>

#include "chern/morphism.hpp"
#include "chern/rng.hpp"
#include "chern/sampling.hpp"

using namespace chern;

namespace {
RationalField Q;
const ModelVariety P1{{1}}, P2{{2}}, P3{{3}};
const ModelVariety P2xP1{{2, 1}};
}  // namespace

TEST_CASE("pushforward along linear embeddings") {
  // point in P2: [pt] -> h^2
  const Morphism f = Morphism::linear_embedding(ModelVariety{{0}}, P2);
  const ChowQ pt = ChowQ::unit(Q, ModelVariety{{0}});
  CHECK(f.pushforward(pt) == ChowQ::monomial(Q, P2, {2}, Rational(1)));

  // line in P2: [P1] -> h, point goes to h^2
  const Morphism g = Morphism::linear_embedding(P1, P2);
  CHECK(g.pushforward(ChowQ::unit(Q, P1)) == ChowQ::hyperplane(Q, P2, 0));
  CHECK(g.pushforward(ChowQ::monomial(Q, P1, {1}, Rational(1))) ==
        ChowQ::monomial(Q, P2, {2}, Rational(1)));
}

TEST_CASE("pullback along projections") {
  const Morphism pr = Morphism::projection(P2xP1, {0});  // P2xP1 -> P2
  CHECK(pr.pullback(ChowQ::hyperplane(Q, P2, 0)) == ChowQ::hyperplane(Q, P2xP1, 0));
  CHECK(pr.pullback(ChowQ::unit(Q, P2)) == ChowQ::unit(Q, P2xP1));

  // pushforward kills positive-dimensional dropped classes
  CHECK(pr.pushforward(ChowQ::unit(Q, P2xP1)).is_zero());
  // and integrates point classes of the dropped factor
  CHECK(pr.pushforward(ChowQ::monomial(Q, P2xP1, {1, 1}, Rational(1))) ==
        ChowQ::hyperplane(Q, P2, 0));
}

TEST_CASE("pullback along embeddings truncates") {
  const Morphism g = Morphism::linear_embedding(P1, P2);
  CHECK(g.pullback(ChowQ::hyperplane(Q, P2, 0)) == ChowQ::hyperplane(Q, P1, 0));
  CHECK(g.pullback(ChowQ::monomial(Q, P2, {2}, Rational(1))).is_zero());
}

TEST_CASE("virtual tangent bundles of morphism shapes") {
  // linear P1 in P2: T_f = -[O(1)]
  const Morphism g = Morphism::linear_embedding(P1, P2);
  CHECK(g.tangent().parts().at({1}) == -1);
  CHECK(g.tangent().rank() == -1);

  // projection P2xP1 -> P2: T_f = relative tangent of the P1 factor
  const Morphism pr = Morphism::projection(P2xP1, {0});
  CHECK(pr.tangent().parts().at({0, 1}) == 2);
  CHECK(pr.tangent().parts().at({0, 0}) == -1);
  CHECK(pr.tangent().rank() == 1);

  // identity: T_f = 0
  CHECK(Morphism::identity(P2).tangent().parts().empty());

  // project-then-embed P2xP1 -> P3
  const Morphism h(P2xP1, {0}, P3);
  CHECK(h.relative_dim() == 0);
  CHECK(h.tangent().rank() == 0);
}

TEST_CASE("K0' pushforward preserves the filtration") {
  const Morphism pr = Morphism::projection(P2xP1, {0});
  const Morphism em = Morphism::linear_embedding(P1, P3);
  CHECK(pr.pushforward(KHomElt::basis(P2xP1, {1, 1})) == KHomElt::basis(P2, {1}));
  CHECK(em.pushforward(KHomElt::basis(P1, {1})) == KHomElt::basis(P3, {1}));
  auto rng = case_rng(0, "kfilt");
  for (int c = 0; c < 50; ++c) {
    const KHomElt x = random_khom(P2xP1, rng);
    const KHomElt y = pr.pushforward(x);
    if (!y.is_zero()) CHECK(y.filtration_level() <= x.filtration_level());
  }
}

TEST_CASE("functoriality composes") {
  // pull h along P2xP1 -> P2 then embed-level sanity on products
  const Morphism f(P2xP1, {0}, P3);  // drop P1, embed P2 in P3
  const ChowQ h3 = ChowQ::hyperplane(Q, P3, 0);
  CHECK(f.pullback(h3) == ChowQ::hyperplane(Q, P2xP1, 0));
  // [P2 x pt] pushes to the hyperplane class of P3
  CHECK(f.pushforward(ChowQ::monomial(Q, P2xP1, {0, 1}, Rational(1))) ==
        ChowQ::hyperplane(Q, P3, 0));
  // projection formula f_*(f^*(a) b) = a f_*(b) on a sample
  const ChowQ b = ChowQ::monomial(Q, P2xP1, {1, 1}, Rational(1));
  CHECK(f.pushforward(f.pullback(h3) * b) == h3 * f.pushforward(b));
}

TEST_CASE("unsupported shapes are rejected") {
  CHECK_THROWS_AS(Morphism::linear_embedding(P2, P1), std::invalid_argument);
  CHECK_THROWS_AS(Morphism(P2xP1, {0, 0}, P2xP1), std::invalid_argument);
  CHECK_THROWS_AS(Morphism(P2xP1, {2}, P2), std::invalid_argument);
  const Morphism pr = Morphism::projection(P2xP1, {0});
  CHECK_THROWS_AS(pr.pullback(ChowQ::unit(Q, P3)), std::invalid_argument);
}
