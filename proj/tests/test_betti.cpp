#include <cmath>

#include "betti.hpp"
#include "catalog.hpp"
#include "doctest.h"
#include "mcg.hpp"
#include "rng.hpp"

using namespace rhm;

TEST_CASE("heegaard presentation of the identity splitting") {
  // identity endo: relators are the a-letters themselves? no: the relators
  // come from the meridian images, so the identity gluing gives relators b_i
  // which vanish after dropping b-letters: presentation of the free group
  auto pres = heegaard_presentation(identity_endo(2), 2);
  CHECK(pres.g == 2);
  REQUIRE(pres.relators.size() == 2);
  for (const auto& r : pres.relators) CHECK(r.empty());
}

TEST_CASE("free-group cover homology: beta_1 = |Q|(g-1) + 1") {
  auto pres = heegaard_presentation(identity_endo(2), 2);
  for (const char* spec : {"Z/2", "Z/3"}) {
    const BuiltGroup& bg = build_group(spec);
    // any surjection Z^g -> Q: send a_1 to a generator
    std::vector<Elt> f(2, 0);
    for (Elt x = 0; x < (Elt)bg.G->order(); x++)
      if (bg.G->order_of(x) == bg.G->order()) f[0] = x;
    CoverHomology ch = cover_betti(pres, *bg.G, f);
    int n = bg.G->order();
    CHECK(ch.schreier_generators == n * 2 - (n - 1));
    CHECK(ch.beta1 == n * (2 - 1) + 1);
    CHECK(ch.h1.free_rank == ch.beta1);
  }
}

TEST_CASE("fox walker matches the explicit Schreier computation") {
  for (const char* spec : {"Z/2", "Z/3"}) {
    const BuiltGroup& bg = build_group(spec);
    const FiniteGroup& Q = *bg.G;
    int g = 2;
    auto cands = generating_tuples(Q, g);
    REQUIRE(!cands.empty());
    for (uint64_t seed : {1, 2, 3, 4, 5, 6, 7, 8}) {
      TwistWalk walk(g, seed, 99);
      FoxWalker fox(g, Q, cands);
      std::vector<std::vector<Word>> endos(cands.size(), identity_endo(g));
      // track the composed endomorphism explicitly alongside the fox walker
      std::vector<Word> composed = identity_endo(g);
      for (int step = 0; step < 40; step++) {
        const auto& img = walk.step();
        if (walk.last_was_hold()) continue;
        fox.apply(img);
        composed = compose_endo(composed, img);
      }
      auto pres = heegaard_presentation(composed, g);
      for (size_t c = 0; c < cands.size(); c++) {
        bool ext = extends_over_manifold(pres, Q, cands[c]);
        CHECK(fox.extends(c) == ext);
        if (ext) {
          CoverHomology ch = cover_betti(pres, Q, cands[c]);
          CHECK(fox.beta1(c) == ch.beta1);
        }
      }
    }
  }
}

TEST_CASE("betti trend experiment output is well formed and reproducible") {
  auto trend =
      betti_trend_experiment(*build_group("Z/2").G, 2, {50, 200}, 60, 3);
  auto trend2 =
      betti_trend_experiment(*build_group("Z/2").G, 2, {50, 200}, 60, 3);
  REQUIRE(trend.size() == 2);
  for (size_t i = 0; i < trend.size(); i++) {
    CHECK(trend[i].extending == 60);
    CHECK(trend[i].walks >= trend[i].extending);
    CHECK(trend[i].freq ==
          doctest::Approx((double)trend[i].positive / 60).epsilon(1e-12));
    CHECK(trend[i].length == trend2[i].length);
    CHECK(trend[i].positive == trend2[i].positive);
  }
}

TEST_CASE("generating tuples counts") {
  // Z/2: the nonzero pairs (3 of them) generate
  CHECK(generating_tuples(*build_group("Z/2").G, 2).size() == 3);
  // Z/3: 8 nonzero pairs
  CHECK(generating_tuples(*build_group("Z/3").G, 2).size() == 8);
}

TEST_CASE("presentation cap throws") {
  // compose twists until the meridian images pass the cap
  TwistWalk walk(2, 5, 1);
  std::vector<Word> composed = identity_endo(2);
  while (composed[1].size() + composed[3].size() < 5000)
    composed = compose_endo(composed, walk.step());
  CHECK_THROWS_AS(heegaard_presentation(composed, 2, 100), std::length_error);
}
