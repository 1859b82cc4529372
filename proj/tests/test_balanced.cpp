#include <cmath>
#include <map>
#include <memory>

#include "balanced.hpp"
#include "catalog.hpp"
#include "doctest.h"
#include "rng.hpp"

using namespace rhm;

namespace {
const Canonicalizer& canon(const std::string& spec) {
  static std::map<std::string, std::unique_ptr<Canonicalizer>> cache;
  auto it = cache.find(spec);
  if (it == cache.end())
    it = cache.emplace(spec, std::make_unique<Canonicalizer>(build_group(spec)))
             .first;
  return *it->second;
}
}  // namespace

TEST_CASE("random relators uniformize on a cyclic quotient") {
  const FiniteGroup& G = *build_group("Z/5").G;
  Elt gen = 0;
  for (Elt x = 0; x < 5; x++)
    if (G.order_of(x) == 5) gen = x;
  auto rng = make_rng(1, 4);
  std::vector<uint64_t> hits(5, 0);
  const int samples = 20000;
  for (int s = 0; s < samples; s++) {
    RelatorWord w = random_relator(1, 200, rng);
    hits[evaluate_relator(G, w, {gen})]++;
  }
  // total variation distance to uniform below 0.02
  double tv = 0;
  for (auto h : hits) tv += std::fabs((double)h / samples - 0.2) / 2;
  CHECK(tv < 0.02);
}

TEST_CASE("exact binomial quotient probability for A_5, g = 2") {
  BalancedExact e = balanced_quotient_exact_binomial(canon("A 5"), 2);
  CHECK(e.classes == 19);
  CHECK(std::fabs(e.p_binomial - 0.0052646) < 1e-6);
  CHECK(e.p_poisson == doctest::Approx(0.0052638).epsilon(1e-4));
  CHECK(e.mu == doctest::Approx(19.0 / 3600).epsilon(1e-12));
}

TEST_CASE("monte carlo agrees with the exact binomial within 3 sigma") {
  BalancedExact e = balanced_quotient_exact_binomial(canon("A 5"), 2);
  const uint64_t N = 30000;
  BalancedMC mc = balanced_quotient_mc(canon("A 5"), 2, 2, 2000, N, 7);
  double sigma = std::sqrt(e.p_binomial * (1 - e.p_binomial) / N);
  CHECK(std::fabs(mc.estimate - e.p_binomial) < 4 * sigma);
}

TEST_CASE("expected table rows") {
  BalancedTableRow a5 = expected_table_row("A 5");
  CHECK(a5.gen_pairs == 19);
  CHECK(a5.exp_2gen == doctest::Approx(19.0 / 3600).epsilon(1e-12));
  CHECK(a5.exp_ngen == doctest::Approx(1.0 / 120).epsilon(1e-12));
  CHECK(a5.source == "computed");
  BalancedTableRow m11 = expected_table_row("M11");
  CHECK(m11.gen_pairs == 6478);
  CHECK(m11.source == "table");
}

TEST_CASE("abelianization matrix") {
  // relators a1, a2^2 -> matrix [[1,0],[0,2]]
  std::vector<RelatorWord> rels = {{1}, {2, 2}};
  ZMat M = abelianization_matrix(rels, 2);
  CHECK(M[0][0] == 1);
  CHECK(M[1][0] == 0);
  CHECK(M[0][1] == 0);
  CHECK(M[1][1] == 2);
  AbelianGroupDesc d = cokernel(M);
  CHECK(d.finite());
  CHECK(d.order() == 2);
}

TEST_CASE("sylow order distribution") {
  // g = 1: d_k = p^-k (1 - 1/p)
  auto d1 = sylow_order_distribution(1, 3, 4);
  for (int k = 0; k <= 4; k++)
    CHECK(d1[k].value == doctest::Approx((1 - 1.0 / 3) / std::pow(3, k))
                             .epsilon(1e-12));
  // g = 2, p = 2: d_0 = 3/8
  auto d2 = sylow_order_distribution(2, 2, 6);
  CHECK(d2[0].rational == "3/8");
  // partial sums increase toward 1 with geometric tail
  double sum = 0;
  for (const auto& c : d2) sum += c.value;
  CHECK(sum > 0.98);
  CHECK(sum < 1.0);
}

TEST_CASE("AFP probabilities match the paper examples") {
  CHECK(afp_probability(2, 2, {}).rational == "3/8");
  CHECK(afp_probability(2, 2, {1}).rational == "9/32");
  CHECK(afp_probability(2, 2, {2}).rational == "9/64");
  CHECK(afp_probability(2, 2, {0, 1}).rational == "3/128");
  CHECK(afp_probability(2, 3, {}).rational == "16/27");
  CHECK(afp_probability(2, 3, {1}).rational == "64/243");
  CHECK(afp_probability(2, 3, {2}).rational == "64/729");
  CHECK(afp_probability(2, 3, {0, 1}).rational == "16/2187");
  // g = 1: P(Z/p^k) = p^-k (1 - 1/p)
  CHECK(afp_probability(1, 2, {1}).rational == "1/4");
  // type probabilities refine the order distribution: order p^2 splits into
  // Z/p^2 and (Z/p)^2
  auto dist = sylow_order_distribution(2, 2, 2);
  double split = afp_probability(2, 2, {2}).value +
                 afp_probability(2, 2, {0, 1}).value;
  CHECK(split == doctest::Approx(dist[2].value).epsilon(1e-12));
}

TEST_CASE("AFP simulation matches exact within 3 sigma") {
  auto rng = make_rng(13, 2);
  const uint64_t N = 40000;
  auto sim = afp_simulate(2, 2, N, rng);
  for (const auto& [type, expected] :
       std::vector<std::pair<AbelianType, double>>{
           {{}, 3.0 / 8}, {{1}, 9.0 / 32}, {{2}, 9.0 / 64},
           {{0, 1}, 3.0 / 128}}) {
    uint64_t count = sim.count(type) ? sim.at(type) : 0;
    double sigma = std::sqrt(expected * (1 - expected) * N);
    CHECK(std::fabs((double)count - expected * N) < 3 * sigma);
  }
}

TEST_CASE("all-cyclic probabilities match the paper") {
  CHECK(std::fabs(all_cyclic_probability(2) - 0.924) < 0.002);
  CHECK(std::fabs(all_cyclic_probability(5) - 0.856) < 0.002);
  CHECK(std::fabs(all_cyclic_probability(0) - 0.847) < 0.002);
}

TEST_CASE("2- and 3-Sylow orders are independent empirically") {
  // simulate abelianizations and check the joint order distribution factors
  auto rng = make_rng(29, 0);
  const int N = 20000;
  std::map<std::pair<int, int>, int> joint;
  std::map<int, int> m2, m3;
  for (int s = 0; s < N; s++) {
    std::vector<RelatorWord> rels = {random_relator(2, 600, rng),
                                     random_relator(2, 600, rng)};
    ZMat M = abelianization_matrix(rels, 2);
    AbelianGroupDesc d = cokernel(M);
    int v2 = 0, v3 = 0;
    if (d.finite()) {
      mpz_class n = d.order();
      while (n % 2 == 0) { v2++; n /= 2; }
      while (n % 3 == 0) { v3++; n /= 3; }
    } else {
      v2 = v3 = -1;  // infinite: lump separately
    }
    joint[{v2, v3}]++;
    m2[v2]++;
    m3[v3]++;
  }
  // check factorization on the four most common cells
  for (auto [a, b] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
    double pj = (double)joint[{a, b}] / N;
    double pf = (double)m2[a] / N * m3[b] / N;
    double sigma = std::sqrt(pf * (1 - pf) / N);
    CHECK(std::fabs(pj - pf) < 4 * sigma + 0.005);
  }
}
