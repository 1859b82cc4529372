#include <cmath>

#include "doctest.h"
#include "rng.hpp"
#include "symp.hpp"

using namespace rhm;

TEST_CASE("group orders and Lagrangian counts") {
  CHECK(sp_order(1, 2) == 6);
  CHECK(sp_order(2, 2) == 720);
  CHECK(sp_order(2, 3) == 51840);
  CHECK(sp_order(3, 2) == 1451520);
  CHECK(count_lagrangians(2, 2) == 15);   // (2+1)(4+1)
  CHECK(count_lagrangians(2, 3) == 40);   // (3+1)(9+1)
  CHECK(count_transverse(2, 2) == 8);     // 2^3
}

TEST_CASE("intersection-dimension counts match brute force") {
  for (auto [g, p] : {std::pair{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    auto all = brute_lagrangians(g, p);
    CHECK(mpz_class((unsigned long)all.size()) == count_lagrangians(g, p));
    std::vector<long> hist(g + 1, 0);
    for (const auto& L : all) {
      CHECK(is_isotropic(L, g, p));
      hist[lagrangian_j_intersection(L, g, p)]++;
    }
    mpz_class total = 0;
    for (int d = 0; d <= g; d++) {
      CHECK(count_by_intersection(g, p, d) == hist[d]);
      total += count_by_intersection(g, p, d);
    }
    CHECK(total == count_lagrangians(g, p));
  }
}

TEST_CASE("homology dimension distribution at (2,2) is {8,6,1}/15") {
  auto c = homology_dim_distribution(2, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(8.0 / 15).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(6.0 / 15).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(1.0 / 15).epsilon(1e-12));
}

TEST_CASE("c0 limit") {
  // prod (1 + 2^-k)^-1 ~ 0.41942
  CHECK(c0_limit(2) == doctest::Approx(0.419422).epsilon(1e-5));
  // c_0(g, p) decreases toward the limit
  auto c2 = homology_dim_distribution(2, 2);
  auto c3 = homology_dim_distribution(3, 2);
  CHECK(c3[0] < c2[0]);
  CHECK(c3[0] > c0_limit(2));
}

TEST_CASE("echelon form and rank") {
  FpMat M = {{1, 2, 0}, {2, 4, 0}, {0, 0, 1}};
  CHECK(fp_rank(M, 5) == 2);
  FpMat E = echelon_form(M, 5);
  // canonical: echelon of the echelon is itself
  CHECK(echelon_form(E, 5) == E);
}

TEST_CASE("transvections are symplectic over F_p") {
  auto rng = make_rng(3, 3);
  int g = 2, p = 3;
  auto gens = transvection_generators(g, p);
  CHECK(!gens.empty());
  for (const auto& T : gens) {
    // preserve the pairing on random vectors
    for (int t = 0; t < 20; t++) {
      std::vector<int> u(2 * g), v(2 * g);
      for (auto& x : u) x = (int)uniform_below(rng, p);
      for (auto& x : v) x = (int)uniform_below(rng, p);
      auto apply = [&](const std::vector<int>& x) {
        std::vector<int> y(2 * g, 0);
        for (int i = 0; i < 2 * g; i++)
          for (int j = 0; j < 2 * g; j++) y[i] = (y[i] + T[i][j] * x[j]) % p;
        return y;
      };
      CHECK(symplectic_pairing(apply(u), apply(v), p) ==
            symplectic_pairing(u, v, p));
    }
  }
}

TEST_CASE("walk histogram is within 3 sigma of the exact distribution") {
  const uint64_t N = 2000;
  DimHistogram h = mc_intersection_distribution(2, 2, 100000, N, 31);
  REQUIRE(h.counts.size() == 3);
  CHECK(h.samples == N);
  auto c = homology_dim_distribution(2, 2);
  for (int d = 0; d <= 2; d++) {
    double sigma = std::sqrt(c[d] * (1 - c[d]) * N);
    CHECK(std::fabs((double)h.counts[d] - c[d] * N) < 3.5 * sigma);
  }
  // transvection-set walk agrees too
  DimHistogram ht = mc_intersection_distribution(2, 2, 100000, N, 32, true);
  for (int d = 0; d <= 2; d++) {
    double sigma = std::sqrt(c[d] * (1 - c[d]) * N);
    CHECK(std::fabs((double)ht.counts[d] - c[d] * N) < 3.5 * sigma);
  }
}

TEST_CASE("integral H1 of the identity is Z^g") {
  int g = 2;
  ZMat id(2 * g, std::vector<mpz_class>(2 * g, 0));
  for (int i = 0; i < 2 * g; i++) id[i][i] = 1;
  AbelianGroupDesc d = integral_h1(id, g);
  // <J, J> spans the b-coordinates only: quotient is Z^g
  CHECK(d.free_rank == g);
  CHECK(d.torsion.empty());
}

TEST_CASE("walk matrices are symplectic, inverse pairs, reproducible") {
  WalkMatrices w = walk_matrices(2, 2000, 77, 3);
  WalkMatrices w2 = walk_matrices(2, 2000, 77, 3);
  CHECK(w.phi == w2.phi);
  // phi * phi_inv = identity
  int n = 4;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      mpz_class s = 0;
      for (int k = 0; k < n; k++) s += w.phi[i][k] * w.phi_inv[k][j];
      CHECK(s == (i == j ? 1 : 0));
    }
  // H1 of a genuine walk is a valid abelian group description
  AbelianGroupDesc d = integral_h1(w.phi_inv, 2);
  for (size_t i = 1; i < d.torsion.size(); i++)
    CHECK(d.torsion[i] % d.torsion[i - 1] == 0);
}

TEST_CASE("median |H1| grows with walk length") {
  auto median_order = [](uint64_t L) {
    std::vector<mpz_class> orders;
    for (int s = 0; s < 15; s++) {
      WalkMatrices w = walk_matrices(2, L, 123, s);
      AbelianGroupDesc d = integral_h1(w.phi_inv, 2);
      orders.push_back(d.finite() ? d.order() : 0);
    }
    std::sort(orders.begin(), orders.end());
    return orders[orders.size() / 2];
  };
  mpz_class m1 = median_order(100), m2 = median_order(10000);
  CHECK(m2 > m1);
}
