#include <cmath>
#include <functional>
#include <map>

#include "complexes.hpp"
#include "doctest.h"
#include "rng.hpp"

using namespace rhm;

namespace {

// enumerate all fixed-point-free involutions on m items
void each_involution(int m, std::function<void(const std::vector<int>&)> f) {
  std::vector<int> pi(m, -1);
  std::function<void(int)> rec = [&](int from) {
    int a = from;
    while (a < m && pi[a] >= 0) a++;
    if (a == m) {
      f(pi);
      return;
    }
    for (int b = a + 1; b < m; b++) {
      if (pi[b] >= 0) continue;
      pi[a] = b;
      pi[b] = a;
      rec(a + 1);
      pi[a] = pi[b] = -1;
    }
  };
  rec(0);
}

}  // namespace

TEST_CASE("two-triangle census: 12 spheres and 3 tori") {
  int spheres = 0, tori = 0, count = 0;
  each_involution(6, [&](const std::vector<int>& pi) {
    TriangleGluing T{2, pi};
    SurfaceStats s = surface_stats(T);
    CHECK(s.vertices == s.vertices_alt);
    CHECK(s.euler == s.vertices - 1);
    if (s.components == 1) {
      if (s.euler == 2) spheres++;
      if (s.euler == 0) tori++;
    }
    count++;
  });
  CHECK(count == 15);
  CHECK(spheres == 12);
  CHECK(tori == 3);
}

TEST_CASE("random involutions are uniform over pairings") {
  // n = 6 sides -> 15 involutions; chi-squared style uniformity check
  auto rng = make_rng(3, 1);
  std::map<std::vector<int>, int> freq;
  const int N = 30000;
  for (int s = 0; s < N; s++) freq[random_involution(6, rng)]++;
  CHECK(freq.size() == 15);
  for (const auto& [pi, c] : freq) {
    double expect = N / 15.0;
    CHECK(std::fabs(c - expect) < 5 * std::sqrt(expect));
  }
}

TEST_CASE("surface stats on larger random gluings") {
  auto rng = make_rng(5, 2);
  for (int t = 0; t < 200; t++) {
    TriangleGluing T = random_surface(40, rng);
    SurfaceStats s = surface_stats(T);
    CHECK(s.vertices == s.vertices_alt);
    CHECK(s.euler == s.vertices - 20);
    // each component is a closed orientable surface: genus >= 0
    long genus_sum = 0;
    for (int g : s.component_genus) {
      CHECK(g >= 0);
      genus_sum += g;
    }
    // euler = 2 * components - 2 * total genus
    CHECK(s.euler == 2 * s.components - 2 * genus_sum);
  }
}

TEST_CASE("short cycle means match (d-1)^i / (2i)") {
  CycleStats cs = short_cycle_stats(4, 600, 4, 40000, 17);
  for (int i = 1; i <= 4; i++) {
    double lambda = std::pow(3.0, i) / (2 * i);
    double se = std::sqrt(lambda / cs.samples);  // Poisson-ish spread
    CHECK(std::fabs(cs.mean[i] - lambda) < 5 * se + 0.02);
  }
}

TEST_CASE("hand-built two-tetrahedron manifold") {
  // identity face pairing (face i of tet 0 to face i of tet 1) with rotations
  // chosen to close every link into a sphere
  TetGluing T{2, {4, 5, 6, 7, 0, 1, 2, 3}, {2, 2, 0, 1, 2, 2, 0, 1}};
  TetStats s = tet_stats(T);
  CHECK(s.manifold);
  CHECK(s.vertices == 2);
  CHECK(s.edges == 4);
  for (long chi : s.link_euler) CHECK(chi == 2);
}

TEST_CASE("euler characteristic identity for random tet gluings") {
  auto rng = make_rng(7, 7);
  for (int t = 0; t < 300; t++) {
    TetGluing T = random_tet_gluing(4, rng);
    TetStats s = tet_stats(T);
    // chi(X) = v - e + 2n - n and e = n + sum chi(links)/2
    long chi_links = 0;
    for (long c : s.link_euler) chi_links += c;
    CHECK(2 * (s.edges - T.n) == chi_links);
    CHECK(s.global_euler == s.vertices - s.edges + T.n);
    if (s.manifold) {
      CHECK(s.global_euler == 0);
      for (long c : s.link_euler) CHECK(c == 2);
    }
  }
}

TEST_CASE("SMC manifold probability is exact at n = 2") {
  // exhaustive truth: 3273 manifold gluings of 8505 total
  ManifoldProbEstimate e = tet_manifold_probability(2, 50, 4, default_smc_tail(2), 21);
  CHECK(e.p_hat == doctest::Approx(3273.0 / 8505).epsilon(1e-9));
  CHECK(e.std_err == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("SMC agrees with naive frequency at n = 4") {
  auto rng = make_rng(19, 0);
  const int N = 120000;
  int hits = 0;
  for (int s = 0; s < N; s++)
    if (tet_stats(random_tet_gluing(4, rng)).manifold) hits++;
  double naive = (double)hits / N;
  double se_naive = std::sqrt(naive * (1 - naive) / N);
  ManifoldProbEstimate e =
      tet_manifold_probability(4, 400, 10, default_smc_tail(4), 23);
  double se = std::hypot(se_naive, e.std_err);
  CHECK(std::fabs(e.p_hat - naive) < 4 * se);
}
