// Acceptance harness: run as `acceptance N` for criterion N in 1..14.
// Prints one "criterion N: pass" / "criterion N: fail" line and exits 0/1.
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "balanced.hpp"
#include "betti.hpp"
#include "catalog.hpp"
#include "complexes.hpp"
#include "coverstats.hpp"
#include "mcg.hpp"
#include "orbits.hpp"
#include "relator.hpp"
#include "rng.hpp"
#include "snf.hpp"
#include "symp.hpp"

using namespace rhm;

namespace {

int failures = 0;

void expect(bool ok, const char* what) {
  if (!ok) {
    failures++;
    std::printf("  FAILED: %s\n", what);
  }
}

void expect_near(double got, double want, double tol, const char* what) {
  if (!(std::fabs(got - want) <= tol)) {
    failures++;
    std::printf("  FAILED: %s (got %.8g, want %.8g +- %.3g)\n", what, got,
                want, tol);
  }
}

const Canonicalizer& canon(const std::string& spec) {
  static std::map<std::string, std::unique_ptr<Canonicalizer>> cache;
  auto it = cache.find(spec);
  if (it == cache.end())
    it = cache.emplace(spec, std::make_unique<Canonicalizer>(build_group(spec)))
             .first;
  return *it->second;
}

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// ---------------------------------------------------------------- criteria

void crit1() {
  ExactP p = exact_p_small_group(canon("Z/2"), 2);
  expect(p.rational == "7/15", "p(Z/2, 2) = 7/15 exactly");
  expect_near(p.value, 7.0 / 15, 1e-12, "p(Z/2, 2) float value");
}

void crit2() {
  const Canonicalizer& C = canon("A 5");
  ClassSet E = enumerate_E(C, 2);
  expect(E.size() == 19, "|E(A_5, 2)| = 19");
  AEnumeration A = enumerate_A(C, 2, EnumMethod::Fiber);
  expect(A.classes.size() == 2016, "|A(A_5, 2)| = 2016");
  expect(A.completeness == "exact", "A enumeration exact");
  SchurCoverData cover = schur_cover("A 5");
  OrbitTable ot = orbit_decomposition(C, A.classes, &cover);
  expect(ot.rows.size() == 2, "two mapping-class orbits");
  std::multiset<uint64_t> sizes;
  for (const auto& r : ot.rows) sizes.insert(r.size);
  expect(sizes == std::multiset<uint64_t>{576, 1440}, "orbit sizes 1440, 576");
  for (const auto& r : ot.rows)
    expect(r.e_count == (r.size == 1440 ? 19u : 0u),
           "E contained in the 1440 orbit");
  ExactP p = exact_p_from_orbits(ot);
  mpq_class want(binom(1421, 19), binom(1440, 19));
  want.canonicalize();
  double wantd = 1 - want.get_d();
  expect_near(p.value, wantd, 5e-7, "p = 1 - C(1421,19)/C(1440,19)");
  expect_near(p.value, 0.2243, 1e-4, "p ~ 0.2243");
  ExactP mu = exact_expected(ot);
  expect(mu.rational == "361/1440", "expectation 361/1440");
  expect_near(mu.value, 0.2507, 1e-4, "expectation ~ 0.2507");
}

void crit3() {
  const Canonicalizer& C = canon("PSL(2,13)");
  ClassSet E = enumerate_E(C, 2);
  expect(E.size() == 495, "|E(PSL(2,13), 2)| = 495");
  AEnumeration A = enumerate_A(C, 2, EnumMethod::Fiber);
  expect(A.classes.size() == 623520, "|A| = 623520");
  SchurCoverData cover = schur_cover("PSL(2,13)");
  OrbitTable ot = orbit_decomposition(C, A.classes, &cover);
  std::multiset<uint64_t> sizes, esplit;
  for (const auto& r : ot.rows) {
    sizes.insert(r.size);
    if (r.e_count) esplit.insert(r.e_count);
  }
  expect(sizes == std::multiset<uint64_t>{15360, 94080, 235680, 278400},
         "orbit sizes {235680, 94080, 278400, 15360}");
  expect(esplit == std::multiset<uint64_t>{188, 307}, "E split {307, 188}");
  ExactP p = exact_p_from_orbits(ot);
  expect_near(p.value, 0.5402, 5e-4, "p ~ 0.5402");
}

void crit4() {
  struct Row {
    const char* spec;
    double want;
  };
  for (const Row& r : {Row{"A 5", 0.224}, {"PSL(2,7)", 0.308}, {"A 6", 0.289},
                       {"PSL(2,11)", 0.417}}) {
    ExperimentReport rep = monte_carlo_p(canon(r.spec), 2, 1000000, 4000, 1234);
    std::printf("  %s: p_hat = %.4f (table %.3f)\n", r.spec, rep.estimate,
                r.want);
    expect_near(rep.estimate, r.want, 0.02, r.spec);
  }
}

void crit5() {
  expect_near(limit_probability("A 7").p_inf, 0.950, 5e-4, "A_7 limit");
  expect_near(limit_probability("PSL(2,8)").p_inf, 0.283, 5e-4,
              "PSL(2,8) limit");
  expect_near(limit_probability("PSL(2,13)").p_inf, 0.632, 5e-4,
              "PSL(2,13) limit");
}

void crit6() {
  BalancedExact e = balanced_quotient_exact_binomial(canon("A 5"), 2);
  expect(std::fabs(e.p_binomial - 0.0052646) < 1e-6, "exact binomial");
  expect(std::fabs(e.p_poisson - 0.0052638) < 1e-6, "Poisson approximation");
  const uint64_t N = 1000000;
  BalancedMC mc = balanced_quotient_mc(canon("A 5"), 2, 2, 10000, N, 99);
  double sigma = std::sqrt(e.p_binomial * (1 - e.p_binomial) / N);
  std::printf("  mc = %.7f exact = %.7f sigma = %.2g\n", mc.estimate,
              e.p_binomial, sigma);
  expect(std::fabs(mc.estimate - e.p_binomial) < 3 * sigma,
         "Monte Carlo within 3 sigma");
}

void crit7() {
  expect(afp_probability(2, 2, {}).rational == "3/8", "AFP2 p=2 trivial");
  expect(afp_probability(2, 2, {1}).rational == "9/32", "AFP2 p=2 Z/2");
  expect(afp_probability(2, 2, {2}).rational == "9/64", "AFP2 p=2 Z/4");
  expect(afp_probability(2, 2, {0, 1}).rational == "3/128",
         "AFP2 p=2 (Z/2)^2");
  expect(afp_probability(2, 3, {}).rational == "16/27", "AFP2 p=3 trivial");
  expect(afp_probability(2, 3, {1}).rational == "64/243", "AFP2 p=3 Z/3");
  expect(afp_probability(2, 3, {2}).rational == "64/729", "AFP2 p=3 Z/9");
  expect(afp_probability(2, 3, {0, 1}).rational == "16/2187",
         "AFP2 p=3 (Z/3)^2");
  for (int p : {2, 3}) {
    auto rng = make_rng(7, p);
    const uint64_t N = 100000;
    auto sim = afp_simulate(2, p, N, rng);
    for (const AbelianType& type :
         std::vector<AbelianType>{{}, {1}, {2}, {0, 1}}) {
      double want = afp_probability(2, p, type).value;
      uint64_t count = sim.count(type) ? sim.at(type) : 0;
      double sigma = std::sqrt(want * (1 - want) * N);
      expect(std::fabs((double)count - want * N) <= 3 * sigma,
             "AFP simulation within 3 sigma");
    }
  }
  expect_near(all_cyclic_probability(2), 0.924, 0.002, "all-cyclic g=2");
  expect_near(all_cyclic_probability(5), 0.856, 0.002, "all-cyclic g=5");
  expect_near(all_cyclic_probability(0), 0.847, 0.002, "all-cyclic g=inf");
}

void crit8() {
  for (auto [g, p] : {std::pair{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    // brute Lagrangian census against all four counting formulas
    auto all = brute_lagrangians(g, p);
    expect(count_lagrangians(g, p) == (long)all.size(),
           "count_lagrangians = brute");
    std::vector<long> hist(g + 1, 0);
    for (const auto& L : all) hist[lagrangian_j_intersection(L, g, p)]++;
    for (int d = 0; d <= g; d++)
      expect(count_by_intersection(g, p, d) == hist[d],
             "count_by_intersection = brute");
    expect(count_transverse(g, p) == hist[0], "count_transverse = brute");
    // sp_order against the closure of the transvection generators
    auto gens = transvection_generators(g, p);
    std::set<FpMat> seen;
    std::vector<FpMat> frontier;
    FpMat id(2 * g, std::vector<int>(2 * g, 0));
    for (int i = 0; i < 2 * g; i++) id[i][i] = 1;
    seen.insert(id);
    frontier.push_back(id);
    auto mul = [&](const FpMat& A, const FpMat& B) {
      int n = 2 * g;
      FpMat C(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; i++)
        for (int k = 0; k < n; k++)
          for (int j = 0; j < n; j++)
            C[i][j] = (C[i][j] + A[i][k] * B[k][j]) % p;
      return C;
    };
    while (!frontier.empty()) {
      std::vector<FpMat> next;
      for (const auto& m : frontier)
        for (const auto& t : gens) {
          FpMat prod = mul(m, t);
          if (seen.insert(prod).second) next.push_back(prod);
        }
      frontier = std::move(next);
    }
    expect(sp_order(g, p) == (long)seen.size(), "sp_order = brute closure");
  }
  // walk histogram at (2,2)
  const uint64_t N = 4000;
  DimHistogram h = mc_intersection_distribution(2, 2, 200000, N, 55);
  double want[3] = {8.0 / 15, 6.0 / 15, 1.0 / 15};
  for (int d = 0; d <= 2; d++) {
    double sigma = std::sqrt(want[d] * (1 - want[d]) * N);
    expect(std::fabs((double)h.counts[d] - want[d] * N) <= 3 * sigma,
           "walk histogram within 3 sigma");
  }
  auto c = homology_dim_distribution(2, 2);
  expect_near(c[0], 8.0 / 15, 1e-12, "c_0(2,2) = 8/15");
  // consistency with criterion 1: p(Z/2,2) concerns covers, but c_0 must
  // equal 1 - P(beta_1(M; F_2) > 0) = 1 - 7/15 at the stationary distribution
  expect_near(c[0], 1 - 7.0 / 15, 1e-12, "c_0 = 1 - p(Z/2, 2)");
}

void crit9() {
  std::vector<uint64_t> lengths = {100, 1000, 10000};
  std::vector<mpz_class> medians;
  for (uint64_t L : lengths) {
    std::vector<mpz_class> orders;
    for (int s = 0; s < 100; s++) {
      WalkMatrices w = walk_matrices(2, L, 4321, s);
      AbelianGroupDesc d = integral_h1(w.phi_inv, 2);
      orders.push_back(d.finite() ? d.order() : mpz_class(0));
    }
    std::sort(orders.begin(), orders.end());
    mpz_class med = orders[50];
    std::printf("  L = %llu: median |H1| has %zu digits\n",
                (unsigned long long)L, med.get_str().size());
    medians.push_back(med);
  }
  expect(medians[0] < medians[1] && medians[1] < medians[2],
         "median |H1| strictly increasing");
  int positive = 0;
  for (int s = 0; s < 1000; s++) {
    WalkMatrices w = walk_matrices(2, 10000, 8765, s);
    AbelianGroupDesc d = integral_h1(w.phi_inv, 2);
    if (d.free_rank > 0) positive++;
  }
  std::printf("  beta_1 > 0: %d / 1000 at L = 10^4\n", positive);
  expect(positive <= 1, "beta_1 > 0 at most once in 10^3");
}

void crit10() {
  for (int q : {3, 5, 7, 9}) {
    int p = q == 9 ? 3 : q, e = q == 9 ? 2 : 1;
    const FqContext& F = FqContext::get(p, e);
    int checked = 0;
    for (const Mat2& U : pgl2_elements(F)) {
      if (!pgl_order_two(U, F)) continue;
      expect(count_anti_fixed(U, F) == count_anti_fixed_brute(U, F),
             "anti-fixed formula = brute");
      checked++;
    }
    expect(checked > 0, "found order-2 elements");
  }
  for (int q : {5, 7}) {
    const FqContext& F = FqContext::get(q, 1);
    auto rng = make_rng(77, q);
    int done = 0;
    while (done < 1000) {
      Mat2 A = random_sl2(F, rng), B = random_sl2(F, rng);
      if (common_fixed_point(A, B, F)) continue;
      InvolutionWitness w = solve_reversing_involution(A, B, F);
      expect(w.verified, "involution verified");
      done++;
    }
  }
  for (uint64_t a : {2, 3, 4, 5, 6, 12}) {
    KernelDensity d = primitive_kernel_density(a, 0, 10000);
    double want = 1.0 / beta_value(a).get_d();
    double sigma = std::sqrt(want * (1 - want) / d.primitive);
    expect(std::fabs(d.density - want) <= 3 * sigma,
           "primitive kernel density within 3 sigma of 1/beta");
  }
  KernelDensity k = primitive_kernel_density(2, 1, 10000);
  expect(k.in_kernel == 0, "Z/2 + Z/2 kernel density exactly 0");
  TorusImageDistribution d = torus_image_distribution(build_group("A 5"));
  double f5 = 0;
  for (const auto& row : d.rows)
    if (row.subgroup_order == 5) f5 += (double)row.count / d.total_pairs;
  std::printf("  order-5 torus image frequency = %.4f\n", f5);
  expect(std::fabs(f5 - 0.50) <= 0.02, "order-5 frequency 0.50 +- 0.02");
}

void crit11() {
  // surface vertex counts
  for (int n : {100, 1000, 10000}) {
    int samples = n >= 10000 ? 300 : 1000;
    auto rng = make_rng(3, n);
    double sum = 0, sum2 = 0;
    for (int s = 0; s < samples; s++) {
      TriangleGluing T = random_surface(n, rng);
      SurfaceStats st = surface_stats(T);
      expect(st.euler == st.vertices - n / 2, "chi = v - n/2");
      sum += st.vertices;
      sum2 += (double)st.vertices * st.vertices;
    }
    double mean = sum / samples;
    double sd = std::sqrt((sum2 / samples - mean * mean) / (samples - 1));
    double bound = 1.5 * std::log((double)n) + 6;
    std::printf("  n = %d: mean v = %.3f (+%.3f at 99%%), bound %.3f\n", n,
                mean, 2.58 * sd, bound);
    expect(mean + 2.58 * sd <= bound, "mean vertex count under the bound");
  }
  // configuration-model short cycles, d = 4
  CycleStats cs = short_cycle_stats(4, 4000, 4, 8000, 5150);
  for (int i = 1; i <= 4; i++) {
    double lambda = std::pow(3.0, i) / (2 * i);
    double sigma = std::sqrt(lambda / cs.samples);
    std::printf("  %d-cycles: mean %.4f want %.4f sigma %.4f\n", i, cs.mean[i],
                lambda, sigma);
    expect(std::fabs(cs.mean[i] - lambda) <= 3 * sigma,
           "cycle means within 3 sigma");
  }
  // tetrahedra: manifold probability strictly decreasing over n = 8, 16, 32,
  // 10^4 particles per n (sequential Monte Carlo; naive frequency is
  // hopeless beyond n = 8)
  ManifoldProbEstimate e8 = tet_manifold_probability(8, 500, 20, 0, 311);
  ManifoldProbEstimate e16 =
      tet_manifold_probability(16, 500, 20, default_smc_tail(16), 312);
  ManifoldProbEstimate e32 =
      tet_manifold_probability(32, 500, 20, default_smc_tail(32), 313);
  std::printf("  p_hat(8) = %.3e  p_hat(16) = %.3e  p_hat(32) = %.3e\n",
              e8.p_hat, e16.p_hat, e32.p_hat);
  expect(e8.p_hat > e16.p_hat, "p(8) > p(16)");
  expect(e16.p_hat > e32.p_hat, "p(16) > p(32)");
}

void crit12() {
  const Canonicalizer& C = canon("A 5");
  SchurCoverData cover = schur_cover("A 5");
  ClassSet E = enumerate_E(C, 2);
  for (const auto& rep : E.reps)
    expect(homology_class(cover, rep) == 0, "E tuple has trivial Schur class");
  // genus-3 random surface epis for PSL(2,5), class distribution on H2 = Z/2
  const BuiltGroup& bg = build_group("PSL(2,5)");
  SchurCoverData cover5 = schur_cover("PSL(2,5)");
  expect(cover5.h2_elements.size() == 2, "H2(PSL(2,5)) = Z/2");
  auto rng = make_rng(121, 0);
  const int N = 3000;
  int nonzero = 0, taken = 0;
  while (taken < N) {
    Tuple t = random_relation_tuple(*bg.G, 3, rng);
    if (!bg.G->generates(t)) continue;
    if (homology_class(cover5, t) != 0) nonzero++;
    taken++;
  }
  double sigma = std::sqrt(0.25 * N);
  std::printf("  nonzero classes: %d / %d\n", nonzero, N);
  expect(std::fabs(nonzero - N / 2.0) <= 3 * sigma,
         "class distribution uniform on Z/2 within 3 sigma");
}

void crit13() {
  for (const char* spec : {"Z/2", "Z/3"}) {
    auto trend = betti_trend_experiment(*build_group(spec).G, 2,
                                        {100, 1000, 10000}, 1000, 2024);
    for (const auto& pt : trend)
      std::printf("  %s L = %llu: %llu / %llu positive (freq %.4f)\n", spec,
                  (unsigned long long)pt.length,
                  (unsigned long long)pt.positive,
                  (unsigned long long)pt.extending, pt.freq);
    expect(trend[0].freq >= trend[1].freq && trend[1].freq >= trend[2].freq,
           "beta_1 > 0 frequency non-increasing");
    expect(trend[2].freq <= 0.01, "final frequency <= 0.01");
  }
}

void crit14() {
  const Canonicalizer& C = canon("A 5");
  const FiniteGroup& Q = C.group();
  FiniteGroup QQ = direct_product(Q, Q);
  ClassSet E = enumerate_E(C, 2);
  auto rng = make_rng(14, 14);
  for (int t = 0; t < 1000; t++) {
    uint32_t i = (uint32_t)uniform_below(rng, E.size());
    uint32_t j = (uint32_t)uniform_below(rng, E.size() - 1);
    if (j >= i) j++;  // inequivalent: distinct classes
    expect(hall_product_check(Q, QQ, E.reps[i], E.reps[j]),
           "joint surjection onto A_5 x A_5");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..14>\n");
    return 2;
  }
  int n = std::atoi(argv[1]);
  void (*crits[])() = {crit1, crit2, crit3,  crit4,  crit5,  crit6,  crit7,
                       crit8, crit9, crit10, crit11, crit12, crit13, crit14};
  if (n < 1 || n > 14) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..14>\n");
    return 2;
  }
  crits[n - 1]();
  std::printf("criterion %d: %s\n", n, failures ? "fail" : "pass");
  return failures ? 1 : 0;
}
