#include <cmath>

#include "catalog.hpp"
#include "doctest.h"
#include "relator.hpp"
#include "rng.hpp"

using namespace rhm;

TEST_CASE("beta is multiplicative with beta(p^k) = p^{k-1}(p+1)") {
  CHECK(beta_value(1) == 1);
  CHECK(beta_value(2) == 3);
  CHECK(beta_value(3) == 4);
  CHECK(beta_value(4) == 6);
  CHECK(beta_value(5) == 6);
  CHECK(beta_value(6) == 12);
  CHECK(beta_value(12) == 24);  // beta(4) beta(3)
  CHECK(beta_value(60) == 144);
}

TEST_CASE("primitive kernel density matches 1/beta for Z -> Z/a") {
  for (uint64_t a : {2, 3, 4, 6}) {
    KernelDensity d = primitive_kernel_density(a, 0, 600);
    CHECK(d.exhaustive);
    double expected = 1.0 / beta_value(a).get_d();
    CHECK(std::fabs(d.density - expected) < 0.01);
  }
  // (Z/2)^2 target: no primitive vectors in the kernel at all
  KernelDensity k = primitive_kernel_density(2, 1, 500);
  CHECK(k.in_kernel == 0);
}

TEST_CASE("anti-fixed counting formula equals brute force") {
  for (auto [p, e] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const FqContext& F = FqContext::get(p, e);
    int checked = 0;
    for (const Mat2& U : pgl2_elements(F)) {
      if (!pgl_order_two(U, F)) continue;
      CHECK(count_anti_fixed(U, F) == count_anti_fixed_brute(U, F));
      checked++;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("element sets have the right sizes") {
  const FqContext& F = FqContext::get(7, 1);
  // |PGL(2,7)| = 336, |PSL(2,7)| = 168
  CHECK(pgl2_elements(F).size() == 336);
  CHECK(psl2_elements(F).size() == 168);
}

TEST_CASE("reversing involution solver on random pairs") {
  for (int q : {5, 7}) {
    const FqContext& F = FqContext::get(q, 1);
    auto rng = make_rng(41, q);
    int done = 0;
    while (done < 200) {
      Mat2 A = random_sl2(F, rng), B = random_sl2(F, rng);
      if (common_fixed_point(A, B, F)) continue;
      InvolutionWitness w = solve_reversing_involution(A, B, F);
      CHECK(w.verified);
      CHECK(mat2_trace(w.T, F) == 0);
      done++;
    }
  }
}

TEST_CASE("genus-2 image bound formula") {
  CHECK(genus2_image_bound(5) == 16);   // (25+5+2)/2
  CHECK(genus2_image_bound(7) == 29);
  CHECK(genus2_image_bound(9) == 46);
}

TEST_CASE("standard form words have the claimed symmetry") {
  auto rng = make_rng(9, 9);
  for (int s : {0, 1, -1, 2, -2}) {
    Word w = standard_form_word(s, 20, rng);
    CHECK(!w.empty());
    // tau negates each letter in place (a -> a^-1, b -> b^-1, no reversal);
    // the standard form guarantees tau(w) = s w^-1 s^-1
    Word tw;
    for (int x : w) tw.push_back(-x);
    Word rhs = inverse_word(w);
    if (s != 0) {
      Word conj = {s};
      rhs = concat(concat(conj, rhs), {-s});
    }
    CHECK(conjugate_words(reduced(tw), rhs));
  }
}

TEST_CASE("hyperelliptic solver finds T on irreducible surface tuples") {
  for (int q : {5, 7, 9}) {
    int pr = q == 9 ? 3 : q, e = q == 9 ? 2 : 1;
    const FqContext& F = FqContext::get(pr, e);
    auto rng = make_rng(15, q);
    for (int t = 0; t < 25; t++) {
      auto f = random_irreducible_surface_tuple(F, rng);
      REQUIRE(f.size() == 4);
      // [A,B] = [C,D]
      auto comm = [&](const Mat2& X, const Mat2& Y) {
        return mat2_mul(mat2_mul(X, Y, F),
                        mat2_mul(mat2_inv(X, F), mat2_inv(Y, F), F), F);
      };
      CHECK(proj_normalize(comm(f[0], f[1]), F) ==
            proj_normalize(comm(f[2], f[3]), F));
      Mat2 T = solve_hyperelliptic_T(f, F);
      CHECK(mat2_trace(T, F) == 0);
    }
  }
}

TEST_CASE("torus image distribution for A_5") {
  TorusImageDistribution d = torus_image_distribution(build_group("A 5"));
  CHECK(d.total_pairs == 300);  // commuting pairs in A_5
  CHECK(d.h2_flag_valid);
  uint64_t z5 = 0, z5_nb = 0, v4 = 0, v4_nb = 0, total = 0;
  for (const auto& row : d.rows) {
    total += row.count;
    if (row.type == "Z/5") { z5 = row.count; z5_nb = row.non_bounding; }
    if (row.subgroup_order == 4) { v4 = row.count; v4_nb = row.non_bounding; }
  }
  CHECK(total == 300);
  CHECK(z5 == 144);
  CHECK((double)z5 / total == doctest::Approx(0.48).epsilon(1e-9));
  // every Klein pair is non-bounding; order-5 pairs have 0.50 of image order 5
  CHECK(v4 == 30);
  CHECK(v4_nb == 30);
  CHECK(z5_nb == 0);
}
