#include "doctest.h"
#include "fq.hpp"
#include "rng.hpp"

using namespace rhm;

TEST_CASE("field axioms over small q") {
  for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2},
                      {2, 4}, {5, 2}}) {
    const FqContext& F = FqContext::get(p, e);
    uint32_t q = 1;
    for (int i = 0; i < e; i++) q *= p;
    REQUIRE(q == F.q);
    for (uint32_t a = 0; a < q; a++) {
      CHECK(F.add(a, 0) == a);
      CHECK(F.mul(a, 1) == a);
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.pow(a, q) == a);  // Frobenius^e = id
    }
    // associativity / distributivity on a sample
    auto rng = make_rng(11, p * 16 + e);
    for (int t = 0; t < 200; t++) {
      uint32_t a = uniform_below(rng, q), b = uniform_below(rng, q),
               c = uniform_below(rng, q);
      CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}

TEST_CASE("multiplicative group is cyclic of order q-1") {
  for (auto [p, e] : {std::pair{3, 2}, {2, 3}, {13, 1}}) {
    const FqContext& F = FqContext::get(p, e);
    // some element has full multiplicative order
    bool found = false;
    for (uint32_t a = 1; a < F.q && !found; a++) {
      uint32_t x = a;
      uint32_t ord = 1;
      while (x != 1) {
        x = F.mul(x, a);
        ord++;
      }
      if (ord == F.q - 1) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("squares: exactly (q+1)/2 squares for odd q") {
  for (auto [p, e] : {std::pair{5, 1}, {3, 2}, {7, 1}}) {
    const FqContext& F = FqContext::get(p, e);
    int squares = 0;
    for (uint32_t a = 0; a < F.q; a++)
      if (F.is_square(a)) squares++;
    CHECK(squares == (int)(F.q + 1) / 2);
  }
}

TEST_CASE("matrix algebra and projective normalization") {
  const FqContext& F = FqContext::get(5, 1);
  auto rng = make_rng(3, 0);
  for (int t = 0; t < 300; t++) {
    Mat2 m{(uint32_t)uniform_below(rng, 5), (uint32_t)uniform_below(rng, 5),
           (uint32_t)uniform_below(rng, 5), (uint32_t)uniform_below(rng, 5)};
    if (mat2_det(m, F) == 0) continue;
    Mat2 mi = mat2_inv(m, F);
    Mat2 id = mat2_mul(m, mi, F);
    CHECK(id == Mat2{});
    // det is multiplicative
    Mat2 n{1, (uint32_t)uniform_below(rng, 5), 0, 1};
    CHECK(mat2_det(mat2_mul(m, n, F), F) ==
          F.mul(mat2_det(m, F), mat2_det(n, F)));
    // proj_normalize is idempotent and scale-invariant
    Mat2 pm = proj_normalize(m, F);
    CHECK(proj_normalize(pm, F) == pm);
    uint32_t s = 1 + (uint32_t)uniform_below(rng, 4);
    Mat2 sm{F.mul(s, m.a), F.mul(s, m.b), F.mul(s, m.c), F.mul(s, m.d)};
    CHECK(proj_normalize(sm, F) == pm);
  }
}

TEST_CASE("mat2 code round-trip") {
  const FqContext& F = FqContext::get(3, 1);
  for (uint64_t code = 0; code < 81; code++) {
    Mat2 m = mat2_from_code(code, F);
    CHECK(mat2_code(m, F) == code);
  }
}
