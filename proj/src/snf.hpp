#pragma once
// Smith normal form over Z with exact GMP arithmetic, cokernel descriptions,
// and fast mod-p rank for larger matrices.
#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace rhm {

using ZMat = std::vector<std::vector<mpz_class>>;

struct SmithForm {
  std::vector<mpz_class> invariants;  // d_1 | d_2 | ... (nonzero diagonal)
  int rank = 0;                       // number of nonzero invariants
};

SmithForm smith_normal_form(ZMat M);

// cokernel of the map Z^cols -> Z^rows given by M (columns = images)
struct AbelianGroupDesc {
  std::vector<mpz_class> torsion;  // invariant factors > 1, divisibility order
  int free_rank = 0;

  bool finite() const { return free_rank == 0; }
  mpz_class order() const;  // product of torsion when finite, else 0
};

AbelianGroupDesc cokernel(const ZMat& M);

// rank of M over F_p (p < 2^31 prime); elimination with 128-bit products
int rank_mod_p(std::vector<std::vector<int64_t>> M, int64_t p);

}  // namespace rhm
