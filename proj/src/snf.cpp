#include "snf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rhm {

namespace {

// true if every entry of the submatrix below/right of (t,t) is divisible by d
bool all_divisible(const ZMat& M, size_t t, const mpz_class& d) {
  for (size_t i = t; i < M.size(); i++)
    for (size_t j = t; j < M[i].size(); j++)
      if (M[i][j] % d != 0) return false;
  return true;
}

}  // namespace

SmithForm smith_normal_form(ZMat M) {
  SmithForm out;
  size_t rows = M.size();
  size_t cols = rows ? M[0].size() : 0;
  for (size_t t = 0; t < rows && t < cols; t++) {
    for (;;) {
      // locate the entry of smallest nonzero absolute value as pivot
      size_t pi = t, pj = t;
      bool found = false;
      for (size_t i = t; i < rows; i++)
        for (size_t j = t; j < cols; j++) {
          if (M[i][j] == 0) continue;
          if (!found || mpz_cmpabs(M[i][j].get_mpz_t(),
                                   M[pi][pj].get_mpz_t()) < 0) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) return out;  // all remaining entries zero
      std::swap(M[t], M[pi]);
      for (size_t i = 0; i < rows; i++) std::swap(M[i][t], M[i][pj]);
      if (M[t][t] < 0)
        for (size_t j = t; j < cols; j++) M[t][j] = -M[t][j];
      // reduce the pivot row and column
      bool again = false;
      for (size_t i = t + 1; i < rows; i++) {
        if (M[i][t] == 0) continue;
        mpz_class q = M[i][t] / M[t][t];
        for (size_t j = t; j < cols; j++) M[i][j] -= q * M[t][j];
        if (M[i][t] != 0) again = true;
      }
      for (size_t j = t + 1; j < cols; j++) {
        if (M[t][j] == 0) continue;
        mpz_class q = M[t][j] / M[t][t];
        for (size_t i = t; i < rows; i++) M[i][j] -= q * M[i][t];
        if (M[t][j] != 0) again = true;
      }
      if (again) continue;
      // enforce the divisibility chain: fold a bad entry into the pivot row
      if (!all_divisible(M, t + 1, M[t][t])) {
        for (size_t i = t + 1; i < rows; i++) {
          bool bad = false;
          for (size_t j = t + 1; j < cols; j++)
            if (M[i][j] % M[t][t] != 0) bad = true;
          if (bad) {
            for (size_t j = t; j < cols; j++) M[t][j] += M[i][j];
            break;
          }
        }
        continue;
      }
      break;
    }
    out.invariants.push_back(M[t][t]);
    out.rank++;
  }
  return out;
}

mpz_class AbelianGroupDesc::order() const {
  if (free_rank > 0) return 0;
  mpz_class o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

AbelianGroupDesc cokernel(const ZMat& M) {
  AbelianGroupDesc out;
  int rows = (int)M.size();
  SmithForm s = smith_normal_form(M);
  out.free_rank = rows - s.rank;
  for (const auto& d : s.invariants)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

int rank_mod_p(std::vector<std::vector<int64_t>> M, int64_t p) {
  if (p <= 1) throw std::invalid_argument("prime modulus required");
  size_t rows = M.size();
  size_t cols = rows ? M[0].size() : 0;
  for (auto& row : M)
    for (auto& x : row) {
      x %= p;
      if (x < 0) x += p;
    }
  int rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; c++) {
    size_t pi = r;
    while (pi < rows && M[pi][c] == 0) pi++;
    if (pi == rows) continue;
    std::swap(M[r], M[pi]);
    // normalize pivot to 1 via Fermat inverse
    int64_t inv = 1, base = M[r][c] % p, e = p - 2;
    while (e) {
      if (e & 1) inv = (int64_t)((__int128)inv * base % p);
      base = (int64_t)((__int128)base * base % p);
      e >>= 1;
    }
    for (size_t j = c; j < cols; j++)
      M[r][j] = (int64_t)((__int128)M[r][j] * inv % p);
    for (size_t i = 0; i < rows; i++) {
      if (i == r || M[i][c] == 0) continue;
      int64_t f = M[i][c];
      for (size_t j = c; j < cols; j++) {
        M[i][j] = (M[i][j] - (int64_t)((__int128)f * M[r][j] % p)) % p;
        if (M[i][j] < 0) M[i][j] += p;
      }
    }
    r++;
    rank++;
  }
  return rank;
}

}  // namespace rhm
