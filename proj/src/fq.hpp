#pragma once
// F_q arithmetic for q = p^e <= 2^20 and 2x2 (projective) matrices over F_q.
// Elements are dense codes in [0,q): code = sum c_i p^i for the coefficient
// vector (c_0,...,c_{e-1}) of the reduced polynomial representative.
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace rhm {

struct FqContext {
  int p = 0, e = 0;
  uint32_t q = 0;
  std::vector<int> modulus;  // monic, length e+1, modulus[e] = 1

  static const FqContext& get(int p, int e);  // cached; throws on bad input

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;  // throws on 0
  uint32_t pow(uint32_t a, uint64_t n) const;
  uint32_t frobenius(uint32_t a) const { return pow(a, p); }
  bool is_square(uint32_t a) const;
  uint32_t from_int(long n) const;  // image of integer (prime subfield)

 private:
  std::vector<uint32_t> mul_table_, inv_table_;  // filled when q small
  uint32_t mul_slow(uint32_t a, uint32_t b) const;
  friend FqContext make_field_uncached(int p, int e);
};

// spec name
inline const FqContext& make_field(int p, int e) { return FqContext::get(p, e); }

struct Mat2 {
  uint32_t a = 1, b = 0, c = 0, d = 1;  // row-major [[a,b],[c,d]]
  bool operator==(const Mat2&) const = default;
};

Mat2 mat2_mul(const Mat2& x, const Mat2& y, const FqContext& F);
uint32_t mat2_det(const Mat2& m, const FqContext& F);
uint32_t mat2_trace(const Mat2& m, const FqContext& F);
Mat2 mat2_inv(const Mat2& m, const FqContext& F);  // throws if singular

// projective normalization: scale so first nonzero entry (row-major) is 1
Mat2 proj_normalize(const Mat2& m, const FqContext& F);

// dense code of a matrix (for hashing/enumeration): ((a*q+b)*q+c)*q+d
uint64_t mat2_code(const Mat2& m, const FqContext& F);
Mat2 mat2_from_code(uint64_t code, const FqContext& F);

}  // namespace rhm
