#include "fq.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace rhm {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; (long)d * d <= p; d++)
    if (p % d == 0) return false;
  return true;
}

using Poly = std::vector<int>;  // coeffs mod p, low degree first

int poly_deg(const Poly& f) {
  for (int i = (int)f.size() - 1; i >= 0; i--)
    if (f[i]) return i;
  return -1;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  int dm = poly_deg(m);
  for (int i = (int)a.size() - 1; i >= dm; i--) {
    if (!a[i]) continue;
    // m is monic
    int c = a[i];
    for (int j = 0; j <= dm; j++) {
      a[i - dm + j] = ((a[i - dm + j] - (long)c * m[j]) % p + p) % p;
    }
  }
  a.resize(dm);
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); j++)
      r[i + j] = (r[i + j] + (long)a[i] * b[j]) % p;
  }
  return poly_mod(r, m, p);
}

// trial division by all monic polys of degree 1..e/2
bool poly_irreducible(const Poly& f, int p) {
  int e = poly_deg(f);
  if (e <= 0) return false;
  if (e == 1) return true;
  for (int d = 1; 2 * d <= e; d++) {
    long nd = 1;
    for (int i = 0; i < d; i++) nd *= p;
    for (long k = 0; k < nd; k++) {
      Poly g(d + 1, 0);
      long kk = k;
      for (int i = 0; i < d; i++) {
        g[i] = kk % p;
        kk /= p;
      }
      g[d] = 1;
      // remainder of f mod g
      Poly r = poly_mod(f, g, p);
      if (poly_deg(r) < 0) return false;
    }
  }
  return true;
}

Poly code_to_poly(uint32_t code, int p, int e) {
  Poly f(e, 0);
  for (int i = 0; i < e; i++) {
    f[i] = code % p;
    code /= p;
  }
  return f;
}

uint32_t poly_to_code(const Poly& f, int p, int e) {
  uint32_t code = 0;
  for (int i = e - 1; i >= 0; i--) code = code * p + (i < (int)f.size() ? f[i] : 0);
  return code;
}

}  // namespace

FqContext make_field_uncached(int p, int e) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  double qd = 1;
  for (int i = 0; i < e; i++) qd *= p;
  if (qd > (1 << 20)) throw std::invalid_argument("q = p^e too large (cap 2^20)");
  FqContext F;
  F.p = p;
  F.e = e;
  uint32_t q = 1;
  for (int i = 0; i < e; i++) q *= p;
  F.q = q;
  // lowest monic irreducible of degree e: scan non-leading coefficient codes
  // ascending (for e=1 the modulus is just x, i.e. the prime field).
  if (e == 1) {
    F.modulus = {0, 1};
  } else {
    bool found = false;
    for (uint32_t k = 0; k < q && !found; k++) {
      Poly f = code_to_poly(k, p, e);
      f.push_back(1);  // monic leading term
      if (poly_irreducible(f, p)) {
        F.modulus = f;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }
  // dense tables for small fields
  if (q <= 512) {
    F.mul_table_.assign((size_t)q * q, 0);
    for (uint32_t a = 0; a < q; a++)
      for (uint32_t b = 0; b <= a; b++) {
        uint32_t m = F.mul_slow(a, b);
        F.mul_table_[(size_t)a * q + b] = m;
        F.mul_table_[(size_t)b * q + a] = m;
      }
    F.inv_table_.assign(q, 0);
    for (uint32_t a = 1; a < q; a++)
      for (uint32_t b = 1; b < q; b++)
        if (F.mul_table_[(size_t)a * q + b] == 1) {
          F.inv_table_[a] = b;
          break;
        }
  }
  return F;
}

const FqContext& FqContext::get(int p, int e) {
  static std::map<std::pair<int, int>, std::unique_ptr<FqContext>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto F = std::make_unique<FqContext>(make_field_uncached(p, e));
    it = cache.emplace(key, std::move(F)).first;
  }
  return *it->second;
}

uint32_t FqContext::add(uint32_t a, uint32_t b) const {
  if (e == 1) return (a + b) % p;
  uint32_t r = 0, mult = 1;
  for (int i = 0; i < e; i++) {
    r += ((a % p + b % p) % p) * mult;
    a /= p;
    b /= p;
    mult *= p;
  }
  return r;
}

uint32_t FqContext::neg(uint32_t a) const {
  if (e == 1) return (p - a) % p;
  uint32_t r = 0, mult = 1;
  for (int i = 0; i < e; i++) {
    r += ((p - a % p) % p) * mult;
    a /= p;
    mult *= p;
  }
  return r;
}

uint32_t FqContext::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FqContext::mul_slow(uint32_t a, uint32_t b) const {
  if (e == 1) return (uint32_t)((uint64_t)a * b % p);
  Poly fa = code_to_poly(a, p, e), fb = code_to_poly(b, p, e);
  Poly r = poly_mulmod(fa, fb, modulus, p);
  return poly_to_code(r, p, e);
}

uint32_t FqContext::mul(uint32_t a, uint32_t b) const {
  if (!mul_table_.empty()) return mul_table_[(size_t)a * q + b];
  return mul_slow(a, b);
}

uint32_t FqContext::pow(uint32_t a, uint64_t n) const {
  uint32_t r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

uint32_t FqContext::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q - 2);
}

bool FqContext::is_square(uint32_t a) const {
  if (a == 0) return true;
  if (p == 2) return true;  // Frobenius is surjective on squares in char 2
  return pow(a, (q - 1) / 2) == 1;
}

uint32_t FqContext::from_int(long n) const {
  long r = n % p;
  if (r < 0) r += p;
  return (uint32_t)r;
}

Mat2 mat2_mul(const Mat2& x, const Mat2& y, const FqContext& F) {
  Mat2 r;
  r.a = F.add(F.mul(x.a, y.a), F.mul(x.b, y.c));
  r.b = F.add(F.mul(x.a, y.b), F.mul(x.b, y.d));
  r.c = F.add(F.mul(x.c, y.a), F.mul(x.d, y.c));
  r.d = F.add(F.mul(x.c, y.b), F.mul(x.d, y.d));
  return r;
}

uint32_t mat2_det(const Mat2& m, const FqContext& F) {
  return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
}

uint32_t mat2_trace(const Mat2& m, const FqContext& F) { return F.add(m.a, m.d); }

Mat2 mat2_inv(const Mat2& m, const FqContext& F) {
  uint32_t det = mat2_det(m, F);
  uint32_t di = F.inv(det);  // throws if singular
  Mat2 r;
  r.a = F.mul(di, m.d);
  r.b = F.mul(di, F.neg(m.b));
  r.c = F.mul(di, F.neg(m.c));
  r.d = F.mul(di, m.a);
  return r;
}

Mat2 proj_normalize(const Mat2& m, const FqContext& F) {
  uint32_t lead = m.a ? m.a : m.b ? m.b : m.c ? m.c : m.d;
  if (lead == 0) throw std::domain_error("zero matrix");
  uint32_t s = F.inv(lead);
  Mat2 r;
  r.a = F.mul(s, m.a);
  r.b = F.mul(s, m.b);
  r.c = F.mul(s, m.c);
  r.d = F.mul(s, m.d);
  return r;
}

uint64_t mat2_code(const Mat2& m, const FqContext& F) {
  return (((uint64_t)m.a * F.q + m.b) * F.q + m.c) * F.q + m.d;
}

Mat2 mat2_from_code(uint64_t code, const FqContext& F) {
  Mat2 m;
  m.d = code % F.q;
  code /= F.q;
  m.c = code % F.q;
  code /= F.q;
  m.b = code % F.q;
  code /= F.q;
  m.a = (uint32_t)code;
  return m;
}

}  // namespace rhm
