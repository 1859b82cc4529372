#include "relator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace rhm {

mpz_class beta_value(uint64_t a) {
  if (a == 0) throw std::invalid_argument("a >= 1 required");
  mpz_class out = 1;
  for (uint64_t p = 2; p * p <= a; p++) {
    if (a % p) continue;
    uint64_t pk = 1;
    while (a % p == 0) {
      a /= p;
      pk *= p;
    }
    out *= mpz_class((unsigned long)(pk / p)) * (unsigned long)(p + 1);
  }
  if (a > 1) out *= (unsigned long)(a + 1);
  return out;
}

KernelDensity primitive_kernel_density(uint64_t a, uint64_t b, long radius,
                                       uint64_t samples, uint64_t seed) {
  if (a == 0 || radius <= 0) throw std::invalid_argument("bad arguments");
  KernelDensity out;
  uint64_t ab = a * std::max<uint64_t>(b, 1);
  auto classify = [&](long x, long y) {
    if (x == 0 && y == 0) return;
    if (std::gcd(std::abs(x), std::abs(y)) != 1) return;
    out.primitive++;
    long xm = ((x % (long)a) + (long)a) % (long)a;
    if (b == 0) {
      if (xm == 0) out.in_kernel++;
    } else {
      long ym = ((y % (long)ab) + (long)ab) % (long)ab;
      if (xm == 0 && ym == 0) out.in_kernel++;
    }
  };
  if (samples == 0) {
    out.exhaustive = true;
    long r2 = radius * radius;
    for (long x = -radius; x <= radius; x++)
      for (long y = -radius; y <= radius; y++)
        if (x * x + y * y <= r2) classify(x, y);
  } else {
    auto rng = make_rng(seed, /*stream=*/0xbe7a);
    long r2 = radius * radius;
    uint64_t done = 0;
    while (done < samples) {
      long x = (long)uniform_below(rng, 2 * radius + 1) - radius;
      long y = (long)uniform_below(rng, 2 * radius + 1) - radius;
      if (x * x + y * y > r2 || (x == 0 && y == 0)) continue;
      done++;
      classify(x, y);
    }
  }
  out.density = out.primitive ? (double)out.in_kernel / (double)out.primitive
                              : 0;
  return out;
}

namespace {

bool fixes_point(const Mat2& A, uint32_t x, uint32_t y, const FqContext& F) {
  uint32_t vx = F.add(F.mul(A.a, x), F.mul(A.b, y));
  uint32_t vy = F.add(F.mul(A.c, x), F.mul(A.d, y));
  return F.sub(F.mul(vx, y), F.mul(vy, x)) == 0;
}

// nullspace basis of an m x 4 homogeneous system over F_q
std::vector<std::array<uint32_t, 4>> nullspace4(
    std::vector<std::array<uint32_t, 4>> rows, const FqContext& F) {
  size_t r = 0;
  std::vector<int> pivots;
  for (int c = 0; c < 4 && r < rows.size(); c++) {
    size_t pi = r;
    while (pi < rows.size() && rows[pi][c] == 0) pi++;
    if (pi == rows.size()) continue;
    std::swap(rows[r], rows[pi]);
    uint32_t inv = F.inv(rows[r][c]);
    for (int j = 0; j < 4; j++) rows[r][j] = F.mul(rows[r][j], inv);
    for (size_t i = 0; i < rows.size(); i++) {
      if (i == r || rows[i][c] == 0) continue;
      uint32_t f = rows[i][c];
      for (int j = 0; j < 4; j++)
        rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    r++;
  }
  std::vector<std::array<uint32_t, 4>> basis;
  for (int c = 0; c < 4; c++) {
    if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
    std::array<uint32_t, 4> v{0, 0, 0, 0};
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); i++)
      v[pivots[i]] = F.neg(rows[i][c]);
    basis.push_back(v);
  }
  return basis;
}

Mat2 from_vec(const std::array<uint32_t, 4>& v) {
  return Mat2{v[0], v[1], v[2], v[3]};
}

std::array<uint32_t, 4> trace_row(const Mat2& M) {
  // coefficients of tr(M T) in (t11, t12, t21, t22)
  return {M.a, M.c, M.b, M.d};
}

bool proj_equal(const Mat2& x, const Mat2& y, const FqContext& F) {
  return proj_normalize(x, F) == proj_normalize(y, F);
}

}  // namespace

bool common_fixed_point(const Mat2& A, const Mat2& B, const FqContext& F) {
  for (uint32_t t = 0; t < F.q; t++)
    if (fixes_point(A, 1, t, F) && fixes_point(B, 1, t, F)) return true;
  return fixes_point(A, 0, 1, F) && fixes_point(B, 0, 1, F);
}

InvolutionWitness solve_reversing_involution(const Mat2& A, const Mat2& B,
                                             const FqContext& F) {
  if (F.p == 2) throw std::invalid_argument("odd q required");
  if (common_fixed_point(A, B, F))
    throw std::invalid_argument("A and B share a fixed point on P^1");
  std::vector<std::array<uint32_t, 4>> rows = {
      {1, 0, 0, 1}, trace_row(A), trace_row(B)};
  auto basis = nullspace4(rows, F);
  if (basis.empty())
    throw std::logic_error("no nonzero trace-zero solution");
  InvolutionWitness w;
  w.A = A;
  w.B = B;
  w.T = from_vec(basis[0]);
  if (mat2_det(w.T, F) == 0)
    throw std::logic_error("singular solution contradicts the lemma");
  Mat2 Ti = mat2_inv(w.T, F);
  w.verified =
      mat2_trace(w.T, F) == 0 &&
      proj_equal(mat2_mul(mat2_mul(w.T, A, F), Ti, F), mat2_inv(A, F), F) &&
      proj_equal(mat2_mul(mat2_mul(w.T, B, F), Ti, F), mat2_inv(B, F), F);
  return w;
}

bool pgl_order_two(const Mat2& U, const FqContext& F) {
  return mat2_det(U, F) != 0 && mat2_trace(U, F) == 0 && F.p != 2;
}

mpz_class count_anti_fixed(const Mat2& U, const FqContext& F) {
  if (!pgl_order_two(U, F))
    throw std::invalid_argument("U must have order 2 in PGL(2,q)");
  uint32_t det = mat2_det(U, F);
  int ep = F.is_square(det) ? 1 : 0;
  int em = F.is_square(F.neg(det)) ? 1 : 0;
  mpz_class q(F.q);
  return (q * q + (2 * em - 1) * q + 2 * ep) / 2;
}

std::vector<Mat2> psl2_elements(const FqContext& F) {
  if (F.q > 32) throw std::invalid_argument("q too large for enumeration");
  std::vector<Mat2> out;
  std::vector<uint64_t> seen;
  uint64_t total = (uint64_t)F.q * F.q * F.q * F.q;
  for (uint64_t code = 0; code < total; code++) {
    Mat2 m = mat2_from_code(code, F);
    if (mat2_det(m, F) != 1) continue;
    Mat2 n = proj_normalize(m, F);
    uint64_t key = mat2_code(n, F);
    seen.push_back(key);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (uint64_t key : seen) out.push_back(mat2_from_code(key, F));
  return out;
}

std::vector<Mat2> pgl2_elements(const FqContext& F) {
  if (F.q > 32) throw std::invalid_argument("q too large for enumeration");
  std::vector<uint64_t> seen;
  uint64_t total = (uint64_t)F.q * F.q * F.q * F.q;
  for (uint64_t code = 0; code < total; code++) {
    Mat2 m = mat2_from_code(code, F);
    if (mat2_det(m, F) == 0) continue;
    seen.push_back(mat2_code(proj_normalize(m, F), F));
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  std::vector<Mat2> out;
  for (uint64_t key : seen) out.push_back(mat2_from_code(key, F));
  return out;
}

mpz_class count_anti_fixed_brute(const Mat2& U, const FqContext& F) {
  if (!pgl_order_two(U, F))
    throw std::invalid_argument("U must have order 2 in PGL(2,q)");
  Mat2 Ui = mat2_inv(U, F);
  mpz_class count = 0;
  for (const Mat2& W : psl2_elements(F)) {
    Mat2 conj = mat2_mul(mat2_mul(U, W, F), Ui, F);
    if (proj_equal(conj, mat2_inv(W, F), F)) count++;
  }
  return count;
}

Mat2 random_sl2(const FqContext& F, std::mt19937_64& rng) {
  for (;;) {
    Mat2 m{(uint32_t)uniform_below(rng, F.q), (uint32_t)uniform_below(rng, F.q),
           (uint32_t)uniform_below(rng, F.q), (uint32_t)uniform_below(rng, F.q)};
    uint32_t det = mat2_det(m, F);
    if (det == 0) continue;
    // scale the first row by det^-1: q - 1 to 1 onto SL(2,q), so uniform
    uint32_t di = F.inv(det);
    m.a = F.mul(m.a, di);
    m.b = F.mul(m.b, di);
    return m;
  }
}

mpz_class genus2_image_bound(int q) {
  mpz_class b(q);
  return (b * b + b + 2) / 2;
}

Word standard_form_word(int s, int half_length, std::mt19937_64& rng) {
  if (s != 0 && std::abs(s) > 2)
    throw std::invalid_argument("s must be 0 or +-1, +-2");
  // palindrome of odd length from letters {+-1, +-2}
  std::vector<int> half(half_length);
  for (int& l : half) {
    uint64_t pick = uniform_below(rng, 4);
    l = (int)(pick % 2 + 1) * (pick < 2 ? 1 : -1);
  }
  Word p;
  for (int i = 0; i < half_length; i++) p.push_back(half[i]);
  for (int i = half_length - 2; i >= 0; i--) p.push_back(half[i]);
  Word w = p;
  if (s != 0) w.insert(w.begin(), -s);
  w = reduced(w);
  // verify tau(w) = s w^-1 s^-1 with tau flipping every letter
  Word tau;
  for (int l : w) tau.push_back(-l);
  Word rhs = inverse_word(w);
  if (s != 0) {
    rhs.insert(rhs.begin(), s);
    rhs.push_back(-s);
  }
  if (reduced(tau) != reduced(rhs))
    throw std::logic_error("standard form symmetry violated");
  return w;
}

Mat2 evaluate_mat_word(const Word& w, const std::vector<Mat2>& gens,
                       const FqContext& F) {
  Mat2 out;  // identity
  for (int l : w) {
    const Mat2& g = gens[std::abs(l) - 1];
    out = mat2_mul(out, l > 0 ? g : mat2_inv(g, F), F);
  }
  return out;
}

std::vector<Mat2> random_irreducible_surface_tuple(const FqContext& F,
                                                   std::mt19937_64& rng) {
  uint32_t two = F.from_int(2);
  for (;;) {
    Mat2 A = random_sl2(F, rng), B = random_sl2(F, rng);
    Mat2 k = mat2_mul(mat2_mul(A, B, F),
                      mat2_mul(mat2_inv(A, F), mat2_inv(B, F), F), F);
    if (mat2_trace(k, F) == two) continue;  // reducible on <a,b>
    for (int tries = 0; tries < 200000; tries++) {
      Mat2 C = random_sl2(F, rng), D = random_sl2(F, rng);
      Mat2 k2 = mat2_mul(mat2_mul(C, D, F),
                         mat2_mul(mat2_inv(C, F), mat2_inv(D, F), F), F);
      if (k2 == k) return {A, B, C, D};
    }
  }
}

Mat2 solve_hyperelliptic_T(const std::vector<Mat2>& f, const FqContext& F) {
  if (f.size() != 4) throw std::invalid_argument("need (A,B,C,D)");
  const Mat2 &A = f[0], &B = f[1], &C = f[2], &D = f[3];
  uint32_t two = F.from_int(2);
  Mat2 comm = mat2_mul(mat2_mul(A, B, F),
                       mat2_mul(mat2_inv(A, F), mat2_inv(B, F), F), F);
  if (mat2_trace(comm, F) == two)
    throw std::domain_error("reducible tuple: use the abelian-image branch");
  // x = a^-1 b^-1 d c
  Mat2 X = mat2_mul(mat2_mul(mat2_inv(A, F), mat2_inv(B, F), F),
                    mat2_mul(D, C, F), F);
  Mat2 Xi = mat2_inv(X, F);
  std::vector<std::array<uint32_t, 4>> rows = {
      {1, 0, 0, 1},
      trace_row(A),
      trace_row(B),
      {Xi.a, Xi.c, Xi.b, Xi.d},          // tr(X^-1 T)
      trace_row(mat2_mul(C, Xi, F)),     // tr(X^-1 T C) = tr(C X^-1 T)
      trace_row(mat2_mul(D, Xi, F))};
  auto basis = nullspace4(rows, F);
  if (basis.empty())
    throw std::logic_error("no solution contradicts the theorem");
  Mat2 T = from_vec(basis[0]);
  if (mat2_det(T, F) == 0) throw std::logic_error("singular solution");
  Mat2 Ti = mat2_inv(T, F);
  auto conj_ok = [&](const Mat2& g, const Mat2& target) {
    return proj_equal(mat2_mul(mat2_mul(T, g, F), Ti, F), target, F);
  };
  Mat2 Ci = mat2_inv(C, F), Di = mat2_inv(D, F);
  bool ok = conj_ok(A, mat2_inv(A, F)) && conj_ok(B, mat2_inv(B, F)) &&
            conj_ok(C, mat2_mul(mat2_mul(X, Ci, F), Xi, F)) &&
            conj_ok(D, mat2_mul(mat2_mul(X, Di, F), Xi, F));
  if (!ok) throw std::logic_error("conjugation verification failed");
  return T;
}

namespace {

// abelian isomorphism type of a subgroup given by its element list
std::string abelian_type(const FiniteGroup& G, const std::vector<Elt>& elems) {
  uint64_t n = elems.size();
  if (n == 1) return "1";
  std::vector<uint64_t> orders;
  for (Elt x : elems) orders.push_back(G.order_of(x));
  // per-prime partitions via counts of elements of order dividing p^k
  std::map<uint64_t, std::vector<int>> partitions;  // prime -> lambda
  uint64_t m = n;
  for (uint64_t p = 2; p * p <= m || (m > 1 && p <= m); p++) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    std::vector<int> s;  // s[k] = log_p #{x : x^{p^k} = 1}
    s.push_back(0);
    uint64_t pk = 1;
    for (;;) {
      pk *= p;
      uint64_t cnt = 0;
      for (uint64_t o : orders) {
        // order divides p^k iff o is a p-power dividing pk
        uint64_t oo = o;
        while (oo % p == 0) oo /= p;
        if (oo == 1 && pk % o == 0) cnt++;
      }
      int lg = 0;
      uint64_t c = cnt;
      while (c > 1) {
        c /= p;
        lg++;
      }
      s.push_back(lg);
      if (s[s.size() - 1] == s[s.size() - 2]) {
        s.pop_back();
        break;
      }
    }
    // mu[k] = s[k] - s[k-1] = #{lambda_i >= k}; lambda = conjugate of mu
    std::vector<int> mu;
    for (size_t k = 1; k < s.size(); k++) mu.push_back(s[k] - s[k - 1]);
    std::vector<int> lambda;
    for (int i = 0; i < (mu.empty() ? 0 : mu[0]); i++) {
      int l = 0;
      for (int v : mu)
        if (v > i) l++;
      lambda.push_back(l);
    }
    partitions[p] = lambda;
  }
  // combine per-prime cyclic factors into invariant factors (largest first)
  size_t parts = 0;
  for (auto& [p, lam] : partitions) parts = std::max(parts, lam.size());
  std::vector<mpz_class> factors(parts, 1);
  for (auto& [p, lam] : partitions)
    for (size_t i = 0; i < lam.size(); i++) {
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)lam[i]);
      factors[i] *= pk;
    }
  std::string out;
  for (const auto& d : factors) {
    if (!out.empty()) out += " x ";
    out += "Z/" + d.get_str();
  }
  return out;
}

}  // namespace

TorusImageDistribution torus_image_distribution(const BuiltGroup& Q) {
  const FiniteGroup& G = *Q.G;
  uint64_t n = G.order();
  if (n > 10000) throw std::invalid_argument("group too large");
  TorusImageDistribution out;
  bool have_cover = schur_cover_available(Q.spec.format());
  SchurCoverData cover;
  if (have_cover) cover = schur_cover(Q.spec.format());
  out.h2_flag_valid = have_cover || Q.meta.h2_order == 1;
  std::map<std::vector<Elt>, size_t> subgroup_row;
  std::map<std::string, size_t> type_row;
  for (Elt x = 0; x < (Elt)n; x++) {
    for (Elt y = 0; y < (Elt)n; y++) {
      if (G.mul(x, y) != G.mul(y, x)) continue;
      out.total_pairs++;
      std::vector<Elt> sub = G.subgroup_closure({x, y}, n);
      std::sort(sub.begin(), sub.end());
      size_t row;
      auto it = subgroup_row.find(sub);
      if (it != subgroup_row.end()) {
        row = it->second;
      } else {
        std::string type = abelian_type(G, sub);
        auto t = type_row.find(type);
        if (t == type_row.end()) {
          type_row.emplace(type, out.rows.size());
          row = out.rows.size();
          out.rows.push_back({type, sub.size(), 0, 0, 0});
        } else {
          row = t->second;
        }
        subgroup_row.emplace(sub, row);
      }
      out.rows[row].count++;
      if (have_cover) {
        Elt xl = cover.section[x], yl = cover.section[y];
        if (cover.cover->commutator(xl, yl) != cover.cover->identity())
          out.rows[row].non_bounding++;
      }
    }
  }
  for (auto& r : out.rows) r.freq = (double)r.count / (double)out.total_pairs;
  std::sort(out.rows.begin(), out.rows.end(),
            [](const TorusImageRow& a, const TorusImageRow& b) {
              return a.count > b.count;
            });
  return out;
}

}  // namespace rhm
