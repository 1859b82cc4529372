#include "symp.hpp"

#include <map>
#include <stdexcept>

#include "rng.hpp"

namespace rhm {

mpz_class sp_order(int g, int p) {
  mpz_class o;
  mpz_ui_pow_ui(o.get_mpz_t(), (unsigned long)p, (unsigned long)(g * g));
  for (int k = 1; k <= g; k++) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)(2 * k));
    o *= pk - 1;
  }
  return o;
}

mpz_class count_lagrangians(int g, int p) {
  mpz_class o = 1;
  for (int k = 1; k <= g; k++) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)k);
    o *= pk + 1;
  }
  return o;
}

mpz_class count_transverse(int g, int p) {
  mpz_class o;
  mpz_ui_pow_ui(o.get_mpz_t(), (unsigned long)p,
                (unsigned long)(g * (g + 1) / 2));
  return o;
}

mpz_class count_by_intersection(int g, int p, int d) {
  if (d < 0 || d > g) throw std::invalid_argument("0 <= d <= g required");
  mpz_class o;
  mpz_ui_pow_ui(o.get_mpz_t(), (unsigned long)p,
                (unsigned long)((g - d + 1) * (g - d) / 2));
  for (int k = 1; k <= d; k++) {
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), (unsigned long)p,
                  (unsigned long)(g - k + 1));
    mpz_ui_pow_ui(den.get_mpz_t(), (unsigned long)p, (unsigned long)k);
    o *= num - 1;
    o /= den - 1;  // exact: Gaussian binomial factor
  }
  return o;
}

std::vector<double> homology_dim_distribution(int g, int p) {
  mpq_class total(count_lagrangians(g, p));
  std::vector<double> c(g + 1);
  for (int d = 0; d <= g; d++) {
    mpq_class v(count_by_intersection(g, p, d));
    v /= total;
    c[d] = v.get_d();
  }
  return c;
}

double c0_limit(int p) {
  double prod = 1, pk = 1;
  for (int k = 1; k <= 64; k++) {
    pk /= p;
    double next = prod / (1 + pk);
    if (next == prod) break;
    prod = next;
  }
  return prod;
}

FpMat echelon_form(FpMat M, int p) {
  size_t rows = M.size();
  size_t cols = rows ? M[0].size() : 0;
  for (auto& row : M)
    for (auto& x : row) x = ((x % p) + p) % p;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; c++) {
    size_t pi = r;
    while (pi < rows && M[pi][c] == 0) pi++;
    if (pi == rows) continue;
    std::swap(M[r], M[pi]);
    long inv = 1, base = M[r][c], e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (size_t j = c; j < cols; j++) M[r][j] = (int)(M[r][j] * inv % p);
    for (size_t i = 0; i < rows; i++) {
      if (i == r || M[i][c] == 0) continue;
      int f = M[i][c];
      for (size_t j = c; j < cols; j++)
        M[i][j] = ((M[i][j] - f * M[r][j]) % p + p) % p;
    }
    r++;
  }
  M.resize(r);
  return M;
}

int fp_rank(FpMat M, int p) { return (int)echelon_form(std::move(M), p).size(); }

int symplectic_pairing(const std::vector<int>& u, const std::vector<int>& v,
                       int p) {
  int g = (int)u.size() / 2;
  long s = 0;
  for (int i = 0; i < g; i++)
    s += (long)u[2 * i] * v[2 * i + 1] - (long)u[2 * i + 1] * v[2 * i];
  return (int)(((s % p) + p) % p);
}

bool is_isotropic(const FpMat& rows, int g, int p) {
  for (size_t i = 0; i < rows.size(); i++)
    for (size_t j = i + 1; j < rows.size(); j++)
      if (symplectic_pairing(rows[i], rows[j], p)) return false;
  (void)g;
  return true;
}

std::vector<FpMat> brute_lagrangians(int g, int p) {
  int dim = 2 * g;
  uint64_t total = 1;
  for (int i = 0; i < dim; i++) total *= p;
  uint64_t tuples = 1;
  for (int i = 0; i < g; i++) tuples *= total;
  if (tuples > 50000000ull)
    throw std::invalid_argument("brute enumeration too large");
  auto decode = [&](uint64_t code) {
    std::vector<int> v(dim);
    for (int i = 0; i < dim; i++) {
      v[i] = (int)(code % p);
      code /= p;
    }
    return v;
  };
  std::map<FpMat, bool> seen;
  std::vector<FpMat> out;
  for (uint64_t t = 0; t < tuples; t++) {
    FpMat rows(g);
    uint64_t c = t;
    for (int i = 0; i < g; i++) {
      rows[i] = decode(c % total);
      c /= total;
    }
    FpMat ech = echelon_form(rows, p);
    if ((int)ech.size() != g) continue;
    if (!is_isotropic(ech, g, p)) continue;
    if (seen.emplace(ech, true).second) out.push_back(ech);
  }
  return out;
}

int lagrangian_j_intersection(const FpMat& L, int g, int p) {
  // stack J's basis over L's basis: dim(J cap L) = dim J + dim L - rank
  FpMat stack;
  for (int i = 0; i < g; i++) {
    std::vector<int> e(2 * g, 0);
    e[2 * i + 1] = 1;
    stack.push_back(e);
  }
  for (const auto& row : L) stack.push_back(row);
  return g + (int)L.size() - fp_rank(stack, p);
}

FpMat transvection(const std::vector<int>& v, int g, int p) {
  int dim = 2 * g;
  FpMat M(dim, std::vector<int>(dim, 0));
  for (int j = 0; j < dim; j++) {
    std::vector<int> e(dim, 0);
    e[j] = 1;
    int c = symplectic_pairing(e, v, p);
    for (int i = 0; i < dim; i++) M[i][j] = ((i == j) + c * v[i]) % p;
  }
  return M;
}

namespace {

FpMat fp_mul(const FpMat& A, const FpMat& B, int p) {
  size_t n = A.size();
  FpMat C(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; i++)
    for (size_t k = 0; k < n; k++) {
      if (A[i][k] == 0) continue;
      long a = A[i][k];
      for (size_t j = 0; j < n; j++)
        C[i][j] = (int)((C[i][j] + a * B[k][j]) % p);
    }
  return C;
}

}  // namespace

std::vector<FpMat> transvection_generators(int g, int p) {
  // chain classes b_1, a_1, b_1 + b_2, a_2, b_2 + b_3, ..., a_g, b_g
  std::vector<std::vector<int>> vecs;
  std::vector<int> v(2 * g, 0);
  v[1] = 1;
  vecs.push_back(v);
  for (int i = 0; i < g; i++) {
    std::vector<int> a(2 * g, 0);
    a[2 * i] = 1;
    vecs.push_back(a);
    if (i + 1 < g) {
      std::vector<int> b(2 * g, 0);
      b[2 * i + 1] = b[2 * i + 3] = 1;
      vecs.push_back(b);
    }
  }
  if (g >= 2) {
    std::vector<int> b(2 * g, 0);
    b[2 * g - 1] = 1;
    vecs.push_back(b);
  }
  std::vector<FpMat> gens;
  for (const auto& w : vecs) gens.push_back(transvection(w, g, p));
  mpz_class order = sp_order(g, p);
  if (order <= 1000000) {
    std::map<FpMat, bool> seen;
    std::vector<FpMat> frontier;
    FpMat id(2 * g, std::vector<int>(2 * g, 0));
    for (int i = 0; i < 2 * g; i++) id[i][i] = 1;
    seen.emplace(id, true);
    frontier.push_back(id);
    while (!frontier.empty()) {
      std::vector<FpMat> next;
      for (const auto& M : frontier)
        for (const auto& T : gens) {
          FpMat N = fp_mul(T, M, p);
          if (seen.emplace(N, true).second) next.push_back(N);
        }
      frontier = std::move(next);
    }
    if (mpz_class((unsigned long)seen.size()) != order)
      throw std::logic_error("transvection closure mismatch");
  }
  return gens;
}

namespace {

int walk_j_dim(const FpMat& cur, int g, int p) {
  FpMat stack;
  for (int i = 0; i < g; i++) {
    std::vector<int> e(2 * g, 0);
    e[2 * i + 1] = 1;
    stack.push_back(e);
  }
  for (int i = 0; i < g; i++) {
    std::vector<int> col(2 * g);
    for (int r = 0; r < 2 * g; r++) col[r] = cur[r][2 * i + 1];
    stack.push_back(col);
  }
  return 2 * g - fp_rank(stack, p);
}

FpMat reduce_mod(const IntMat& M, int p) {
  FpMat out(M.size());
  for (size_t i = 0; i < M.size(); i++) {
    out[i].resize(M[i].size());
    for (size_t j = 0; j < M[i].size(); j++)
      out[i][j] = (int)(((M[i][j] % p) + p) % p);
  }
  return out;
}

}  // namespace

DimHistogram mc_intersection_distribution(int g, int p, uint64_t length,
                                          uint64_t samples, uint64_t seed,
                                          bool use_transvections) {
  DimHistogram out;
  out.counts.assign(g + 1, 0);
  out.samples = samples;
  out.length = length;
  out.seed = seed;
  FpMat cur(2 * g, std::vector<int>(2 * g, 0));
  for (int i = 0; i < 2 * g; i++) cur[i][i] = 1;
  if (length == 0) {
    out.counts[g] = samples;
    return out;
  }
  uint64_t burn = length > 2000 ? 1000 : 0;
  uint64_t spacing = std::max<uint64_t>(1, length / std::max<uint64_t>(samples, 1));
  if (length >= 5000) spacing = std::max<uint64_t>(spacing, 50);
  if (use_transvections) {
    std::vector<FpMat> gens = transvection_generators(g, p);
    std::vector<FpMat> all = gens;  // include inverses for symmetry
    for (const auto& T : gens) {
      // T_v over F_p has order p; inverse = T^{p-1}
      FpMat inv = T;
      for (int k = 2; k < p; k++) inv = fp_mul(inv, T, p);
      all.push_back(inv);
    }
    auto rng = make_rng(seed, /*stream=*/0x57);
    auto step = [&]() {
      uint64_t pick = uniform_below(rng, all.size() + 1);
      if (pick == all.size()) return;  // hold
      cur = fp_mul(all[pick], cur, p);
    };
    for (uint64_t i = 0; i < burn; i++) step();
    for (uint64_t s = 0; s < samples; s++) {
      for (uint64_t i = 0; i < spacing; i++) step();
      out.counts[walk_j_dim(cur, g, p)]++;
    }
    return out;
  }
  TwistWalk walk(g, seed, /*stream=*/0x57);
  auto step = [&]() {
    walk.step();
    if (!walk.last_was_hold()) cur = fp_mul(reduce_mod(walk.last_matrix(), p), cur, p);
  };
  for (uint64_t i = 0; i < burn; i++) step();
  for (uint64_t s = 0; s < samples; s++) {
    for (uint64_t i = 0; i < spacing; i++) step();
    out.counts[walk_j_dim(cur, g, p)]++;
  }
  return out;
}

std::vector<std::vector<uint64_t>> mc_joint_dim(int g, int p, int q,
                                                uint64_t length,
                                                uint64_t samples,
                                                uint64_t seed) {
  std::vector<std::vector<uint64_t>> counts(
      g + 1, std::vector<uint64_t>(g + 1, 0));
  FpMat cp(2 * g, std::vector<int>(2 * g, 0)), cq = cp;
  for (int i = 0; i < 2 * g; i++) cp[i][i] = cq[i][i] = 1;
  TwistWalk walk(g, seed, /*stream=*/0x58);
  uint64_t burn = length > 2000 ? 1000 : 0;
  uint64_t spacing = std::max<uint64_t>(1, length / std::max<uint64_t>(samples, 1));
  if (length >= 5000) spacing = std::max<uint64_t>(spacing, 50);
  auto step = [&]() {
    walk.step();
    if (walk.last_was_hold()) return;
    cp = fp_mul(reduce_mod(walk.last_matrix(), p), cp, p);
    cq = fp_mul(reduce_mod(walk.last_matrix(), q), cq, q);
  };
  for (uint64_t i = 0; i < burn; i++) step();
  for (uint64_t s = 0; s < samples; s++) {
    for (uint64_t i = 0; i < spacing; i++) step();
    counts[walk_j_dim(cp, g, p)][walk_j_dim(cq, g, q)]++;
  }
  return counts;
}

AbelianGroupDesc integral_h1(const ZMat& phi_inv, int g) {
  // presentation matrix of Z^{2g} / <J, phi_*^{-1} J>: columns are the b-basis
  // vectors followed by their phi_*^{-1} images
  ZMat M(2 * g, std::vector<mpz_class>(2 * g, 0));
  for (int j = 0; j < g; j++) {
    M[2 * j + 1][j] = 1;
    for (int i = 0; i < 2 * g; i++) M[i][g + j] = phi_inv[i][2 * j + 1];
  }
  return cokernel(M);
}

WalkMatrices walk_matrices(int g, uint64_t length, uint64_t seed,
                           uint64_t stream) {
  WalkMatrices out;
  int n = 2 * g;
  out.phi.assign(n, std::vector<mpz_class>(n, 0));
  out.phi_inv = out.phi;
  for (int i = 0; i < n; i++) out.phi[i][i] = out.phi_inv[i][i] = 1;
  TwistWalk walk(g, seed, stream);
  ZMat tmp(n, std::vector<mpz_class>(n));
  for (uint64_t s = 0; s < length; s++) {
    walk.step();
    if (walk.last_was_hold()) continue;
    const IntMat& M = walk.last_matrix();
    const std::vector<MappingClassGen>& gens = humphries_generators(g);
    int ls = walk.last_step();
    const IntMat& Minv = ls % 2 == 0 ? gens[ls / 2].matrix_inv
                                     : gens[ls / 2].matrix;
    // phi = M * phi, phi_inv = phi_inv * Minv (small-entry factors)
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        tmp[i][j] = 0;
        for (int k = 0; k < n; k++)
          if (M[i][k]) tmp[i][j] += M[i][k] * out.phi[k][j];
      }
    std::swap(tmp, out.phi);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        tmp[i][j] = 0;
        for (int k = 0; k < n; k++)
          if (Minv[k][j]) tmp[i][j] += out.phi_inv[i][k] * Minv[k][j];
      }
    std::swap(tmp, out.phi_inv);
  }
  return out;
}

}  // namespace rhm
