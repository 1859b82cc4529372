#include "balanced.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace rhm {

RelatorWord random_relator(int g, uint64_t n, std::mt19937_64& rng) {
  if (g < 1) throw std::invalid_argument("g >= 1 required");
  RelatorWord w(n);
  for (uint64_t i = 0; i < n; i++) {
    uint64_t pick = uniform_below(rng, 2 * g + 1);  // 0 = identity letter
    w[i] = pick == 0 ? 0
           : pick % 2 ? (int)(pick + 1) / 2
                      : -(int)(pick / 2);
  }
  return w;
}

Elt evaluate_relator(const FiniteGroup& G, const RelatorWord& w,
                     const std::vector<Elt>& images) {
  Elt r = G.identity();
  for (int s : w) {
    if (s == 0) continue;
    Elt x = images[std::abs(s) - 1];
    r = G.mul(r, s > 0 ? x : G.inv(x));
  }
  return r;
}

BalancedExact balanced_quotient_exact_binomial(const Canonicalizer& C,
                                               int g) {
  BalancedExact out;
  out.classes = enumerate_E(C, g).size();
  double qg = std::pow((double)C.group().order(), g);
  out.mu = (double)out.classes / qg;
  out.p_binomial = 1 - std::pow(1 - 1 / qg, (double)out.classes);
  out.p_poisson = 1 - std::exp(-out.mu);
  return out;
}

BalancedMC balanced_quotient_mc(const Canonicalizer& C, int g, int r,
                                uint64_t n, uint64_t samples, uint64_t seed) {
  if (r < 0) throw std::invalid_argument("r >= 0 required");
  const FiniteGroup& G = C.group();
  ClassSet E = enumerate_E(C, g);
  size_t m = E.size();
  // per-class letter images: letter 0 = identity, 2j+1 = a_j, 2j+2 = a_j^-1
  int alpha = 2 * g + 1;
  std::vector<std::vector<Elt>> lim(m, std::vector<Elt>(alpha, 0));
  for (size_t i = 0; i < m; i++)
    for (int j = 0; j < g; j++) {
      Elt a = E.reps[i][2 * j];
      lim[i][2 * j + 1] = a;
      lim[i][2 * j + 2] = G.inv(a);
    }
  // block table: product of k letters at once, k chosen so the table stays
  // cache-resident
  int k = 1;
  uint64_t blocks = (uint64_t)alpha;
  while (blocks * alpha <= 4096) {
    blocks *= alpha;
    k++;
  }
  std::vector<Elt> tab(blocks * m);
  for (size_t i = 0; i < m; i++)
    for (int l = 0; l < alpha; l++) tab[(uint64_t)l * m + i] = lim[i][l];
  uint64_t built = alpha;
  for (int step = 1; step < k; step++) {
    uint64_t next = built * alpha;
    std::vector<Elt> bigger(next * m);
    for (uint64_t b = 0; b < built; b++)
      for (int l = 0; l < alpha; l++)
        for (size_t i = 0; i < m; i++)
          bigger[(b * alpha + l) * m + i] =
              G.mul(tab[b * m + i], lim[i][l]);
    tab = std::move(bigger);
    built = next;
  }
  auto rng = make_rng(seed, /*stream=*/0xba1a);
  BalancedMC out;
  out.n = n;
  out.r = r;
  out.seed = seed;
  out.samples = samples;
  std::vector<Elt> state(m);
  std::vector<uint32_t> alive, next_alive;
  for (uint64_t s = 0; s < samples; s++) {
    alive.resize(m);
    for (uint32_t i = 0; i < m; i++) alive[i] = i;
    for (int rel = 0; rel < r && !alive.empty(); rel++) {
      for (uint32_t i : alive) state[i] = G.identity();
      uint64_t rest = n;
      while (rest >= (uint64_t)k) {
        uint64_t b = uniform_below(rng, blocks);
        const Elt* row = &tab[b * m];
        for (uint32_t i : alive) state[i] = G.mul(state[i], row[i]);
        rest -= k;
      }
      while (rest--) {
        uint64_t l = uniform_below(rng, alpha);
        for (uint32_t i : alive) state[i] = G.mul(state[i], lim[i][l]);
      }
      next_alive.clear();
      for (uint32_t i : alive)
        if (state[i] == G.identity()) next_alive.push_back(i);
      alive.swap(next_alive);
    }
    if (!alive.empty()) out.successes++;
  }
  out.estimate = samples ? (double)out.successes / (double)samples : 0;
  double h = samples ? 1.959963985 * std::sqrt(out.estimate *
                                               (1 - out.estimate) /
                                               (double)samples)
                     : 0;
  out.ci_low = out.estimate - h;
  out.ci_high = out.estimate + h;
  return out;
}

BalancedTableRow expected_table_row(const std::string& spec) {
  BalancedTableRow row;
  // normalize to the table's display name when the spec is parseable
  std::string name = spec;
  bool parseable = true;
  GroupSpec gs;
  try {
    gs = GroupSpec::parse(spec);
    name = gs.format();
  } catch (const std::exception&) {
    parseable = false;
  }
  const ExpectedTableRow* table_row = nullptr;
  for (const auto& r : expected_table())
    if (r.name == name) table_row = &r;
  uint64_t aut = 0;
  if (parseable) {
    GroupMeta meta = group_meta(spec);
    row.order = meta.order;
    row.out_order = meta.out_order;
    aut = meta.aut_order;
    // enumerate when the automorphism closure is affordable
    if ((!table_row || table_row->constructible) &&
        meta.aut_order && meta.aut_order * meta.order <= 100000000ull) {
      Canonicalizer C(build_group(spec));
      row.gen_pairs = enumerate_E(C, 2).size();
      row.source = "computed";
    }
  }
  if (row.source.empty()) {
    if (!table_row)
      throw std::invalid_argument("no table data for " + spec);
    row.order = table_row->order;
    row.out_order = table_row->out_order;
    row.gen_pairs = table_row->gen_pairs;
    aut = table_row->order * table_row->out_order;  // simple centerless rows
    row.source = "table";
  }
  row.name = name;
  row.exp_2gen = (double)row.gen_pairs / ((double)row.order * row.order);
  row.exp_ngen = 1.0 / (double)aut;
  return row;
}

ZMat abelianization_matrix(const std::vector<RelatorWord>& relators, int g) {
  ZMat M(g, std::vector<mpz_class>((int)relators.size(), 0));
  for (size_t j = 0; j < relators.size(); j++)
    for (int s : relators[j]) {
      if (s == 0) continue;
      M[std::abs(s) - 1][j] += s > 0 ? 1 : -1;
    }
  return M;
}

std::vector<ExactP> sylow_order_distribution(int g, int p, int kmax) {
  if (g < 1 || p < 2 || kmax < 0) throw std::invalid_argument("bad arguments");
  // prod_{j=1..g} (p^j - 1) * prod_{j=1..g} sum_i t^i p^{-j(i+1)}
  std::vector<mpq_class> series(kmax + 1, 0);
  series[0] = 1;
  mpz_class pj = 1;
  mpq_class scale = 1;
  for (int j = 1; j <= g; j++) {
    pj *= p;
    scale *= mpq_class(pj - 1);
    std::vector<mpq_class> geom(kmax + 1);
    mpq_class term(1, pj);
    term.canonicalize();
    for (int i = 0; i <= kmax; i++) {
      geom[i] = term;
      term /= pj;
    }
    std::vector<mpq_class> next(kmax + 1, 0);
    for (int a = 0; a <= kmax; a++)
      for (int b = 0; a + b <= kmax; b++) next[a + b] += series[a] * geom[b];
    series = std::move(next);
  }
  std::vector<ExactP> out(kmax + 1);
  for (int i = 0; i <= kmax; i++) {
    mpq_class v = scale * series[i];
    v.canonicalize();
    out[i].value = v.get_d();
    out[i].rational = v.get_str();
  }
  return out;
}

namespace {

// numerator terms of AFP_g: monomial exponents -> polynomial-in-p coefficient
struct AfpTerm {
  AbelianType exps;
  mpz_class coeff;  // evaluated at p
};

std::vector<AfpTerm> afp_numerator(int g, const mpz_class& p) {
  mpz_class p2 = p * p, p3 = p2 * p;
  if (g == 1) return {{{0}, p - 1}};
  if (g == 2) {
    mpz_class pre = (p - 1) * (p - 1) * (p + 1);
    return {{{0, 0}, pre * p2}, {{1, 0}, pre}};
  }
  if (g == 3) {
    mpz_class pre = (p - 1) * (p - 1) * (p - 1) *
                    (1 + 2 * p + 2 * p2 + p3);
    mpz_class p5 = p3 * p2, p6 = p3 * p3, p8 = p6 * p2;
    return {{{0, 0, 0}, pre * p8},
            {{1, 0, 0}, pre * (p5 + p6)},
            {{0, 1, 0}, pre * (p2 + p3)},
            {{1, 1, 0}, pre}};
  }
  throw std::invalid_argument("AFP series available for g <= 3 only");
}

}  // namespace

ExactP afp_probability(int g, int p, const AbelianType& type) {
  if ((int)type.size() > g)
    throw std::invalid_argument("type mentions t_k with k > g");
  for (int e : type)
    if (e < 0) throw std::invalid_argument("negative exponent");
  AbelianType m(g, 0);
  std::copy(type.begin(), type.end(), m.begin());
  mpz_class P(p);
  mpq_class total = 0;
  for (const AfpTerm& term : afp_numerator(g, P)) {
    bool fits = true;
    for (int kk = 0; kk < g; kk++)
      if (term.exps[kk] > m[kk]) fits = false;
    if (!fits) continue;
    // coefficient of t^{m-a} in prod_k 1/(p^{k^2} - t_k):
    // prod_k p^{-k^2 (m_k - a_k + 1)}
    mpz_class den = 1;
    for (int kk = 0; kk < g; kk++) {
      mpz_class pk2;
      mpz_ui_pow_ui(pk2.get_mpz_t(), (unsigned long)p,
                    (unsigned long)((kk + 1) * (kk + 1)));
      for (int rep = 0; rep < m[kk] - term.exps[kk] + 1; rep++) den *= pk2;
    }
    mpq_class frac(term.coeff, den);
    frac.canonicalize();
    total += frac;
  }
  total.canonicalize();
  ExactP out;
  out.value = total.get_d();
  out.rational = total.get_str();
  return out;
}

namespace {

int random_corank(int h, int p, std::mt19937_64& rng) {
  // corank of a random h x h matrix over F_p by elimination
  std::vector<std::vector<int>> M(h, std::vector<int>(h));
  for (auto& row : M)
    for (auto& x : row) x = (int)uniform_below(rng, p);
  int rank = 0, r = 0;
  for (int c = 0; c < h && r < h; c++) {
    int pi = r;
    while (pi < h && M[pi][c] == 0) pi++;
    if (pi == h) continue;
    std::swap(M[r], M[pi]);
    // modular inverse by exponentiation
    long inv = 1, base = M[r][c] % p, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (int j = c; j < h; j++) M[r][j] = (int)(M[r][j] * inv % p);
    for (int i = 0; i < h; i++) {
      if (i == r || M[i][c] == 0) continue;
      int f = M[i][c];
      for (int j = c; j < h; j++)
        M[i][j] = ((M[i][j] - f * M[r][j]) % p + p) % p;
    }
    r++;
    rank++;
  }
  return h - rank;
}

}  // namespace

std::map<AbelianType, uint64_t> afp_simulate(int g, int p, uint64_t samples,
                                             std::mt19937_64& rng) {
  std::map<AbelianType, uint64_t> out;
  for (uint64_t s = 0; s < samples; s++) {
    AbelianType exps(g, 0);
    int h = random_corank(g, p, rng);
    while (h > 0) {
      exps[h - 1]++;
      h = random_corank(h, p, rng);
    }
    out[exps]++;
  }
  return out;
}

double all_cyclic_probability(int g) {
  if (g < 0) throw std::invalid_argument("g >= 0 required (0 = infinity)");
  int gg = g == 0 ? 400 : g;
  // sieve of primes
  const int kPrimeCap = 20000;
  std::vector<char> comp(kPrimeCap + 1, 0);
  double prod = 1;
  for (int p = 2; p <= kPrimeCap; p++) {
    if (comp[p]) continue;
    for (int q = 2 * p; q <= kPrimeCap; q += p) comp[q] = 1;
    // distribution of the number of dependent columns e while adding gg
    // uniform columns to a rank-(j - e) subspace of F_p^gg
    const int kEmax = 24;
    std::vector<double> dist(kEmax + 1, 0);
    dist[0] = 1;
    for (int j = 0; j < gg; j++) {
      std::vector<double> next(kEmax + 1, 0);
      for (int e = 0; e <= kEmax; e++) {
        if (dist[e] == 0) continue;
        double pd = std::pow((double)p, (double)(j - e - gg));
        if (e < kEmax) next[e + 1] += dist[e] * pd;
        next[e] += dist[e] * (1 - pd);
      }
      dist = std::move(next);
    }
    prod *= dist[0] + dist[1];
  }
  return prod;
}

}  // namespace rhm
