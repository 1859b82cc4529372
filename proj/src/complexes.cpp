#include "complexes.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace rhm {

int sigma_slot(int slot) { return 3 * (slot / 3) + (slot + 1) % 3; }

std::vector<int> random_involution(int m, std::mt19937_64& rng) {
  if (m % 2) throw std::invalid_argument("even count required");
  std::vector<int> items(m), pi(m);
  std::iota(items.begin(), items.end(), 0);
  // pair the first unmatched item with a uniform other unmatched item
  int live = m;
  while (live > 0) {
    int a = items[0];
    uint64_t pick = 1 + uniform_below(rng, live - 1);
    int b = items[pick];
    pi[a] = b;
    pi[b] = a;
    items[pick] = items[live - 1];
    items[0] = items[live - 2];
    live -= 2;
  }
  return pi;
}

TriangleGluing random_surface(int n, std::mt19937_64& rng) {
  if (n <= 0 || n % 2) throw std::invalid_argument("positive even n required");
  return {n, random_involution(3 * n, rng)};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

SurfaceStats surface_stats(const TriangleGluing& T) {
  int m = 3 * T.n;
  SurfaceStats out;
  // vertices = cycles of sigma * pi
  std::vector<char> done(m, 0);
  for (int s = 0; s < m; s++) {
    if (done[s]) continue;
    out.vertices++;
    int c = s;
    while (!done[c]) {
      done[c] = 1;
      c = sigma_slot(T.pi[c]);
    }
  }
  // independent count: corners identified along glued side endpoints. The
  // head corner of side s is s itself, the tail corner is sigma(s); an
  // orientation-reversing gluing matches head(s) ~ tail(pi(s)).
  UnionFind corners(m);
  for (int s = 0; s < m; s++) corners.unite(s, sigma_slot(T.pi[s]));
  std::vector<char> seen(m, 0);
  for (int s = 0; s < m; s++) {
    int r = corners.find(s);
    if (!seen[r]) {
      seen[r] = 1;
      out.vertices_alt++;
    }
  }
  out.euler = out.vertices - T.n / 2;
  // components: triangles joined by gluings
  UnionFind comp(T.n);
  for (int s = 0; s < m; s++) comp.unite(s / 3, T.pi[s] / 3);
  std::vector<int> root_of(T.n), faces, verts;
  std::vector<int> index(T.n, -1);
  for (int t = 0; t < T.n; t++) {
    int r = comp.find(t);
    if (index[r] < 0) {
      index[r] = out.components++;
      faces.push_back(0);
      verts.push_back(0);
    }
    root_of[t] = index[r];
    faces[index[r]]++;
  }
  std::fill(done.begin(), done.end(), 0);
  for (int s = 0; s < m; s++) {
    if (done[s]) continue;
    verts[root_of[s / 3]]++;
    int c = s;
    while (!done[c]) {
      done[c] = 1;
      c = sigma_slot(T.pi[c]);
    }
  }
  for (int k = 0; k < out.components; k++) {
    long chi = verts[k] - faces[k] / 2;  // v - e + f with e = 3f/2
    out.component_genus.push_back((int)((2 - chi) / 2));
  }
  return out;
}

CycleStats short_cycle_stats(int d, int n, int imax, uint64_t samples,
                             uint64_t seed) {
  if (d < 3 || n < 2 || imax < 1) throw std::invalid_argument("bad arguments");
  if ((uint64_t)d * n % 2) throw std::invalid_argument("d*n must be even");
  CycleStats out;
  out.samples = samples;
  out.mean.assign(imax + 1, 0);
  auto rng = make_rng(seed, /*stream=*/0xc0de);
  for (uint64_t s = 0; s < samples; s++) {
    std::vector<int> pi = random_involution(d * n, rng);
    // stub k belongs to vertex k / d; edges are stub pairs
    auto vtx = [&](int stub) { return stub / d; };
    // adjacency: per vertex, the d incident stubs are implicit
    std::vector<uint64_t> count(imax + 1, 0);
    // i = 1: self loops; i = 2: pairs of parallel edges
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
    int eid = 0;
    for (int a = 0; a < d * n; a++) {
      int b = pi[a];
      if (a > b) continue;
      int u = vtx(a), v = vtx(b);
      adj[u].push_back({v, eid});
      if (u != v) adj[v].push_back({u, eid});
      if (u == v) count[1]++;
      eid++;
    }
    if (imax >= 2) {
      for (int u = 0; u < n; u++)
        for (size_t x = 0; x < adj[u].size(); x++)
          for (size_t y = x + 1; y < adj[u].size(); y++) {
            auto [v1, e1] = adj[u][x];
            auto [v2, e2] = adj[u][y];
            if (v1 == v2 && v1 > u && e1 != e2) count[2]++;
          }
    }
    // i >= 3: simple cycles via DFS over distinct vertices and edges,
    // counted once per orientation and starting point, then divided by 2i
    for (int len = 3; len <= imax; len++) {
      uint64_t walks = 0;
      std::vector<int> path;
      std::vector<char> used(n, 0);
      std::vector<char> eused(eid, 0);
      auto dfs = [&](auto&& self, int start, int cur, int depth) -> void {
        if (depth == len) return;
        for (auto [nb, e] : adj[cur]) {
          if (eused[e]) continue;
          if (depth == len - 1) {
            if (nb == start) walks++;
            continue;
          }
          if (used[nb] || nb == start) continue;
          used[nb] = 1;
          eused[e] = 1;
          self(self, start, nb, depth + 1);
          used[nb] = 0;
          eused[e] = 0;
        }
      };
      for (int u = 0; u < n; u++) dfs(dfs, u, u, 0);
      count[len] = walks / (2 * (uint64_t)len);
    }
    for (int i = 1; i <= imax; i++) out.mean[i] += (double)count[i];
  }
  for (int i = 1; i <= imax; i++) out.mean[i] /= (double)samples;
  return out;
}

const std::array<int, 3>& face_cycle(int i) {
  static const std::array<std::array<int, 3>, 4> cycles = {
      std::array<int, 3>{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  return cycles[i];
}

int glued_vertex(int i, int j, int r, int v) {
  const auto& ci = face_cycle(i);
  const auto& cj = face_cycle(j);
  for (int k = 0; k < 3; k++)
    if (ci[k] == v) return cj[((r - k) % 3 + 3) % 3];
  throw std::invalid_argument("vertex not on face");
}

TetGluing random_tet_gluing(int n, std::mt19937_64& rng) {
  if (n < 1 || (4 * n) % 2) throw std::invalid_argument("bad n");
  TetGluing T;
  T.n = n;
  T.pairing = random_involution(4 * n, rng);
  T.rotation.assign(4 * n, 0);
  for (int f = 0; f < 4 * n; f++) {
    if (f > T.pairing[f]) continue;
    int r = (int)uniform_below(rng, 3);
    T.rotation[f] = T.rotation[T.pairing[f]] = r;
  }
  return T;
}

TetStats tet_stats(const TetGluing& T) {
  int n = T.n;
  TetStats out;
  // corner (t, v): index 4t + v. small vertex of link triangles: (t, v, u)
  // with u != v: index 16t + 4v + u (sparse).
  UnionFind corners(4 * n), small(16 * n), edges(16 * n);
  for (int f = 0; f < 4 * n; f++) {
    int t = f / 4, i = f % 4;
    int f2 = T.pairing[f], t2 = f2 / 4, j = f2 % 4, r = T.rotation[f];
    for (int v : face_cycle(i)) {
      int v2 = glued_vertex(i, j, r, v);
      corners.unite(4 * t + v, 4 * t2 + v2);
      for (int u : face_cycle(i)) {
        if (u == v) continue;
        int u2 = glued_vertex(i, j, r, u);
        small.unite(16 * t + 4 * v + u, 16 * t2 + 4 * v2 + u2);
        edges.unite(16 * t + 4 * v + u, 16 * t2 + 4 * v2 + u2);
      }
    }
  }
  // tet edge {v,u} and {u,v} are the same edge of the complex
  for (int t = 0; t < n; t++)
    for (int v = 0; v < 4; v++)
      for (int u = v + 1; u < 4; u++)
        edges.unite(16 * t + 4 * v + u, 16 * t + 4 * u + v);
  // vertex classes and their link Euler characteristics
  std::vector<int> vclass(4 * n, -1);
  for (int c = 0; c < 4 * n; c++) {
    int r = corners.find(c);
    if (vclass[r] < 0) vclass[r] = out.vertices++;
  }
  std::vector<long> linkF(out.vertices, 0), linkV(out.vertices, 0);
  for (int c = 0; c < 4 * n; c++) linkF[vclass[corners.find(c)]]++;
  std::vector<char> seen(16 * n, 0);
  for (int t = 0; t < n; t++)
    for (int v = 0; v < 4; v++)
      for (int u = 0; u < 4; u++) {
        if (u == v) continue;
        int idx = 16 * t + 4 * v + u;
        int r = small.find(idx);
        if (seen[r]) continue;
        seen[r] = 1;
        linkV[vclass[corners.find(4 * t + v)]]++;
      }
  out.manifold = true;
  for (int k = 0; k < out.vertices; k++) {
    long chi = linkV[k] - 3 * linkF[k] / 2 + linkF[k];
    out.link_euler.push_back(chi);
    if (chi != 2) out.manifold = false;
  }
  // edge classes and valences (each (t, {v,u}) incidence counted once)
  std::vector<int> eclass(16 * n, -1);
  std::vector<long> valence;
  for (int t = 0; t < n; t++)
    for (int v = 0; v < 4; v++)
      for (int u = v + 1; u < 4; u++) {
        int r = edges.find(16 * t + 4 * v + u);
        if (eclass[r] < 0) {
          eclass[r] = out.edges++;
          valence.push_back(0);
        }
        valence[eclass[r]]++;
      }
  long le6 = 0, total = 0;
  for (long val : valence) {
    total += val;
    if (val <= 6) le6++;
  }
  out.mean_edge_valence = out.edges ? (double)total / out.edges : 0;
  out.frac_valence_le6 = out.edges ? (double)le6 / out.edges : 0;
  out.global_euler = out.vertices - out.edges + 2L * n - n;
  return out;
}

namespace {

// union-find with rollback (union by size, no path compression) for
// tentative gluings during candidate evaluation
struct RbDsu {
  std::vector<int> parent, size;
  struct UndoRec {
    int child, parent, psize;
  };
  std::vector<UndoRec> log;
  explicit RbDsu(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] > size[b]) std::swap(a, b);
    log.push_back({a, b, size[b]});
    parent[a] = b;
    size[b] += size[a];
  }
  size_t mark() const { return log.size(); }
  void rollback(size_t m) {
    while (log.size() > m) {
      auto r = log.back();
      log.pop_back();
      parent[r.child] = r.child;
      size[r.parent] = r.psize;
    }
  }
};

struct Particle {
  std::vector<int> pairing, rotation, live;
  std::vector<char> glued;
  RbDsu small;  // small vertices (t, v, u) of the link pieces
  explicit Particle(int n)
      : pairing(4 * n, -1), rotation(4 * n, 0), glued(4 * n, 0),
        small(16 * n) {
    for (int f = 0; f < 4 * n; f++) live.push_back(f);
  }
};

struct SmcScratch {
  std::vector<int> cstamp, sstamp, sidx, bfs, bdsu;
  std::vector<char> isbd;
  std::vector<std::pair<int, int>> bedges;
  int stamp = 0;
  long dfs_nodes = 0;
  explicit SmcScratch(int n)
      : cstamp(4 * n, -1), sstamp(16 * n, -1), sidx(16 * n, 0) {}
};

void smc_glue(Particle& P, int f, int f2, int r) {
  P.pairing[f] = f2;
  P.pairing[f2] = f;
  P.rotation[f] = P.rotation[f2] = r;
  P.glued[f] = P.glued[f2] = 1;
  int t = f / 4, i = f % 4, t2 = f2 / 4, j = f2 % 4;
  for (int v : face_cycle(i)) {
    int v2 = glued_vertex(i, j, r, v);
    for (int u : face_cycle(i)) {
      if (u == v) continue;
      int u2 = glued_vertex(i, j, r, u);
      P.small.unite(16 * t + 4 * v + u, 16 * t2 + 4 * v2 + u2);
    }
  }
}

void smc_unglue(Particle& P, int f, int f2, size_t m) {
  P.small.rollback(m);
  P.pairing[f] = P.pairing[f2] = -1;
  P.glued[f] = P.glued[f2] = 0;
}

// BFS the link-piece component of corner c0. The partial link is a compact
// surface with boundary, doomed exactly when chi < 2 - b (b boundary
// circles); for a closed component this is chi != 2.
bool doomed_component(const Particle& P, SmcScratch& S, int c0) {
  if (S.cstamp[c0] == S.stamp) return false;  // already checked
  S.bfs.clear();
  S.bedges.clear();
  S.bfs.push_back(c0);
  S.cstamp[c0] = S.stamp;
  long F = 0, V = 0;
  for (size_t h = 0; h < S.bfs.size(); h++) {
    int c = S.bfs[h];
    int t = c / 4, v = c % 4;
    F++;
    for (int u = 0; u < 4; u++) {
      if (u == v) continue;
      int r = P.small.find(16 * t + 4 * v + u);
      if (S.sstamp[r] != S.stamp) {
        S.sstamp[r] = S.stamp;
        S.sidx[r] = (int)V;
        V++;
      }
      int fu = 4 * t + u;  // the piece edge lying on face u of t
      if (!P.glued[fu]) {
        int w1 = -1, w2 = -1;
        for (int w = 0; w < 4; w++)
          if (w != v && w != u) (w1 < 0 ? w1 : w2) = w;
        S.bedges.push_back({P.small.find(16 * t + 4 * v + w1),
                            P.small.find(16 * t + 4 * v + w2)});
        continue;
      }
      int f2 = P.pairing[fu], t2 = f2 / 4, j = f2 % 4;
      int c2 = 4 * t2 + glued_vertex(u, j, P.rotation[fu], v);
      if (S.cstamp[c2] != S.stamp) {
        S.cstamp[c2] = S.stamp;
        S.bfs.push_back(c2);
      }
    }
  }
  // boundary circles: the boundary graph is 2-regular, so circles =
  // vertices - merges
  long ebd = (long)S.bedges.size(), b = 0;
  if (ebd) {
    S.bdsu.assign(V, -1);
    S.isbd.assign(V, 0);
    auto find = [&](int x) {
      while (S.bdsu[x] >= 0) x = S.bdsu[x];
      return x;
    };
    long vbd = 0, merges = 0;
    for (auto [r1, r2] : S.bedges) {
      int x = S.sidx[r1], y = S.sidx[r2];
      if (!S.isbd[x]) {
        S.isbd[x] = 1;
        vbd++;
      }
      if (!S.isbd[y]) {
        S.isbd[y] = 1;
        vbd++;
      }
      x = find(x);
      y = find(y);
      if (x != y) {
        S.bdsu[x] = y;
        merges++;
      }
    }
    b = vbd - merges;
  }
  // chi = V - E + F with E = (3F + ebd) / 2
  return 2 * V - F - ebd < 4 - 2 * b;
}

bool candidate_ok(Particle& P, SmcScratch& S, int f, int f2, int r) {
  size_t m = P.small.mark();
  smc_glue(P, f, f2, r);
  S.stamp++;
  bool ok = true;
  int t = f / 4, i = f % 4, t2 = f2 / 4, j = f2 % 4;
  for (int v : face_cycle(i))
    if (doomed_component(P, S, 4 * t + v)) {
      ok = false;
      break;
    }
  if (ok)
    for (int v : face_cycle(j))
      if (doomed_component(P, S, 4 * t2 + v)) {
        ok = false;
        break;
      }
  smc_unglue(P, f, f2, m);
  return ok;
}

// exact number of manifold completions (every manifold completion keeps all
// prefixes undoomed, so the pruned DFS count is exact)
double dfs_completions(Particle& P, SmcScratch& S, std::vector<int>& live) {
  if (live.empty()) return 1;
  if (++S.dfs_nodes > 50000000)
    throw std::runtime_error("endgame DFS budget exceeded");
  int a = live[0];
  double total = 0;
  for (size_t q = 1; q < live.size(); q++)
    for (int r = 0; r < 3; r++) {
      if (!candidate_ok(P, S, a, live[q], r)) continue;
      int b = live[q];
      size_t m = P.small.mark();
      smc_glue(P, a, b, r);
      std::vector<int> next;
      for (size_t j = 1; j < live.size(); j++)
        if (j != q) next.push_back(live[j]);
      total += dfs_completions(P, S, next);
      smc_unglue(P, a, b, m);
    }
  return total;
}

double smc_run(int n, int K, int tail, std::mt19937_64& rng) {
  SmcScratch S(n);
  std::vector<Particle> pop(K, Particle(n));
  std::vector<double> w(K, 1.0);
  std::vector<int> good;
  double logZ = 0;
  int nsteps = std::max(0, 2 * n - tail / 2);
  for (int step = 0; step < nsteps; step++) {
    for (int k = 0; k < K; k++) {
      if (w[k] == 0) continue;
      Particle& P = pop[k];
      int a = P.live[0];
      good.clear();
      for (size_t q = 1; q < P.live.size(); q++)
        for (int r = 0; r < 3; r++)
          if (candidate_ok(P, S, a, P.live[q], r))
            good.push_back((int)q * 3 + r);
      w[k] *= (double)good.size() / (3 * ((int)P.live.size() - 1));
      if (good.empty()) continue;
      int pick = good[uniform_below(rng, good.size())];
      size_t q = pick / 3;
      int b = P.live[q], r = pick % 3;
      smc_glue(P, a, b, r);
      P.live[q] = P.live.back();
      P.live.pop_back();
      P.live[0] = P.live.back();
      P.live.pop_back();
    }
    double wsum = 0;
    for (double x : w) wsum += x;
    if (wsum == 0) return 0;
    logZ += std::log(wsum / K);
    // systematic resampling at points (slot + u) * wsum / K
    std::vector<Particle> next;
    next.reserve(K);
    double u = std::uniform_real_distribution<double>(0, 1)(rng);
    double cum = 0;
    int k = 0;
    for (int slot = 0; slot < K; slot++) {
      double target = (slot + u) * wsum / K;
      while (cum + w[k] < target && k < K - 1) cum += w[k++];
      next.push_back(pop[k]);
    }
    pop = std::move(next);
    std::fill(w.begin(), w.end(), 1.0);
  }
  // endgame: exact manifold-completion counts over the remaining faces
  double denom = 1;
  for (int j = (int)pop[0].live.size() - 1; j >= 1; j -= 2) denom *= 3.0 * j;
  double qsum = 0;
  for (int k = 0; k < K; k++)
    if (w[k] > 0)
      qsum += w[k] * dfs_completions(pop[k], S, pop[k].live) / denom;
  return std::exp(logZ) * qsum / K;
}

}  // namespace

int default_smc_tail(int n) {
  if (n <= 3) return 4 * n;  // fully exact
  return n >= 16 ? 12 : 0;
}

ManifoldProbEstimate tet_manifold_probability(int n, int particles, int runs,
                                              int tail, uint64_t seed) {
  if (n < 1 || particles < 1 || runs < 1 || tail % 2)
    throw std::invalid_argument("bad arguments");
  auto rng = make_rng(seed, /*stream=*/0x51c);
  double sum = 0, sum2 = 0;
  for (int r = 0; r < runs; r++) {
    double z = smc_run(n, particles, tail, rng);
    sum += z;
    sum2 += z * z;
  }
  ManifoldProbEstimate out;
  out.particles = particles;
  out.runs = runs;
  out.tail = tail;
  out.p_hat = sum / runs;
  double var = (sum2 / runs - out.p_hat * out.p_hat) / (runs > 1 ? runs - 1 : 1);
  out.std_err = std::sqrt(std::max(0.0, var));
  return out;
}

}  // namespace rhm
