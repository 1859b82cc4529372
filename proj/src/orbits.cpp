#include "orbits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace rhm {

Canonicalizer::Canonicalizer(const BuiltGroup& bg)
    : bg_(&bg), auts_(&bg.auts.all()) {
  int n = bg.G->order();
  orbit_min_.assign(n, 0);
  movers_.assign(n, {});
  for (int x = 0; x < n; x++) {
    Elt m = (Elt)x;
    for (const Perm& f : *auts_) m = std::min(m, f[x]);
    orbit_min_[x] = m;
    for (uint32_t i = 0; i < auts_->size(); i++)
      if ((*auts_)[i][x] == m) movers_[x].push_back(i);
  }
}

Tuple Canonicalizer::canonical(const Tuple& t) const {
  if (t.empty()) return t;
  Tuple best;
  for (uint32_t ai : movers_[t[0]]) {
    const Perm& f = (*auts_)[ai];
    if (best.empty()) {
      best.resize(t.size());
      for (size_t i = 0; i < t.size(); i++) best[i] = f[t[i]];
      continue;
    }
    for (size_t i = 1; i < t.size(); i++) {
      Elt v = f[t[i]];
      if (v > best[i]) break;
      if (v < best[i]) {
        for (size_t j = 1; j < t.size(); j++) best[j] = f[t[j]];
        break;
      }
    }
  }
  return best;
}

uint64_t Canonicalizer::key(const Tuple& t) const {
  uint64_t n = (uint64_t)group().order();
  uint64_t k = 0;
  for (Elt x : t) {
    if (k > (UINT64_MAX - x) / n)
      throw std::overflow_error("tuple key exceeds 64 bits");
    k = k * n + x;
  }
  return k;
}

Tuple Canonicalizer::from_key(uint64_t k, int arity) const {
  uint64_t n = (uint64_t)group().order();
  Tuple t(arity);
  for (int i = arity - 1; i >= 0; i--) {
    t[i] = (Elt)(k % n);
    k /= n;
  }
  return t;
}

std::vector<uint32_t> Canonicalizer::stabilizer(
    Elt x, const std::vector<uint32_t>& within) const {
  std::vector<uint32_t> out;
  if (within.empty()) {
    for (uint32_t i = 0; i < auts_->size(); i++)
      if ((*auts_)[i][x] == x) out.push_back(i);
  } else {
    for (uint32_t i : within)
      if ((*auts_)[i][x] == x) out.push_back(i);
  }
  return out;
}

Elt Canonicalizer::min_image(Elt x, const std::vector<uint32_t>& within) const {
  Elt m = x;
  for (uint32_t i : within) m = std::min(m, (*auts_)[i][x]);
  return m;
}

void ClassSet::insert(const Canonicalizer& C, const Tuple& rep) {
  uint64_t k = C.key(rep);
  if (index.emplace(k, (uint32_t)reps.size()).second) reps.push_back(rep);
}

ClassSet enumerate_E(const Canonicalizer& C, int g) {
  const FiniteGroup& G = C.group();
  if (g < 1) throw std::invalid_argument("genus >= 1 required");
  if (std::pow((double)G.order(), g) > 1e9)
    throw std::invalid_argument("enumerate_E: |Q|^g exceeds cap");
  ClassSet out;
  out.genus = g;
  int n = G.order();
  std::vector<uint32_t> all_auts(C.auts().size());
  for (uint32_t i = 0; i < all_auts.size(); i++) all_auts[i] = i;
  Tuple chosen(g);
  // staged orbit-minimum filtering: coordinate i must be minimal under the
  // pointwise stabilizer of the earlier coordinates, which makes each
  // recorded tuple the lex-min of its Aut-orbit, hit exactly once
  std::vector<std::vector<uint32_t>> stabs(g + 1);
  stabs[0] = all_auts;
  auto rec = [&](auto&& self, int level) -> void {
    if (level == g) {
      if (!G.generates(chosen)) return;
      Tuple surface(2 * g, 0);
      for (int i = 0; i < g; i++) surface[2 * i] = chosen[i];
      out.insert(C, surface);
      return;
    }
    for (int x = 0; x < n; x++) {
      if (C.min_image((Elt)x, stabs[level]) != (Elt)x) continue;
      chosen[level] = (Elt)x;
      stabs[level + 1] = C.stabilizer((Elt)x, stabs[level]);
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Tuple random_relation_tuple(const FiniteGroup& G, int g,
                            std::mt19937_64& rng) {
  int n = G.order();
  Tuple t(2 * g);
  for (;;) {
    Elt prod = 0;
    for (int i = 0; i < 2 * g; i++) t[i] = (Elt)uniform_below(rng, n);
    for (int i = 0; i < g; i++)
      prod = G.mul(prod, G.commutator(t[2 * i], t[2 * i + 1]));
    if (prod == G.identity()) return t;
  }
}

namespace {

ClassSet enumerate_A_brute(const Canonicalizer& C, int g) {
  const FiniteGroup& G = C.group();
  int n = G.order();
  if (std::pow((double)n, 2 * g) > 1e8)
    throw std::invalid_argument("enumerate_A brute: |Q|^{2g} exceeds cap");
  ClassSet out;
  out.genus = g;
  Tuple t(2 * g, 0);
  for (;;) {
    Elt prod = 0;
    for (int i = 0; i < g; i++)
      prod = G.mul(prod, G.commutator(t[2 * i], t[2 * i + 1]));
    if (prod == G.identity() && G.generates(t)) out.insert(C, C.canonical(t));
    int i = 2 * g - 1;
    while (i >= 0 && t[i] == n - 1) t[i--] = 0;
    if (i < 0) break;
    t[i]++;
  }
  return out;
}

ClassSet enumerate_A_fiber(const Canonicalizer& C, int g) {
  if (g != 2)
    throw std::invalid_argument("enumerate_A fiber: only genus 2 supported");
  const FiniteGroup& G = C.group();
  int n = G.order();
  auto fibers = G.commutator_fiber_pairs();
  const auto& auts = C.auts();
  ClassSet out;
  out.genus = 2;
  std::vector<uint32_t> all_auts(auts.size());
  for (uint32_t i = 0; i < all_auts.size(); i++) all_auts[i] = i;
  Tuple t(4);
  for (int a1 = 0; a1 < n; a1++) {
    if (C.orbit_min((Elt)a1) != (Elt)a1) continue;
    auto s1 = C.stabilizer((Elt)a1, all_auts);
    for (int b1 = 0; b1 < n; b1++) {
      if (C.min_image((Elt)b1, s1) != (Elt)b1) continue;
      auto s2 = C.stabilizer((Elt)b1, s1);
      Elt target = G.inv(G.commutator((Elt)a1, (Elt)b1));
      t[0] = (Elt)a1;
      t[1] = (Elt)b1;
      for (uint32_t packed : fibers[target]) {
        Elt a2 = (Elt)(packed / n), b2 = (Elt)(packed % n);
        if (s2.size() > 1) {
          bool minimal = true;
          for (uint32_t ai : s2) {
            const Perm& f = auts[ai];
            Elt fa = f[a2];
            if (fa < a2 || (fa == a2 && f[b2] < b2)) {
              minimal = false;
              break;
            }
          }
          if (!minimal) continue;
        }
        t[2] = a2;
        t[3] = b2;
        if (!G.generates(t)) continue;
        out.insert(C, t);
      }
    }
  }
  return out;
}

// closure of the class set under the twist action, extending `set` in place
void bfs_close(const Canonicalizer& C, ClassSet& set) {
  const FiniteGroup& G = C.group();
  const auto& gens = humphries_generators(set.genus);
  size_t fi = 0;
  while (fi < set.reps.size()) {
    Tuple t = set.reps[fi++];
    for (const MappingClassGen& mc : gens) {
      set.insert(C, C.canonical(apply_gen(G, mc.images, t)));
      set.insert(C, C.canonical(apply_gen(G, mc.inverse, t)));
    }
  }
}

AEnumeration enumerate_A_bfs(const Canonicalizer& C, int g, uint64_t seed,
                             int probes) {
  const FiniteGroup& G = C.group();
  AEnumeration res;
  res.classes = enumerate_E(C, g);
  auto rng = make_rng(seed, /*stream=*/0x0bf5);
  for (int i = 0; i < probes; i++) {
    Tuple t = random_relation_tuple(G, g, rng);
    if (G.generates(t)) res.classes.insert(C, C.canonical(t));
  }
  bfs_close(C, res.classes);
  uint64_t expected = 0;
  bool have_expected = false;
  if (G.order() <= 400 && C.built().auts.full &&
      C.built().auts.aut_order > 0) {
    expected = surjective_relation_count(G, g) / C.built().auts.aut_order;
    have_expected = true;
  }
  if (have_expected) {
    int extra_rounds = 0;
    while (res.classes.size() < expected && extra_rounds++ < 64) {
      for (int i = 0; i < probes; i++) {
        Tuple t = random_relation_tuple(G, g, rng);
        if (G.generates(t)) res.classes.insert(C, C.canonical(t));
      }
      bfs_close(C, res.classes);
    }
    if (res.classes.size() != expected) {
      std::ostringstream os;
      os << "INCOMPLETE: found " << res.classes.size() << " of " << expected;
      res.completeness = os.str();
    } else {
      res.completeness = "reconciled";
    }
  } else {
    int misses = 0;
    for (int i = 0; i < probes; i++) {
      Tuple t = random_relation_tuple(G, g, rng);
      if (!G.generates(t)) continue;
      if (!res.classes.contains(C.key(C.canonical(t)))) {
        misses++;
        res.classes.insert(C, C.canonical(t));
      }
    }
    if (misses) bfs_close(C, res.classes);
    std::ostringstream os;
    os << (misses ? "probabilistic after reseeding (" : "probabilistic (")
       << probes << " probes)";
    res.completeness = os.str();
  }
  return res;
}

}  // namespace

AEnumeration enumerate_A(const Canonicalizer& C, int g, EnumMethod method,
                         uint64_t seed, int probes) {
  AEnumeration res;
  switch (method) {
    case EnumMethod::Brute:
      res.classes = enumerate_A_brute(C, g);
      res.completeness = "exact";
      return res;
    case EnumMethod::Fiber:
      res.classes = enumerate_A_fiber(C, g);
      res.completeness = "exact";
      return res;
    case EnumMethod::OrbitBfs:
      return enumerate_A_bfs(C, g, seed, probes);
  }
  throw std::logic_error("unknown enumeration method");
}

OrbitTable orbit_decomposition(const Canonicalizer& C, const ClassSet& A,
                               const SchurCoverData* cover) {
  const FiniteGroup& G = C.group();
  const auto& gens = humphries_generators(A.genus);
  size_t m = A.size();
  std::vector<uint32_t> parent(m);
  for (size_t i = 0; i < m; i++) parent[i] = (uint32_t)i;
  auto find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < m; i++)
    for (const MappingClassGen& mc : gens) {
      Tuple img = C.canonical(apply_gen(G, mc.images, A.reps[i]));
      auto it = A.index.find(C.key(img));
      if (it == A.index.end())
        throw std::logic_error("class set not closed under the twist action");
      uint32_t a = find((uint32_t)i), b = find(it->second);
      if (a != b) parent[a] = b;
    }
  OrbitTable table;
  table.orbit_of.assign(m, 0);
  std::unordered_map<uint32_t, uint32_t> id_of_root;
  for (size_t i = 0; i < m; i++) {
    uint32_t r = find((uint32_t)i);
    auto it = id_of_root.find(r);
    if (it == id_of_root.end()) {
      it = id_of_root.emplace(r, (uint32_t)table.rows.size()).first;
      OrbitRow row;
      row.orbit_id = it->second;
      row.rep = A.reps[i];
      row.h2_class =
          cover ? std::to_string(homology_class(*cover, A.reps[i]))
                : "unavailable";
      table.rows.push_back(std::move(row));
    }
    OrbitRow& row = table.rows[it->second];
    row.size++;
    if (extends_over_handlebody(G, A.reps[i])) row.e_count++;
    table.orbit_of[i] = it->second;
  }
  return table;
}

std::string OrbitTable::to_csv() const {
  std::ostringstream os;
  os << "orbit_id,size,e_count,h2_class\n";
  for (const OrbitRow& r : rows)
    os << r.orbit_id << "," << r.size << "," << r.e_count << "," << r.h2_class
       << "\n";
  return os.str();
}

std::vector<std::vector<uint32_t>> orbit_action(const Canonicalizer& C,
                                                const ClassSet& A) {
  const FiniteGroup& G = C.group();
  const auto& gens = humphries_generators(A.genus);
  std::vector<std::vector<uint32_t>> action(2 * gens.size());
  for (size_t s = 0; s < 2 * gens.size(); s++)
    action[s].assign(A.size(), 0);
  for (size_t i = 0; i < A.size(); i++)
    for (size_t k = 0; k < gens.size(); k++) {
      for (int dir = 0; dir < 2; dir++) {
        const auto& img =
            dir == 0 ? gens[k].images : gens[k].inverse;
        Tuple u = C.canonical(apply_gen(G, img, A.reps[i]));
        auto it = A.index.find(C.key(u));
        if (it == A.index.end())
          throw std::logic_error("class set not closed under the twist action");
        action[2 * k + dir][i] = it->second;
      }
    }
  return action;
}

bool orbit_k_transitive(const std::vector<std::vector<uint32_t>>& action,
                        const std::vector<uint32_t>& members, int k) {
  if (k < 1 || k > 2) throw std::invalid_argument("only k <= 2 supported");
  size_t m = members.size();
  if (m <= (size_t)k) return true;  // vacuous / singleton
  std::unordered_map<uint32_t, uint32_t> local;
  for (uint32_t i = 0; i < m; i++) local.emplace(members[i], i);
  if (k == 1) {
    std::vector<char> seen(m, 0);
    std::vector<uint32_t> frontier{0};
    seen[0] = 1;
    size_t fi = 0, count = 1;
    while (fi < frontier.size()) {
      uint32_t x = frontier[fi++];
      for (const auto& a : action) {
        uint32_t y = local.at(a[members[x]]);
        if (!seen[y]) {
          seen[y] = 1;
          count++;
          frontier.push_back(y);
        }
      }
    }
    return count == m;
  }
  // k = 2: closure on ordered distinct pairs from the seed pair (0, 1)
  std::vector<char> seen((size_t)m * m, 0);
  std::vector<uint64_t> frontier{0 * m + 1};
  seen[0 * m + 1] = 1;
  size_t fi = 0, count = 1;
  while (fi < frontier.size()) {
    uint64_t p = frontier[fi++];
    uint32_t i = (uint32_t)(p / m), j = (uint32_t)(p % m);
    for (const auto& a : action) {
      uint32_t ni = local.at(a[members[i]]), nj = local.at(a[members[j]]);
      uint64_t np = (uint64_t)ni * m + nj;
      if (!seen[np]) {
        seen[np] = 1;
        count++;
        frontier.push_back(np);
      }
    }
  }
  return count == (uint64_t)m * (m - 1);
}

int homology_class(const SchurCoverData& cover, const Tuple& t,
                   std::mt19937_64* rng) {
  const FiniteGroup& S = *cover.cover;
  if (t.size() % 2) throw std::invalid_argument("surface tuple required");
  Elt c = S.identity();
  for (size_t i = 0; i + 1 < t.size(); i += 2) {
    Elt s = cover.section[t[i]], u = cover.section[t[i + 1]];
    if (rng) {
      s = S.mul(s, cover.h2_elements[uniform_below(
                       *rng, cover.h2_elements.size())]);
      u = S.mul(u, cover.h2_elements[uniform_below(
                       *rng, cover.h2_elements.size())]);
    }
    c = S.mul(c, S.commutator(s, u));
  }
  for (size_t i = 0; i < cover.h2_elements.size(); i++)
    if (cover.h2_elements[i] == c) return (int)i;
  throw std::logic_error("commutator fold landed outside the Schur kernel");
}

Tuple stabilize(const Tuple& t, int h) {
  if (h < 0) throw std::invalid_argument("nonnegative genus extension");
  Tuple out = t;
  out.resize(t.size() + 2 * h, 0);
  return out;
}

bool hall_product_check(const FiniteGroup& Q, const FiniteGroup& QQ,
                        const Tuple& f1, const Tuple& f2) {
  if (f1.size() != f2.size())
    throw std::invalid_argument("tuple arity mismatch");
  if (QQ.order() != Q.order() * Q.order())
    throw std::invalid_argument("QQ must be the direct square of Q");
  Tuple joint(f1.size());
  for (size_t k = 0; k < f1.size(); k++)
    joint[k] = (Elt)(f1[k] * Q.order() + f2[k]);
  return QQ.generates(joint);
}

std::vector<std::vector<Elt>> subgroup_lattice(const FiniteGroup& G,
                                               int order_cap) {
  int n = G.order();
  if (n > order_cap)
    throw std::invalid_argument("subgroup lattice: group exceeds order cap");
  // minimal generator of each cyclic subgroup, to prune redundant extensions
  std::vector<char> cyc_min(n, 0);
  {
    std::vector<char> covered(n, 0);
    for (int x = 0; x < n; x++) {
      if (covered[x]) continue;
      cyc_min[x] = 1;
      Elt p = (Elt)x;
      while (p != 0) {
        covered[p] = 1;
        p = G.mul(p, (Elt)x);
      }
    }
    cyc_min[0] = 1;
  }
  std::vector<std::vector<Elt>> subs{{0}};
  std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash;
  auto hash_of = [](const std::vector<Elt>& v) {
    uint64_t h = 1469598103934665603ull;
    for (Elt x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  };
  auto add = [&](std::vector<Elt> v) {
    uint64_t h = hash_of(v);
    for (uint32_t i : by_hash[h])
      if (subs[i] == v) return;
    by_hash[h].push_back((uint32_t)subs.size());
    subs.push_back(std::move(v));
  };
  // every subgroup arises by extending a smaller one by a single generator
  for (size_t qi = 0; qi < subs.size(); qi++) {
    std::vector<char> in(n, 0);
    for (Elt x : subs[qi]) in[x] = 1;
    for (int x = 1; x < n; x++) {
      if (in[x] || !cyc_min[x]) continue;
      std::vector<Elt> gens = subs[qi];
      gens.push_back((Elt)x);
      auto K = G.subgroup_closure(gens, n / 2);
      if ((int)K.size() > n / 2 && (int)K.size() != n) {
        // closure was truncated by the cap but is all of G by Lagrange
        K.resize(n);
        for (int e = 0; e < n; e++) K[e] = (Elt)e;
      }
      add(std::move(K));
    }
  }
  return subs;
}

uint64_t surjective_relation_count(const FiniteGroup& G, int g,
                                   int order_cap) {
  auto subs = subgroup_lattice(G, order_cap);
  int n = G.order();
  size_t m = subs.size();
  // relation-solution count inside each subgroup
  std::vector<uint64_t> sol(m);
  std::vector<int> loc(n, -1);
  for (size_t si = 0; si < m; si++) {
    const auto& H = subs[si];
    int h = (int)H.size();
    for (int i = 0; i < h; i++) loc[H[i]] = i;
    std::vector<uint64_t> f(h, 0);
    for (int a = 0; a < h; a++)
      for (int b = 0; b < h; b++) f[loc[G.commutator(H[a], H[b])]]++;
    std::vector<uint64_t> acc = f;
    for (int k = 1; k < g; k++) {
      std::vector<uint64_t> next(h, 0);
      for (int x = 0; x < h; x++)
        for (int y = 0; y < h; y++)
          next[loc[G.mul(H[x], H[y])]] += acc[x] * f[y];
      acc = std::move(next);
    }
    sol[si] = acc[loc[G.identity()]];
    for (int i = 0; i < h; i++) loc[H[i]] = -1;
  }
  // Moebius inversion over the containment order, from the top down
  std::vector<size_t> order(m);
  for (size_t i = 0; i < m; i++) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return subs[a].size() > subs[b].size();
  });
  auto contains = [&](const std::vector<Elt>& big,
                      const std::vector<Elt>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  std::vector<long long> mu(m, 0);
  long long surj = 0;
  for (size_t oi = 0; oi < m; oi++) {
    size_t i = order[oi];
    if (subs[i].size() == (size_t)n) {
      mu[i] = 1;
    } else {
      long long s = 0;
      for (size_t oj = 0; oj < oi; oj++) {
        size_t j = order[oj];
        if (subs[j].size() > subs[i].size() && contains(subs[j], subs[i]))
          s += mu[j];
      }
      mu[i] = -s;
    }
    surj += mu[i] * (long long)sol[i];
  }
  if (surj < 0) throw std::logic_error("negative surjective count");
  return (uint64_t)surj;
}

}  // namespace rhm
