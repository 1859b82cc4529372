#include "group.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rhm {

FiniteGroup::FiniteGroup(std::vector<Elt> table, std::vector<std::string> names,
                         std::vector<Elt> gens)
    : table_(std::move(table)), gens_(std::move(gens)), names_(std::move(names)) {
  size_t nn = table_.size();
  n_ = (int)std::lround(std::sqrt((double)nn));
  if ((size_t)n_ * n_ != nn) throw std::invalid_argument("table not square");
  if (n_ == 0 || n_ > 65535) throw std::invalid_argument("order out of range");
  // identity at index 0
  for (int i = 0; i < n_; i++)
    if (mul(0, i) != i || mul(i, 0) != i)
      throw std::invalid_argument("index 0 is not the identity");
  // inverses
  inv_.assign(n_, 0);
  for (int i = 0; i < n_; i++) {
    bool found = false;
    for (int j = 0; j < n_; j++)
      if (mul(i, j) == 0) {
        inv_[i] = (Elt)j;
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("element without inverse");
  }
  if (names_.empty()) {
    names_.resize(n_);
    for (int i = 0; i < n_; i++) names_[i] = "e" + std::to_string(i);
  }
  if (gens_.empty()) {
    gens_.resize(n_);
    std::iota(gens_.begin(), gens_.end(), 0);
  }
  // element orders
  elt_order_.assign(n_, 0);
  for (int i = 0; i < n_; i++) {
    Elt x = (Elt)i;
    int k = 1;
    while (x != 0) {
      x = mul(x, (Elt)i);
      k++;
    }
    elt_order_[i] = k == 1 ? 1 : k;
  }
  elt_order_[0] = 1;
  // conjugacy classes: orbits under conjugation by generators
  class_idx_.assign(n_, -1);
  for (int i = 0; i < n_; i++) {
    if (class_idx_[i] >= 0) continue;
    int c = (int)class_reps_.size();
    class_reps_.push_back((Elt)i);
    std::vector<Elt> frontier{(Elt)i};
    class_idx_[i] = c;
    int sz = 1;
    while (!frontier.empty()) {
      Elt x = frontier.back();
      frontier.pop_back();
      for (Elt g : gens_) {
        Elt y = conj(g, x);
        if (class_idx_[y] < 0) {
          class_idx_[y] = c;
          frontier.push_back(y);
          sz++;
        }
      }
    }
    class_size_.push_back(sz);
  }
  // derived subgroup: normal closure of generator commutators, via a work
  // queue closed under multiplication by members and conjugation by gens
  {
    std::vector<char> in(n_, 0);
    std::vector<Elt> members, frontier;
    auto add = [&](Elt x) {
      if (!in[x]) {
        in[x] = 1;
        members.push_back(x);
        frontier.push_back(x);
      }
    };
    add(0);
    for (Elt g : gens_)
      for (Elt h : gens_) add(commutator(g, h));
    size_t fi = 0;
    while (fi < frontier.size()) {
      Elt x = frontier[fi++];
      size_t m = members.size();
      for (size_t i = 0; i < m; i++) {
        add(mul(x, members[i]));
        add(mul(members[i], x));
      }
      for (Elt g : gens_) add(conj(g, x));
    }
    in_derived_ = in;
    std::sort(members.begin(), members.end());
    derived_ = std::move(members);
  }
  if ((int)(table_.size() / n_) != n_) throw std::logic_error("bad table");
  if (n_ % (int)derived_.size() != 0)
    throw std::logic_error("derived subgroup order does not divide |G|");
}

std::vector<Elt> FiniteGroup::subgroup_closure(const std::vector<Elt>& S,
                                               int cap) const {
  if (S.empty()) throw std::invalid_argument("empty generating set");
  std::vector<char> in(n_, 0);
  std::vector<Elt> members;
  std::vector<Elt> frontier;
  auto add = [&](Elt x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
      frontier.push_back(x);
    }
  };
  add(0);
  for (Elt s : S) add(s);
  size_t fi = 0;
  while (fi < frontier.size()) {
    Elt x = frontier[fi++];
    size_t m = members.size();
    for (size_t i = 0; i < m; i++) {
      add(mul(x, members[i]));
      add(mul(members[i], x));
      if (cap > 0 && (int)members.size() > cap) {
        std::sort(members.begin(), members.end());
        return members;
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool FiniteGroup::generates(const std::vector<Elt>& S) const {
  // early-exit closure: once the closure exceeds half the group it must be
  // everything (index-2 subgroups are the largest proper ones by Lagrange)
  auto cl = subgroup_closure(S, n_ / 2);
  return (int)cl.size() > n_ / 2 || (int)cl.size() == n_;
}

std::vector<uint64_t> FiniteGroup::commutator_fiber_counts() const {
  std::vector<uint64_t> counts(n_, 0);
  for (int a = 0; a < n_; a++)
    for (int b = 0; b < n_; b++) counts[commutator((Elt)a, (Elt)b)]++;
  return counts;
}

std::vector<std::vector<uint32_t>> FiniteGroup::commutator_fiber_pairs() const {
  std::vector<std::vector<uint32_t>> lists(n_);
  for (int a = 0; a < n_; a++)
    for (int b = 0; b < n_; b++)
      lists[commutator((Elt)a, (Elt)b)].push_back((uint32_t)a * n_ + b);
  return lists;
}

std::string FiniteGroup::fold_convolution_count(int genus) const {
  if (genus < 1) throw std::invalid_argument("genus >= 1 required");
  auto counts = commutator_fiber_counts();
  std::vector<mpz_class> f(n_);
  for (int i = 0; i < n_; i++) f[i] = (unsigned long)counts[i];
  std::vector<mpz_class> acc = f;
  for (int k = 1; k < genus; k++) {
    std::vector<mpz_class> next(n_, 0);
    for (int x = 0; x < n_; x++) {
      if (acc[x] == 0) continue;
      for (int y = 0; y < n_; y++)
        next[mul((Elt)x, (Elt)y)] += acc[x] * f[y];
    }
    acc = std::move(next);
  }
  return acc[0].get_str();
}

uint64_t FiniteGroup::fold_convolution_count_u64(int genus) const {
  mpz_class v(fold_convolution_count(genus));
  if (!v.fits_ulong_p()) throw std::overflow_error("count exceeds 64 bits");
  return v.get_ui();
}

bool GroupHom::verify() const {
  if (!source || !target) return false;
  if ((int)image.size() != source->order()) return false;
  if (image[0] != 0) return false;
  for (int a = 0; a < source->order(); a++)
    for (int b = 0; b < source->order(); b++)
      if (image[source->mul((Elt)a, (Elt)b)] !=
          target->mul(image[a], image[b]))
        return false;
  return true;
}

bool AutomorphismSet::verify() const {
  if (!group) return false;
  int n = group->order();
  for (const Perm& f : gens) {
    if ((int)f.size() != n || f[0] != 0) return false;
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; i++) {
      if (seen[f[i]]) return false;
      seen[f[i]] = 1;
    }
    for (int a = 0; a < n; a++)
      for (int b = 0; b < n; b++)
        if (f[group->mul((Elt)a, (Elt)b)] != group->mul(f[a], f[b]))
          return false;
  }
  return true;
}

const std::vector<Perm>& AutomorphismSet::all() const {
  if (!all_.empty()) return all_;
  int n = group->order();
  std::map<Perm, int> seen;
  std::vector<Perm> out;
  out.push_back(perm_identity(n));
  seen[out[0]] = 0;
  size_t fi = 0;
  while (fi < out.size()) {
    Perm cur = out[fi++];
    for (const Perm& g : gens) {
      Perm nx = perm_compose(g, cur);
      if (!seen.count(nx)) {
        seen[nx] = (int)out.size();
        out.push_back(std::move(nx));
      }
    }
  }
  all_ = std::move(out);
  return all_;
}

const std::vector<Elt>& AutomorphismSet::orbit_min_of_element() const {
  if (!orbit_min_.empty()) return orbit_min_;
  int n = group->order();
  std::vector<Elt> mn(n);
  for (int i = 0; i < n; i++) mn[i] = (Elt)i;
  // orbit of each element under generator closure; propagate minima
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; i++)
      for (const Perm& g : gens) {
        Elt j = g[i];
        Elt m = std::min(mn[i], mn[j]);
        if (mn[i] != m || mn[j] != m) {
          mn[i] = mn[j] = m;
          changed = true;
        }
      }
  }
  orbit_min_ = std::move(mn);
  return orbit_min_;
}

Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& f, const Perm& g) {
  Perm r(f.size());
  for (size_t i = 0; i < f.size(); i++) r[i] = f[g[i]];
  return r;
}

Perm perm_inverse(const Perm& f) {
  Perm r(f.size());
  for (size_t i = 0; i < f.size(); i++) r[f[i]] = (Elt)i;
  return r;
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  int na = A.order(), nb = B.order(), n = na * nb;
  if (n > 65535) throw std::invalid_argument("product too large");
  std::vector<Elt> table((size_t)n * n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      int a = A.mul((Elt)(i / nb), (Elt)(j / nb));
      int b = B.mul((Elt)(i % nb), (Elt)(j % nb));
      table[(size_t)i * n + j] = (Elt)(a * nb + b);
    }
  std::vector<std::string> names(n);
  for (int i = 0; i < n; i++)
    names[i] = "(" + A.name((Elt)(i / nb)) + "," + B.name((Elt)(i % nb)) + ")";
  std::vector<Elt> gens;
  for (Elt g : A.generators()) gens.push_back((Elt)(g * nb));
  for (Elt g : B.generators()) gens.push_back(g);
  return FiniteGroup(std::move(table), std::move(names), std::move(gens));
}

}  // namespace rhm
