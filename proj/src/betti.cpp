#include "betti.hpp"

#include <map>
#include <stdexcept>

#include "rng.hpp"

namespace rhm {

FinitePresentation heegaard_presentation(const std::vector<Word>& images,
                                         int g, size_t cap) {
  if ((int)images.size() != 2 * g) throw std::invalid_argument("bad images");
  FinitePresentation pres;
  pres.g = g;
  for (int i = 0; i < g; i++) {
    const Word& w = images[gen_b(i)];
    if (w.size() > cap) throw std::length_error("relator exceeds word cap");
    Word r;
    for (int s : w) {
      int k = std::abs(s) - 1;
      if (k % 2 == 1) continue;  // drop b-letters
      r.push_back(s > 0 ? k / 2 + 1 : -(k / 2 + 1));
    }
    pres.relators.push_back(reduced(r));
  }
  return pres;
}

bool extends_over_manifold(const FinitePresentation& pres,
                           const FiniteGroup& Q, const std::vector<Elt>& f) {
  for (const Word& r : pres.relators) {
    Elt v = Q.identity();
    for (int s : r) {
      int j = std::abs(s) - 1;
      v = Q.mul(v, s > 0 ? f[j] : Q.inv(f[j]));
    }
    if (v != Q.identity()) return false;
  }
  return true;
}

CoverHomology cover_betti(const FinitePresentation& pres,
                          const FiniteGroup& Q, const std::vector<Elt>& f) {
  int g = pres.g, nq = Q.order();
  if ((int)f.size() != g) throw std::invalid_argument("bad f");
  if (!Q.generates(f)) throw std::invalid_argument("f not surjective");
  if (!extends_over_manifold(pres, Q, f))
    throw std::invalid_argument("f does not kill the relators");
  // Schreier generators s(q, j) = t_q a_j t_{q f_j}^{-1}, cosets = Q elements;
  // generators on spanning-tree edges of the coset graph are trivial
  auto sidx = [&](int q, int j) { return q * g + j; };
  std::vector<char> tree(nq * g, 0);
  std::vector<char> reached(nq, 0);
  reached[Q.identity()] = 1;
  std::vector<Elt> queue{Q.identity()};
  for (size_t h = 0; h < queue.size(); h++) {
    Elt q = queue[h];
    for (int j = 0; j < g; j++) {
      Elt q2 = Q.mul(q, f[j]);
      if (!reached[q2]) {
        reached[q2] = 1;
        tree[sidx(q, j)] = 1;
        queue.push_back(q2);
      }
    }
  }
  // rewrite each relator at each coset; abelianized exponent sums
  ZMat M(nq * g);
  for (auto& row : M) row.assign(pres.relators.size() * nq, 0);
  size_t col = 0;
  for (const Word& r : pres.relators)
    for (int q0 = 0; q0 < nq; q0++, col++) {
      Elt cur = (Elt)q0;
      for (int s : r) {
        int j = std::abs(s) - 1;
        if (s > 0) {
          M[sidx(cur, j)][col] += 1;
          cur = Q.mul(cur, f[j]);
        } else {
          cur = Q.mul(cur, Q.inv(f[j]));
          M[sidx(cur, j)][col] -= 1;
        }
      }
    }
  // delete rows of tree generators (identity elements of the kernel)
  ZMat M2;
  for (int k = 0; k < nq * g; k++)
    if (!tree[k]) M2.push_back(M[k]);
  CoverHomology out;
  out.schreier_generators = (int)M2.size();  // = nq*g - (nq-1)
  out.h1 = cokernel(M2);
  out.beta1 = out.h1.free_rank;
  return out;
}

std::vector<std::vector<Elt>> generating_tuples(const FiniteGroup& Q, int g) {
  std::vector<std::vector<Elt>> out;
  std::vector<Elt> t(g, Q.identity());
  while (true) {
    if (Q.generates(t)) out.push_back(t);
    int k = 0;
    while (k < g && ++t[k] == Q.order()) t[k++] = Q.identity();
    if (k == g) break;
  }
  return out;
}

FoxWalker::FoxWalker(int genus, const FiniteGroup& Q,
                     std::vector<std::vector<Elt>> candidates, int64_t prime)
    : g_(genus), Q_(Q), cands_(std::move(candidates)), p_(prime) {
  int nq = Q_.order();
  for (const auto& f : cands_) {
    if ((int)f.size() != g_) throw std::invalid_argument("bad candidate");
    std::vector<Elt> v(2 * g_);
    std::vector<int64_t> J((size_t)2 * g_ * g_ * nq, 0);
    for (int i = 0; i < g_; i++) {
      v[gen_a(i)] = f[i];
      v[gen_b(i)] = Q_.identity();
      // D_{a_i} a_i = 1 in the group ring
      J[((size_t)gen_a(i) * g_ + i) * nq + Q_.identity()] = 1;
    }
    val_.push_back(std::move(v));
    jac_.push_back(std::move(J));
  }
  scratch_.assign((size_t)2 * g_ * g_ * nq, 0);
  vscratch_.assign(2 * g_, Q_.identity());
}

void FoxWalker::apply(const std::vector<Word>& step_images) {
  int nq = Q_.order();
  size_t row = (size_t)g_ * nq;  // one generator's block of g columns
  for (size_t c = 0; c < cands_.size(); c++) {
    auto& v = val_[c];
    auto& J = jac_[c];
    std::fill(scratch_.begin(), scratch_.end(), 0);
    // chain rule for (pi Phi) after sigma: accumulate u * J[letter] along a
    // running prefix value u of the substituted word
    for (int k = 0; k < 2 * g_; k++) {
      const Word& w = step_images[k];
      int64_t* dst = scratch_.data() + k * row;
      Elt u = Q_.identity();
      for (int s : w) {
        int y = std::abs(s) - 1;
        const int64_t* src = J.data() + y * row;
        if (s > 0) {
          for (int j = 0; j < g_; j++)
            for (int q = 0; q < nq; q++)
              if (src[j * nq + q]) {
                int64_t& slot = dst[j * nq + Q_.mul(u, (Elt)q)];
                slot = (slot + src[j * nq + q]) % p_;
              }
          u = Q_.mul(u, v[y]);
        } else {
          u = Q_.mul(u, Q_.inv(v[y]));
          for (int j = 0; j < g_; j++)
            for (int q = 0; q < nq; q++)
              if (src[j * nq + q]) {
                int64_t& slot = dst[j * nq + Q_.mul(u, (Elt)q)];
                slot = (slot - src[j * nq + q] + p_) % p_;
              }
        }
      }
      vscratch_[k] = u;
    }
    std::swap(J, scratch_);
    std::swap(v, vscratch_);
  }
}

Elt FoxWalker::relator_image(size_t c, int i) const {
  return val_[c][gen_b(i)];
}

bool FoxWalker::extends(size_t c) const {
  for (int i = 0; i < g_; i++)
    if (val_[c][gen_b(i)] != Q_.identity()) return false;
  return true;
}

int FoxWalker::beta1(size_t c) const {
  if (!extends(c)) throw std::logic_error("candidate does not extend");
  int nq = Q_.order();
  // expand the g x g group-ring Jacobian of the relators into its left
  // regular representation and take the rank mod p
  std::vector<std::vector<int64_t>> M(g_ * nq,
                                      std::vector<int64_t>(g_ * nq, 0));
  for (int i = 0; i < g_; i++)
    for (int j = 0; j < g_; j++) {
      const int64_t* cvec =
          jac_[c].data() + ((size_t)gen_b(i) * g_ + j) * nq;
      for (int u = 0; u < nq; u++)
        for (int w = 0; w < nq; w++)
          M[i * nq + u][j * nq + w] = cvec[Q_.mul((Elt)u, Q_.inv((Elt)w))];
    }
  int rank = rank_mod_p(M, p_);
  return g_ * nq - (nq - 1) - rank;
}

std::vector<BettiTrendPoint> betti_trend_experiment(
    const FiniteGroup& Q, int genus, const std::vector<uint64_t>& lengths,
    uint64_t extending_target, uint64_t seed) {
  auto cands = generating_tuples(Q, genus);
  std::vector<BettiTrendPoint> out;
  uint64_t stream = 0xbe771;
  for (uint64_t L : lengths) {
    BettiTrendPoint pt;
    pt.length = L;
    while (pt.extending < extending_target) {
      TwistWalk walk(genus, seed, stream++);
      FoxWalker fox(genus, Q, cands);
      for (uint64_t t = 0; t < L; t++) {
        const std::vector<Word>& img = walk.step();
        if (!walk.last_was_hold()) fox.apply(img);
      }
      pt.walks++;
      for (size_t c = 0; c < fox.candidate_count(); c++) {
        if (!fox.extends(c)) continue;
        pt.extending++;
        if (fox.beta1(c) > 0) pt.positive++;
      }
    }
    pt.freq = pt.extending ? (double)pt.positive / pt.extending : 0;
    out.push_back(pt);
  }
  return out;
}

}  // namespace rhm
