#pragma once
// First Betti numbers of finite abelian covers of Heegaard-split manifolds.
// The Heegaard presentation of pi_1(N_phi) has generators a_1..a_g and
// relators the b-images of the gluing map projected to the free group on the
// a_i. Covers are handled two ways: explicit Schreier coset rewriting plus
// Smith normal form (short walks, exact torsion), and an incrementally
// maintained Fox-derivative Jacobian over F_p[Q] (long walks, beta_1 only).
#include <cstdint>
#include <string>
#include <vector>

#include "mcg.hpp"
#include "snf.hpp"

namespace rhm {

struct FinitePresentation {
  int g = 0;
  std::vector<Word> relators;  // words in letters +-1..+-g (the a_i)
};

// compose the walk's substitution images and project the b-images; throws
// std::length_error when a relator exceeds the word-length cap
FinitePresentation heegaard_presentation(const std::vector<Word>& images,
                                         int g, size_t cap = 1000000);

struct CoverHomology {
  AbelianGroupDesc h1;
  int beta1 = 0;
  int schreier_generators = 0;  // |Q| g - |Q| + 1 after tree reduction
};
// H_1 of the Q-cover given by f (images of the a_i; must kill all relators
// and generate Q), by Schreier rewriting of the relators at every coset
CoverHomology cover_betti(const FinitePresentation& pres,
                          const FiniteGroup& Q, const std::vector<Elt>& f);

// does f extend over the manifold (all relators map to the identity)?
bool extends_over_manifold(const FinitePresentation& pres,
                           const FiniteGroup& Q, const std::vector<Elt>& f);

// Fox-derivative Jacobian of the projected b-images, evaluated in F_p[Q]
// through each candidate tuple f, maintained incrementally along a twist
// walk. beta_1 computed mod a large prime (certifies beta_1 = 0; a rank drop
// special to the chosen prime is the only false-positive source).
class FoxWalker {
 public:
  FoxWalker(int genus, const FiniteGroup& Q,
            std::vector<std::vector<Elt>> candidates,
            int64_t prime = 2147483629);
  void apply(const std::vector<Word>& step_images);
  size_t candidate_count() const { return cands_.size(); }
  const std::vector<Elt>& candidate(size_t c) const { return cands_[c]; }
  bool extends(size_t c) const;
  int beta1(size_t c) const;  // requires extends(c)
  // relator image of b_i under candidate c (identity iff killed)
  Elt relator_image(size_t c, int i) const;

 private:
  int g_;
  const FiniteGroup& Q_;
  std::vector<std::vector<Elt>> cands_;
  int64_t p_;
  // per candidate: values v[2g] in Q and Jacobian J[2g][g] in F_p[Q],
  // flattened as jac_[c][(k*g + j)*|Q| + q]
  std::vector<std::vector<Elt>> val_;
  std::vector<std::vector<int64_t>> jac_;
  std::vector<int64_t> scratch_;
  std::vector<Elt> vscratch_;
};

struct BettiTrendPoint {
  uint64_t length = 0;
  uint64_t walks = 0;        // walks sampled
  uint64_t extending = 0;    // extending (walk, f) pairs collected
  uint64_t positive = 0;     // of those, beta_1 > 0
  double freq = 0;
};
// frequency of beta_1 > 0 among extending Q-covers at each walk length,
// collecting at least `extending_target` extending pairs per length
std::vector<BettiTrendPoint> betti_trend_experiment(
    const FiniteGroup& Q, int genus, const std::vector<uint64_t>& lengths,
    uint64_t extending_target, uint64_t seed);

// all generating g-tuples in an abelian group Q (candidate epimorphisms)
std::vector<std::vector<Elt>> generating_tuples(const FiniteGroup& Q, int g);

}  // namespace rhm
