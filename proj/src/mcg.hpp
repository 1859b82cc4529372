#pragma once
// Mapping class group action on the genus-g surface group
//   pi_1 = < a_1, b_1, ..., a_g, b_g | prod [a_i, b_i] >
// via explicit Dehn twist substitution rules (Humphries-size generating set,
// 2g+1 twists for g >= 2), random walks, and the induced action on
// homomorphism tuples into a finite group. Generator indexing: a_i has
// 0-based index 2i, b_i has 2i+1; words use signed letters +-(index+1).
// Convention: the b_i are the meridians (bound disks in the fixed
// handlebody), the a_i are longitudes.
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "group.hpp"
#include "words.hpp"

namespace rhm {

inline int gen_a(int i) { return 2 * i; }
inline int gen_b(int i) { return 2 * i + 1; }

Word surface_relator(int g);
std::vector<Word> identity_endo(int g);

using IntMat = std::vector<std::vector<long>>;

struct MappingClassGen {
  std::string name;
  std::vector<Word> images;   // images of the 2g generators
  std::vector<Word> inverse;  // images of the inverse twist
  IntMat matrix;              // induced map on H_1; column j = image of gen j
  IntMat matrix_inv;
};

// the 2g+1 twist generators alpha_1..alpha_g (b_i -> b_i a_i), beta_1, beta_2
// (a_i -> a_i b_i), gamma_1..gamma_{g-1} (connecting twists). Every twist
// fixes the relator word exactly and its matrix is a symplectic transvection
// (all verified at construction; mod-2/3/5 closures checked in tests).
const std::vector<MappingClassGen>& humphries_generators(int g);

// an alternative (redundant) generating set: the standard twists plus
// composites of adjacent pairs; used to check that walk statistics do not
// depend on the choice of generators. Composites are relator-fixing and
// symplectic but not transvections.
std::vector<MappingClassGen> composite_generators(int g);

// endomorphism composition: (outer after inner)(x) = outer(inner(x))
std::vector<Word> compose_endo(const std::vector<Word>& outer,
                               const std::vector<Word>& inner);
bool fixes_relator(const std::vector<Word>& images, int g);

// 2g x 2g integer matrix of the induced map on H_1; column j = image of gen j
IntMat homology_matrix(const std::vector<Word>& images);
// does M preserve the standard symplectic form (blocks [[0,1],[-1,0]] per
// handle in the a_1,b_1,...,a_g,b_g basis)?
bool is_symplectic(const IntMat& M);

// evaluate a word at tuple values (vals[k] = image of generator k)
Elt evaluate_word(const FiniteGroup& G, const Word& w,
                  const std::vector<Elt>& vals);
// push a tuple through an endomorphism: out[k] = eval(images[k]);
// realizes the mapping-class action on homomorphisms by precomposition
std::vector<Elt> apply_gen(const FiniteGroup& G,
                           const std::vector<Word>& images,
                           const std::vector<Elt>& tuple);

// the tuple's homomorphism extends over the handlebody: all b_i map to the
// identity and the a_i images generate
bool extends_over_handlebody(const FiniteGroup& G,
                             const std::vector<Elt>& tuple);

// random walk on the twist generators, their inverses, and a hold step
// (hold probability 1/(2*(2g+1)+1) by default: uniform over all options)
class TwistWalk {
 public:
  TwistWalk(int genus, uint64_t seed, uint64_t stream = 0);
  // walk over an explicit generator list (must outlive the walk)
  TwistWalk(int genus, const std::vector<MappingClassGen>* gens, uint64_t seed,
            uint64_t stream = 0);
  // sample the next step and return its substitution (identity on hold)
  const std::vector<Word>& step();
  int genus() const { return g_; }
  bool last_was_hold() const { return last_ < 0; }
  // encoded index of the last step: 2k = twist k, 2k+1 = inverse of twist k,
  // -1 = hold
  int last_step() const { return last_; }
  // matrix of the last step (identity for hold)
  const IntMat& last_matrix() const;

 private:
  int g_;
  int last_ = -1;  // 2k = twist k, 2k+1 = inverse of twist k, -1 = hold
  const std::vector<MappingClassGen>* gens_;
  std::vector<Word> identity_;
  IntMat identity_matrix_;
  std::mt19937_64 rng_;
};

}  // namespace rhm
