#pragma once
// Epimorphism spaces modulo Aut(Q): canonical forms, enumeration of the
// extending tuples E_g (trivial meridian part) and the full surface tuples
// A_g, mapping-class orbit decomposition, Schur homology classes,
// stabilization, transitivity checks, and joint-surjection tests.
//
// Tuples are flat element vectors. Surface tuples have arity 2g in the order
// a_1, b_1, ..., a_g, b_g and satisfy prod [a_i, b_i] = 1; free (handlebody)
// tuples have arity g. The canonical form of a tuple is the lexicographic
// minimum over its Aut(Q)-orbit in the fixed element order of the group.
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "catalog.hpp"
#include "group.hpp"
#include "mcg.hpp"

namespace rhm {

using Tuple = std::vector<Elt>;

// canonicalization with memoized per-element automorphism data: for each
// element x we store the automorphisms sending x to the minimum of its orbit,
// so canonical() only scans those instead of all of Aut(Q)
class Canonicalizer {
 public:
  explicit Canonicalizer(const BuiltGroup& bg);

  const FiniteGroup& group() const { return *bg_->G; }
  const BuiltGroup& built() const { return *bg_; }
  const std::vector<Perm>& auts() const { return *auts_; }

  Tuple canonical(const Tuple& t) const;
  // packed base-|Q| integer key; throws if |Q|^arity overflows 64 bits
  uint64_t key(const Tuple& t) const;
  Tuple from_key(uint64_t k, int arity) const;

  // indices (into auts()) of automorphisms fixing x, filtered from `within`
  // (empty `within` = all automorphisms)
  std::vector<uint32_t> stabilizer(Elt x,
                                   const std::vector<uint32_t>& within) const;
  // minimum of phi(x) over the listed automorphisms
  Elt min_image(Elt x, const std::vector<uint32_t>& within) const;

  Elt orbit_min(Elt x) const { return orbit_min_[x]; }

 private:
  const BuiltGroup* bg_;
  const std::vector<Perm>* auts_;
  std::vector<Elt> orbit_min_;
  std::vector<std::vector<uint32_t>> movers_;  // auts with phi(x) = orbit min
};

// a set of canonical classes with O(1) key lookup
struct ClassSet {
  int genus = 0;
  std::vector<Tuple> reps;                       // canonical representatives
  std::unordered_map<uint64_t, uint32_t> index;  // key(rep) -> position

  size_t size() const { return reps.size(); }
  bool contains(uint64_t k) const { return index.count(k) != 0; }
  void insert(const Canonicalizer& C, const Tuple& canonical_rep);
};

// all generating g-tuples modulo Aut(Q), realized as surface 2g-tuples with
// trivial b-parts; enumerated by staged orbit-minimum filtering (never
// materializes |Q|^g raw tuples). Throws if |Q|^g > 1e9.
ClassSet enumerate_E(const Canonicalizer& C, int g);

enum class EnumMethod { Brute, Fiber, OrbitBfs };

struct AEnumeration {
  ClassSet classes;
  // "exact" (brute/fiber), "reconciled" (orbit-bfs checked against the
  // Moebius count of surjective solutions), or "probabilistic (N probes)"
  std::string completeness;
};

// all surjective surface 2g-tuples modulo Aut(Q).
//   brute:     full |Q|^{2g} scan (cap 1e8)
//   fiber:     commutator-fiber join with staged canonical filtering (g = 2)
//   orbit-bfs: closure under the mapping-class generators from the E-classes
//              plus `probes` random relation tuples
AEnumeration enumerate_A(const Canonicalizer& C, int g, EnumMethod method,
                         uint64_t seed = 0, int probes = 200);

// uniform random solution of prod [a_i,b_i] = 1 (rejection sampling; not
// necessarily surjective)
Tuple random_relation_tuple(const FiniteGroup& G, int g, std::mt19937_64& rng);

struct OrbitRow {
  uint32_t orbit_id = 0;
  uint64_t size = 0;
  uint64_t e_count = 0;
  std::string h2_class;  // element index in H2, or "unavailable"
  Tuple rep;
};

struct OrbitTable {
  std::vector<OrbitRow> rows;
  std::vector<uint32_t> orbit_of;  // class position -> orbit_id

  std::string to_csv() const;  // orbit_id,size,e_count,h2_class
};

// partition of A into mapping-class orbits (union-find over the twist action)
// with E-intersection counts and, when a Schur cover is supplied, the common
// H2 class of each orbit
OrbitTable orbit_decomposition(const Canonicalizer& C, const ClassSet& A,
                               const SchurCoverData* cover = nullptr);

// permutation action of every signed twist generator on the classes of A;
// action[s][i] = class index of the image of class i under signed twist s
// (s = 2k for twist k, 2k+1 for its inverse)
std::vector<std::vector<uint32_t>> orbit_action(const Canonicalizer& C,
                                                const ClassSet& A);

// k-transitivity (k <= 2) of the twist action on one orbit, by closure on
// ordered distinct index pairs from a single seed pair
bool orbit_k_transitive(const std::vector<std::vector<uint32_t>>& action,
                        const std::vector<uint32_t>& members, int k);

// Schur homology class of a surface tuple: lift coordinates through the
// section and fold commutators in the cover; returns the index into
// cover.h2_elements. When rng is supplied each lift is multiplied by a random
// kernel element (the result must not change; used as a self-check).
int homology_class(const SchurCoverData& cover, const Tuple& t,
                   std::mt19937_64* rng = nullptr);

// extend by h trivial handles (arity 2g -> 2(g+h)); h = 0 is the identity
Tuple stabilize(const Tuple& t, int h);

// does the joint map (f1, f2) surject onto Q x Q? QQ must be
// direct_product(Q, Q) for the same Q both tuples map to.
bool hall_product_check(const FiniteGroup& Q, const FiniteGroup& QQ,
                        const Tuple& f1, const Tuple& f2);

// full subgroup lattice by incremental generation (closure of H + one
// element until stable); throws above the order cap
std::vector<std::vector<Elt>> subgroup_lattice(const FiniteGroup& G,
                                               int order_cap = 400);
// number of surjective surface 2g-tuples, by Moebius inversion over the
// subgroup lattice applied to the per-subgroup relation-solution counts
uint64_t surjective_relation_count(const FiniteGroup& G, int g,
                                   int order_cap = 400);

}  // namespace rhm
