#pragma once
// Dense finite group: index-based elements with multiplication/inverse tables,
// conjugacy classes, derived subgroup, homomorphisms, automorphism sets.
// Element 0 is always the identity; the construction order of elements fixes
// the lexicographic order used for canonicalization downstream.
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rhm {

using Elt = uint16_t;
using Perm = std::vector<Elt>;  // permutation of element indices

class FiniteGroup {
 public:
  // table: row-major n x n index table, table[i*n+j] = i*j; index 0 must be
  // the identity. gens: a generating set (defaults to all elements).
  FiniteGroup(std::vector<Elt> table, std::vector<std::string> names = {},
              std::vector<Elt> gens = {});

  int order() const { return n_; }
  Elt identity() const { return 0; }
  Elt mul(Elt a, Elt b) const { return table_[(size_t)a * n_ + b]; }
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt g, Elt x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  Elt commutator(Elt g, Elt h) const {
    return mul(mul(g, h), mul(inv(g), inv(h)));
  }
  int order_of(Elt a) const { return elt_order_[a]; }
  const std::string& name(Elt a) const { return names_[a]; }
  const std::vector<Elt>& generators() const { return gens_; }

  int class_of(Elt a) const { return class_idx_[a]; }
  int num_classes() const { return (int)class_reps_.size(); }
  Elt class_rep(int c) const { return class_reps_[c]; }
  int class_size(int c) const { return class_size_[c]; }

  const std::vector<Elt>& derived_subgroup() const { return derived_; }
  bool in_derived(Elt a) const { return in_derived_[a]; }

  // smallest subgroup containing S; if cap > 0, stops (returning a partial,
  // oversized set) as soon as the closure exceeds cap elements.
  std::vector<Elt> subgroup_closure(const std::vector<Elt>& S,
                                    int cap = 0) const;
  bool generates(const std::vector<Elt>& S) const;

  // counts[c] = #{(a,b) : [a,b] = c}; class function.
  std::vector<uint64_t> commutator_fiber_counts() const;
  // lists[c] = all pairs (a,b) with [a,b] = c, packed as a*n+b.
  std::vector<std::vector<uint32_t>> commutator_fiber_pairs() const;
  // exact number of 2g-tuples with prod [a_i,b_i] = 1 (not nec. surjective);
  // g-fold convolution of the commutator fiber distribution. Result as a
  // decimal string to avoid overflow for larger groups.
  std::string fold_convolution_count(int genus) const;
  // same value when it fits in unsigned 64-bit (throws otherwise)
  uint64_t fold_convolution_count_u64(int genus) const;

 private:
  int n_;
  std::vector<Elt> table_, inv_, gens_;
  std::vector<std::string> names_;
  std::vector<int> elt_order_, class_idx_, class_size_;
  std::vector<Elt> class_reps_;
  std::vector<Elt> derived_;
  std::vector<char> in_derived_;
};

struct GroupHom {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<Elt> image;  // image[i] in target

  bool verify() const;  // multiplicative, identity to identity
  Elt operator()(Elt a) const { return image[a]; }
};

struct AutomorphismSet {
  const FiniteGroup* group = nullptr;
  std::vector<Perm> gens;       // each a bijective homomorphism
  bool full = false;            // gens generate all of Aut(Q)
  uint64_t aut_order = 0;       // |Aut(Q)| when known (0 = unknown)
  uint64_t out_order = 0;       // |Out(Q)| when known

  bool verify() const;  // every generator is an automorphism
  // all automorphisms generated by gens (closure under composition)
  const std::vector<Perm>& all() const;
  // orbit representatives (lex-minimal element of each orbit) of the action
  // on elements, and for each element the minimum of its orbit.
  const std::vector<Elt>& orbit_min_of_element() const;

 private:
  mutable std::vector<Perm> all_;
  mutable std::vector<Elt> orbit_min_;
};

// identity permutation / composition helpers
Perm perm_identity(int n);
Perm perm_compose(const Perm& f, const Perm& g);  // (f o g)(x) = f(g(x))
Perm perm_inverse(const Perm& f);

// direct product Q1 x Q2 as a dense group (element index = i1*|Q2|+i2)
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);

}  // namespace rhm
