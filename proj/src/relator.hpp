#pragma once
// Geometry of the last two relators of a Heegaard presentation: primitive
// kernel densities on the torus, trace-zero involution solvers in PGL(2,q),
// the anti-fixed counting formula, the genus-2 image bound for standard-form
// words, the hyperelliptic symmetry solver, and torus image statistics.
// Genus-2 convention in this module matches the hyperelliptic setup:
// pi_1(Sigma_2) = <a,b,c,d | [a,b] = [c,d]>, tau(a) = a^-1, tau(b) = b^-1,
// tau(c) = x c^-1 x^-1, tau(d) = x d^-1 x^-1 with x = a^-1 b^-1 d c.
#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "fq.hpp"
#include "words.hpp"

namespace rhm {

// beta(p1^k1 ... pn^kn) = prod p_i^{k_i - 1} (p_i + 1)
mpz_class beta_value(uint64_t a);

struct KernelDensity {
  uint64_t primitive = 0, in_kernel = 0;
  double density = 0;
  bool exhaustive = false;
};
// proportion of primitive lattice points in the radius-r ball that lie in the
// kernel of Z^2 -> Z/a (b = 0) or Z^2 -> Z/a + Z/(a b) (b >= 1, the
// factor-preserving map). samples = 0 scans the ball exhaustively.
KernelDensity primitive_kernel_density(uint64_t a, uint64_t b, long radius,
                                       uint64_t samples = 0,
                                       uint64_t seed = 0);

struct InvolutionWitness {
  Mat2 T;
  Mat2 A, B;
  bool verified = false;  // T order 2 in PGL, TAT^-1 = A^-1, TBT^-1 = B^-1
};
// do A and B share a fixed point on P^1(F_q)?
bool common_fixed_point(const Mat2& A, const Mat2& B, const FqContext& F);
// order-2 T in PGL(2,q) reversing both A and B (A, B in SL(2,q), q odd, no
// common fixed point); solves tr(T) = tr(TA) = tr(TB) = 0
InvolutionWitness solve_reversing_involution(const Mat2& A, const Mat2& B,
                                             const FqContext& F);

// number of W in PSL(2,q) with U W U^-1 = W^-1, for U of order 2 in PGL(2,q):
// (q^2 + (2 eps_- - 1) q + 2 eps_+) / 2 with eps_+- = [+-det U is a square]
mpz_class count_anti_fixed(const Mat2& U, const FqContext& F);
// brute-force oracle over all of PSL(2,q)
mpz_class count_anti_fixed_brute(const Mat2& U, const FqContext& F);

// all elements of PSL(2,q) (projectively normalized det-1 classes)
std::vector<Mat2> psl2_elements(const FqContext& F);
// all elements of PGL(2,q)
std::vector<Mat2> pgl2_elements(const FqContext& F);
bool pgl_order_two(const Mat2& U, const FqContext& F);
Mat2 random_sl2(const FqContext& F, std::mt19937_64& rng);

mpz_class genus2_image_bound(int q);  // (q^2 + q + 2) / 2

// standard-form word in F_2 = <a, b>: tau(w) = s w^-1 s^-1 with
// s in {1, a^{+-1}, b^{+-1}}; returns the word and the signed letter s
// (0 for s = 1). Built as s^-1 * palindrome; the symmetry is re-verified.
Word standard_form_word(int s, int half_length, std::mt19937_64& rng);

// evaluate a word in letters +-1..+-4 -> A, B, C, D
Mat2 evaluate_mat_word(const Word& w, const std::vector<Mat2>& gens,
                       const FqContext& F);

// genus-2 surface tuple (A,B,C,D) in SL(2,q) with [A,B] = [C,D] and
// tr([A,B]) != 2 (irreducible on both halves)
std::vector<Mat2> random_irreducible_surface_tuple(const FqContext& F,
                                                   std::mt19937_64& rng);
// T in PGL(2,q) with T f T^-1 = f o tau: solves the six trace conditions
// tr(T) = tr(TA) = tr(TB) = tr(X^-1 T) = tr(X^-1 T C) = tr(X^-1 T D) = 0
// and verifies the conjugation identities projectively
Mat2 solve_hyperelliptic_T(const std::vector<Mat2>& f, const FqContext& F);

struct TorusImageRow {
  std::string type;  // abelian isomorphism type, e.g. "Z/5", "Z/2 x Z/2"
  uint64_t subgroup_order = 0;
  uint64_t count = 0;           // commuting pairs with this image type
  uint64_t non_bounding = 0;    // pairs whose H_2(Q) class is nonzero
  double freq = 0;
};
struct TorusImageDistribution {
  std::vector<TorusImageRow> rows;
  uint64_t total_pairs = 0;  // = #classes * |Q|
  bool h2_flag_valid = false;
};
// classify the subgroup generated by each commuting pair (x, y) in Q by
// abelian isomorphism type; exact enumeration over all commuting pairs.
// The H_2 obstruction is the commutator of Schur-cover lifts when a cover
// construction is available.
TorusImageDistribution torus_image_distribution(const BuiltGroup& Q);

}  // namespace rhm
