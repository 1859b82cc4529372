#pragma once
// Random balanced (deficiency-zero) presentations: uniform unreduced relator
// words over {a_1^{+-1}, ..., a_g^{+-1}, 1}, Monte Carlo and exact-binomial
// quotient probabilities onto finite groups, the expected-quotient table,
// abelianization matrices, and the p-Sylow distribution machinery for the
// abelianization of a random g-generator g-relator group.
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "coverstats.hpp"
#include "snf.hpp"

namespace rhm {

// unreduced relator: letters +-j for a_j^{+-1} (1-based), 0 for the identity
using RelatorWord = std::vector<int>;

RelatorWord random_relator(int g, uint64_t n, std::mt19937_64& rng);

// evaluate a relator at a g-tuple of images (identity letters skipped)
Elt evaluate_relator(const FiniteGroup& G, const RelatorWord& w,
                     const std::vector<Elt>& images);

struct BalancedExact {
  uint64_t classes = 0;  // |E'(Q,g)| = generating g-tuples mod Aut
  double mu = 0;         // classes / |Q|^g
  double p_binomial = 0;  // 1 - (1 - |Q|^-g)^classes
  double p_poisson = 0;   // 1 - exp(-mu)
};
// exact limiting (n -> infinity) probability that a g-generator, 1-relator-
// per-generator presentation has a Q-quotient; Q simple non-abelian
BalancedExact balanced_quotient_exact_binomial(const Canonicalizer& C, int g);

struct BalancedMC {
  uint64_t samples = 0, successes = 0;
  double estimate = 0, ci_low = 0, ci_high = 0;
  uint64_t n = 0;  // relator length
  int r = 0;       // relator count
  uint64_t seed = 0;
};
// fraction of random presentations (r independent length-n relators) where
// some generating class kills every relator
BalancedMC balanced_quotient_mc(const Canonicalizer& C, int g, int r,
                                uint64_t n, uint64_t samples, uint64_t seed);

struct BalancedTableRow {
  std::string name;
  uint64_t order = 0, gen_pairs = 0, out_order = 0;
  double exp_2gen = 0;  // gen_pairs / |Q|^2
  double exp_ngen = 0;  // 1 / |Aut(Q)|
  std::string source;   // "computed" or "table" (above the enumeration cap)
};
BalancedTableRow expected_table_row(const std::string& spec);

// g x g exponent-sum matrix: entry (i,j) = exponent sum of a_i in relator j
ZMat abelianization_matrix(const std::vector<RelatorWord>& relators, int g);

// probability that |det M_R|_p = p^-k for k = 0..kmax: series coefficients of
// prod_j (p^j - 1) / prod_j (p^j - t)
std::vector<ExactP> sylow_order_distribution(int g, int p, int kmax);

// isomorphism type of an abelian p-group as monomial exponents: exps[k-1] =
// exponent of t_k = number of layers i with rank(p^i A / p^{i+1} A) = k
using AbelianType = std::vector<int>;

// coefficient of the type's monomial in the AFP_g series (g <= 3), exact
ExactP afp_probability(int g, int p, const AbelianType& type);

// layered-rank chain simulation of p-Sylow types; returns type -> count
std::map<AbelianType, uint64_t> afp_simulate(int g, int p, uint64_t samples,
                                             std::mt19937_64& rng);

// probability that every finite abelian quotient is cyclic: product over
// primes of P(corank of a random g x g matrix over F_p <= 1); g = 0 is the
// g -> infinity sentinel
double all_cyclic_probability(int g);

}  // namespace rhm
