#pragma once
// Cover-counting statistics: exact probabilities p(Q,g) from orbit data or
// by full image-group averaging, Monte Carlo estimates from twist walks,
// Poisson limits, expected counts, multi-group sequences, and the
// tunnel-number-one (single 2-handle) experiment.
#include <cstdint>
#include <string>
#include <vector>

#include "orbits.hpp"

namespace rhm {

// exact rational carried alongside its double value
struct ExactP {
  double value = 0;
  std::string rational;  // "num/den" (reduced)
};

struct QuotientDistribution {
  std::vector<uint64_t> histogram;  // histogram[k] = epochs with k covers
  uint64_t samples = 0;
  double mean = 0;
  double poisson_mean = 0;  // MLE for a Poisson fit (= mean)
};

struct RunConfig {
  std::string group;
  int genus = 0;
  uint64_t length = 0;  // total walk steps
  uint64_t epochs = 0;  // requested sample epochs
  uint64_t seed = 0;
  std::string generator_set;
};

struct ExperimentReport {
  RunConfig config;
  double estimate = 0;
  double ci_low = 0, ci_high = 0;  // 95% normal-approximation interval
  QuotientDistribution dist;
  uint64_t burn_in = 0, spacing = 0;
  double wall_seconds = 0;
};

// 1 - prod_i C(|A_i|-|E_i|, |E_i|) / C(|A_i|, |E_i|) over orbits meeting E
// (alternating-model mixing); exact hypergeometric, so an orbit with
// |E_i| > |A_i| - |E_i| contributes probability 1
ExactP exact_p_from_orbits(const OrbitTable& ot);

// sum_i |E_i|^2 / |A_i| (expected number of covers in the limit model)
ExactP exact_expected(const OrbitTable& ot);

// exact p(Q,g) by averaging over the full image group of the twist action on
// the classes of A (e.g. Sp(4,F_2), 720 elements, for Q = Z/2): the fraction
// of group elements phi with phi(E) meeting E
ExactP exact_p_small_group(const Canonicalizer& C, int g,
                           uint64_t group_cap = 200000);

// evolve every E-class representative under one shared twist walk; at sample
// epochs count how many evolved tuples still extend over the handlebody.
// estimate = fraction of epochs with at least one extension (p(Q,g)).
ExperimentReport monte_carlo_p(const Canonicalizer& C, int g, uint64_t length,
                               uint64_t epochs, uint64_t seed,
                               const std::vector<MappingClassGen>* gens =
                                   nullptr,
                               uint64_t burn_in = 1000,
                               uint64_t min_spacing = 50);

struct LimitProb {
  double mu = 0;     // |H2(Q)| / |Out(Q)|
  double p_inf = 0;  // 1 - exp(-mu)
};
// Poisson limit for simple non-abelian Q (throws otherwise)
LimitProb limit_probability(const std::string& spec);

// P(Poisson(sum of mu_i) >= k) over a list of simple groups
double sequence_probability(const std::vector<std::string>& specs, uint64_t k);

// limiting expected number of covers: |Q'| * |H2(Q)| / |Aut(Q)|
double expectation_limit(const std::string& spec);

// genus-2 handlebody plus one 2-handle along the evolved curve phi(b_1):
// per epoch, the b_1-coordinate of each evolved tuple is the image of the
// attaching word in the handlebody quotient; estimate = fraction of epochs
// where some generating-pair class kills it
ExperimentReport tunnel_one_experiment(const Canonicalizer& C, uint64_t length,
                                       uint64_t epochs, uint64_t seed);

}  // namespace rhm
