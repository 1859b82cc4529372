#include "coverstats.hpp"

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rhm {

namespace {

mpq_class hyper_empty_prob(uint64_t a, uint64_t e) {
  // probability that a random e-subset of an a-set misses a fixed e-subset:
  // C(a-e, e) / C(a, e); zero when e > a - e
  if (e == 0) return 1;
  if (e > a) throw std::invalid_argument("|E| exceeds orbit size");
  if (e > a - e) return 0;
  mpz_class num, den;
  mpz_bin_uiui(num.get_mpz_t(), (unsigned long)(a - e), (unsigned long)e);
  mpz_bin_uiui(den.get_mpz_t(), (unsigned long)a, (unsigned long)e);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

ExactP to_exact(const mpq_class& q) {
  ExactP p;
  p.value = q.get_d();
  p.rational = q.get_str();
  return p;
}

double norm_ci_half(double p, uint64_t n) {
  return n ? 1.959963985 * std::sqrt(p * (1 - p) / (double)n) : 0;
}

void finish_dist(QuotientDistribution& d) {
  double s = 0;
  for (size_t k = 0; k < d.histogram.size(); k++)
    s += (double)k * (double)d.histogram[k];
  d.mean = d.samples ? s / (double)d.samples : 0;
  d.poisson_mean = d.mean;
}

// shared walk evolution driver: counts, per epoch, how many evolved tuples
// satisfy `hit`; returns the filled report
template <class HitFn>
ExperimentReport walk_experiment(const Canonicalizer& C, int g,
                                 uint64_t length, uint64_t epochs,
                                 uint64_t seed,
                                 const std::vector<MappingClassGen>* gens,
                                 uint64_t burn_in, uint64_t min_spacing,
                                 const char* gen_set_name, HitFn hit) {
  if (epochs == 0) throw std::invalid_argument("at least one epoch required");
  const FiniteGroup& G = C.group();
  auto t0 = std::chrono::steady_clock::now();
  ClassSet E = enumerate_E(C, g);
  if (E.size() == 0) throw std::invalid_argument("E is empty for this group");
  uint64_t spacing = min_spacing;
  if (length > burn_in && (length - burn_in) / epochs > spacing)
    spacing = (length - burn_in) / epochs;
  ExperimentReport rep;
  rep.config = {C.built().spec.format(), g, length, epochs, seed,
                gen_set_name};
  rep.burn_in = burn_in;
  rep.spacing = spacing;
  rep.dist.histogram.assign(E.size() + 1, 0);
  std::vector<Tuple> cur = E.reps;
  TwistWalk walk(g, gens ? gens : &humphries_generators(g), seed);
  uint64_t hits = 0;
  for (uint64_t t = 1; t <= length; t++) {
    const auto& sub = walk.step();
    if (!walk.last_was_hold())
      for (auto& tup : cur) tup = apply_gen(G, sub, tup);
    if (t > burn_in && (t - burn_in) % spacing == 0) {
      uint64_t count = 0;
      for (const auto& tup : cur)
        if (hit(E, tup)) count++;
      rep.dist.histogram[count]++;
      rep.dist.samples++;
      if (count > 0) hits++;
    }
  }
  if (rep.dist.samples == 0)
    throw std::invalid_argument("walk too short: no epochs after burn-in");
  finish_dist(rep.dist);
  rep.estimate = (double)hits / (double)rep.dist.samples;
  double h = norm_ci_half(rep.estimate, rep.dist.samples);
  rep.ci_low = rep.estimate - h;
  rep.ci_high = rep.estimate + h;
  rep.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rep;
}

}  // namespace

ExactP exact_p_from_orbits(const OrbitTable& ot) {
  mpq_class miss(1);
  for (const OrbitRow& r : ot.rows)
    if (r.e_count > 0) miss *= hyper_empty_prob(r.size, r.e_count);
  return to_exact(1 - miss);
}

ExactP exact_expected(const OrbitTable& ot) {
  mpq_class s(0);
  for (const OrbitRow& r : ot.rows) {
    if (r.e_count == 0) continue;
    mpq_class term(mpz_class((unsigned long)r.e_count) *
                       mpz_class((unsigned long)r.e_count),
                   mpz_class((unsigned long)r.size));
    term.canonicalize();
    s += term;
  }
  return to_exact(s);
}

ExactP exact_p_small_group(const Canonicalizer& C, int g, uint64_t group_cap) {
  const FiniteGroup& G = C.group();
  EnumMethod method =
      std::pow((double)G.order(), 2 * g) <= 1e8 ? EnumMethod::Brute
                                                : EnumMethod::Fiber;
  AEnumeration A = enumerate_A(C, g, method);
  size_t m = A.classes.size();
  std::vector<char> in_e(m, 0);
  for (size_t i = 0; i < m; i++)
    in_e[i] = extends_over_handlebody(G, A.classes.reps[i]);
  auto gens = orbit_action(C, A.classes);
  // closure of the permutation group generated by the twist action
  std::vector<uint32_t> id(m);
  for (uint32_t i = 0; i < m; i++) id[i] = i;
  std::map<std::vector<uint32_t>, uint32_t> seen;
  std::vector<std::vector<uint32_t>> frontier{id};
  seen.emplace(id, 0);
  size_t fi = 0;
  while (fi < frontier.size()) {
    std::vector<uint32_t> x = frontier[fi++];
    for (const auto& gperm : gens) {
      std::vector<uint32_t> y(m);
      for (size_t i = 0; i < m; i++) y[i] = gperm[x[i]];
      if (seen.emplace(y, (uint32_t)seen.size()).second) {
        if (seen.size() > group_cap)
          throw std::invalid_argument("image group exceeds cap");
        frontier.push_back(std::move(y));
      }
    }
  }
  uint64_t good = 0;
  for (const auto& [phi, idx] : seen) {
    bool meets = false;
    for (size_t i = 0; i < m && !meets; i++)
      if (in_e[i] && in_e[phi[i]]) meets = true;
    if (meets) good++;
  }
  mpq_class p(mpz_class((unsigned long)good),
              mpz_class((unsigned long)seen.size()));
  p.canonicalize();
  return to_exact(p);
}

ExperimentReport monte_carlo_p(const Canonicalizer& C, int g, uint64_t length,
                               uint64_t epochs, uint64_t seed,
                               const std::vector<MappingClassGen>* gens,
                               uint64_t burn_in, uint64_t min_spacing) {
  const FiniteGroup& G = C.group();
  return walk_experiment(
      C, g, length, epochs, seed, gens, burn_in, min_spacing,
      gens ? "custom" : "humphries-2g+1",
      [&](const ClassSet& E, const Tuple& tup) {
        // extension requires trivial meridians; confirm via the class key
        for (size_t i = 1; i < tup.size(); i += 2)
          if (tup[i] != G.identity()) return false;
        return E.contains(C.key(C.canonical(tup)));
      });
}

ExperimentReport tunnel_one_experiment(const Canonicalizer& C, uint64_t length,
                                       uint64_t epochs, uint64_t seed) {
  const FiniteGroup& G = C.group();
  return walk_experiment(
      C, 2, length, epochs, seed, nullptr, 1000, 50, "humphries-2g+1",
      [&](const ClassSet&, const Tuple& tup) {
        // the evolved b_1-coordinate is the attaching word's image in the
        // handlebody quotient; the class kills the curve when it is trivial
        return tup[1] == G.identity();
      });
}

LimitProb limit_probability(const std::string& spec) {
  GroupMeta m = group_meta(spec);
  if (!m.simple)
    throw std::invalid_argument("Poisson limit needs a simple group: " + spec);
  if (!m.h2_order || !m.out_order)
    throw std::invalid_argument("missing H2/Out metadata for " + spec);
  LimitProb lp;
  lp.mu = (double)m.h2_order / (double)m.out_order;
  lp.p_inf = 1 - std::exp(-lp.mu);
  return lp;
}

double sequence_probability(const std::vector<std::string>& specs,
                            uint64_t k) {
  double total = 0;
  for (const auto& s : specs) total += limit_probability(s).mu;
  if (k == 0) return 1;
  // P(Poisson(total) >= k) = 1 - sum_{i<k} e^-M M^i / i!
  double term = std::exp(-total), cum = 0;
  for (uint64_t i = 0; i < k; i++) {
    cum += term;
    term *= total / (double)(i + 1);
  }
  return 1 - cum;
}

double expectation_limit(const std::string& spec) {
  GroupMeta m = group_meta(spec);
  uint64_t qprime, aut = m.aut_order;
  if (m.simple) {
    qprime = m.order;
  } else {
    const BuiltGroup& bg = build_group(spec);
    qprime = (uint64_t)bg.G->derived_subgroup().size();
    if (!aut) aut = bg.meta.aut_order;
  }
  if (!aut || !m.h2_order)
    throw std::invalid_argument("missing Aut/H2 metadata for " + spec);
  return (double)qprime * (double)m.h2_order / (double)aut;
}

}  // namespace rhm
