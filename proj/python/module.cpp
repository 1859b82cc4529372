// Python bindings for the main library operations.  Everything is returned
// as plain dicts/lists of native types; exact big integers cross the boundary
// through their decimal strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <string>

#include "balanced.hpp"
#include "betti.hpp"
#include "catalog.hpp"
#include "complexes.hpp"
#include "coverstats.hpp"
#include "orbits.hpp"
#include "relator.hpp"
#include "rng.hpp"
#include "symp.hpp"

namespace py = pybind11;
using namespace rhm;

namespace {

const Canonicalizer& canon(const std::string& spec) {
  static std::map<std::string, std::unique_ptr<Canonicalizer>> cache;
  auto it = cache.find(spec);
  if (it == cache.end())
    it = cache.emplace(spec, std::make_unique<Canonicalizer>(build_group(spec)))
             .first;
  return *it->second;
}

py::object big(const mpz_class& z) {
  return py::module_::import("builtins").attr("int")(z.get_str());
}

py::dict meta_dict(const GroupMeta& m) {
  py::dict d;
  d["order"] = m.order;
  d["aut_order"] = m.aut_order;
  d["out_order"] = m.out_order;
  d["h2_order"] = m.h2_order;
  d["simple"] = m.simple;
  d["source"] = m.source;
  return d;
}

py::dict exactp_dict(const ExactP& e) {
  py::dict d;
  d["value"] = e.value;
  d["rational"] = e.rational;
  return d;
}

py::dict report_dict(const ExperimentReport& r) {
  py::dict d;
  d["estimate"] = r.estimate;
  d["ci_low"] = r.ci_low;
  d["ci_high"] = r.ci_high;
  d["samples"] = r.dist.samples;
  d["histogram"] = r.dist.histogram;
  d["mean_covers"] = r.dist.mean;
  d["burn_in"] = r.burn_in;
  d["spacing"] = r.spacing;
  d["wall_seconds"] = r.wall_seconds;
  return d;
}

EnumMethod parse_method(const std::string& m) {
  if (m == "brute") return EnumMethod::Brute;
  if (m == "fiber") return EnumMethod::Fiber;
  if (m == "orbit-bfs") return EnumMethod::OrbitBfs;
  throw std::invalid_argument("unknown enumeration method: " + m);
}

}  // namespace

PYBIND11_MODULE(_rhm, mod) {
  mod.doc() = "random Heegaard splittings, finite covers, and random complexes";

  mod.def("group_meta",
          [](const std::string& spec) { return meta_dict(group_meta(spec)); },
          py::arg("spec"));

  mod.def("schur_cover_available",
          [](const std::string& spec) { return schur_cover_available(spec); },
          py::arg("spec"));

  mod.def(
      "exact_p",
      [](const std::string& spec, int genus, const std::string& method) {
        const Canonicalizer& C = canon(spec);
        ClassSet E = enumerate_E(C, genus);
        AEnumeration A = enumerate_A(C, genus, parse_method(method));
        const SchurCoverData* cover = nullptr;
        SchurCoverData cov;
        if (schur_cover_available(spec)) {
          cov = schur_cover(spec);
          cover = &cov;
        }
        OrbitTable ot = orbit_decomposition(C, A.classes, cover);
        ExactP p = exact_p_from_orbits(ot);
        ExactP mu = exact_expected(ot);
        py::list orbits;
        for (const auto& row : ot.rows) {
          py::dict o;
          o["orbit_id"] = row.orbit_id;
          o["size"] = row.size;
          o["e_count"] = row.e_count;
          o["h2_class"] = row.h2_class;
          orbits.append(o);
        }
        py::dict d;
        d["p"] = exactp_dict(p);
        d["expectation"] = exactp_dict(mu);
        d["e_classes"] = E.size();
        d["a_classes"] = A.classes.size();
        d["completeness"] = A.completeness;
        d["orbits"] = orbits;
        return d;
      },
      py::arg("spec"), py::arg("genus") = 2, py::arg("method") = "fiber");

  mod.def(
      "exact_p_small_group",
      [](const std::string& spec, int genus) {
        return exactp_dict(exact_p_small_group(canon(spec), genus));
      },
      py::arg("spec"), py::arg("genus") = 2);

  mod.def(
      "monte_carlo_p",
      [](const std::string& spec, int genus, uint64_t length, uint64_t epochs,
         uint64_t seed) {
        return report_dict(monte_carlo_p(canon(spec), genus, length, epochs,
                                         seed));
      },
      py::arg("spec"), py::arg("genus") = 2, py::arg("length") = 100000,
      py::arg("epochs") = 2000, py::arg("seed") = 0);

  mod.def(
      "limit_probability",
      [](const std::string& spec) {
        LimitProb l = limit_probability(spec);
        py::dict d;
        d["mu"] = l.mu;
        d["p_inf"] = l.p_inf;
        return d;
      },
      py::arg("spec"));

  mod.def("expectation_limit",
          [](const std::string& spec) { return expectation_limit(spec); },
          py::arg("spec"));

  mod.def("sequence_probability",
          [](const std::vector<std::string>& specs, uint64_t k) {
            return sequence_probability(specs, k);
          },
          py::arg("specs"), py::arg("k") = 1);

  mod.def(
      "class_distribution",
      [](const std::string& spec, int genus, uint64_t samples, uint64_t seed) {
        const BuiltGroup& bg = build_group(spec);
        SchurCoverData cover = schur_cover(spec);
        auto rng = make_rng(seed, 0);
        std::map<Elt, uint64_t> hist;
        uint64_t taken = 0;
        while (taken < samples) {
          Tuple t = random_relation_tuple(*bg.G, genus, rng);
          if (!bg.G->generates(t)) continue;
          hist[homology_class(cover, t)]++;
          taken++;
        }
        py::dict counts;
        for (const auto& [cls, c] : hist) counts[py::int_((long)cls)] = c;
        py::dict d;
        d["samples"] = samples;
        d["h2_order"] = cover.h2_elements.size();
        d["counts"] = counts;
        return d;
      },
      py::arg("spec"), py::arg("genus") = 3, py::arg("samples") = 1000,
      py::arg("seed") = 0);

  mod.def(
      "balanced_exact",
      [](const std::string& spec, int genus) {
        BalancedExact b = balanced_quotient_exact_binomial(canon(spec), genus);
        py::dict d;
        d["classes"] = b.classes;
        d["mu"] = b.mu;
        d["p_binomial"] = b.p_binomial;
        d["p_poisson"] = b.p_poisson;
        return d;
      },
      py::arg("spec"), py::arg("genus") = 2);

  mod.def(
      "balanced_mc",
      [](const std::string& spec, int genus, int relators, uint64_t n,
         uint64_t samples, uint64_t seed) {
        BalancedMC b =
            balanced_quotient_mc(canon(spec), genus, relators, n, samples,
                                 seed);
        py::dict d;
        d["samples"] = b.samples;
        d["successes"] = b.successes;
        d["estimate"] = b.estimate;
        d["ci_low"] = b.ci_low;
        d["ci_high"] = b.ci_high;
        return d;
      },
      py::arg("spec"), py::arg("genus") = 2, py::arg("relators") = 2,
      py::arg("n") = 10000, py::arg("samples") = 10000, py::arg("seed") = 0);

  mod.def(
      "afp_probability",
      [](int g, int p, const std::vector<int>& type) {
        return exactp_dict(afp_probability(g, p, type));
      },
      py::arg("g"), py::arg("p"), py::arg("type"));

  mod.def(
      "afp_simulate",
      [](int g, int p, uint64_t samples, uint64_t seed) {
        auto rng = make_rng(seed, 0);
        auto hist = afp_simulate(g, p, samples, rng);
        py::dict d;
        for (const auto& [type, count] : hist)
          d[py::tuple(py::cast(type))] = count;
        return d;
      },
      py::arg("g"), py::arg("p"), py::arg("samples") = 10000,
      py::arg("seed") = 0);

  mod.def(
      "sylow_order_distribution",
      [](int g, int p, int kmax) {
        py::list out;
        for (const ExactP& e : sylow_order_distribution(g, p, kmax))
          out.append(exactp_dict(e));
        return out;
      },
      py::arg("g"), py::arg("p"), py::arg("kmax") = 8);

  mod.def("all_cyclic_probability", &all_cyclic_probability, py::arg("g"));

  mod.def("sp_order",
          [](int g, int p) { return big(sp_order(g, p)); }, py::arg("g"),
          py::arg("p"));
  mod.def("count_lagrangians",
          [](int g, int p) { return big(count_lagrangians(g, p)); },
          py::arg("g"), py::arg("p"));
  mod.def("count_by_intersection",
          [](int g, int p, int d) { return big(count_by_intersection(g, p, d)); },
          py::arg("g"), py::arg("p"), py::arg("d"));
  mod.def("homology_dim_distribution", &homology_dim_distribution,
          py::arg("g"), py::arg("p"));
  mod.def("c0_limit", &c0_limit, py::arg("p"));

  mod.def(
      "mc_intersection_distribution",
      [](int g, int p, uint64_t length, uint64_t samples, uint64_t seed,
         bool use_transvections) {
        DimHistogram h = mc_intersection_distribution(g, p, length, samples,
                                                      seed, use_transvections);
        py::dict d;
        d["counts"] = h.counts;
        d["samples"] = h.samples;
        return d;
      },
      py::arg("g"), py::arg("p"), py::arg("length") = 100000,
      py::arg("samples") = 1000, py::arg("seed") = 0,
      py::arg("use_transvections") = false);

  mod.def(
      "walk_homology",
      [](int g, uint64_t length, uint64_t seed, uint64_t stream) {
        WalkMatrices w = walk_matrices(g, length, seed, stream);
        AbelianGroupDesc d = integral_h1(w.phi_inv, g);
        py::list torsion;
        for (const mpz_class& t : d.torsion) torsion.append(big(t));
        py::dict out;
        out["torsion"] = torsion;
        out["free_rank"] = d.free_rank;
        out["finite"] = d.finite();
        if (d.finite()) out["order"] = big(d.order());
        return out;
      },
      py::arg("g") = 2, py::arg("length") = 10000, py::arg("seed") = 0,
      py::arg("stream") = 0);

  mod.def("beta_value", [](uint64_t a) { return big(beta_value(a)); },
          py::arg("a"));

  mod.def(
      "primitive_kernel_density",
      [](uint64_t a, uint64_t b, long radius) {
        KernelDensity k = primitive_kernel_density(a, b, radius);
        py::dict d;
        d["primitive"] = k.primitive;
        d["in_kernel"] = k.in_kernel;
        d["density"] = k.density;
        d["exhaustive"] = k.exhaustive;
        return d;
      },
      py::arg("a"), py::arg("b") = 0, py::arg("radius") = 1000);

  mod.def(
      "torus_image_distribution",
      [](const std::string& spec) {
        TorusImageDistribution t = torus_image_distribution(build_group(spec));
        py::list rows;
        for (const auto& r : t.rows) {
          py::dict d;
          d["type"] = r.type;
          d["subgroup_order"] = r.subgroup_order;
          d["count"] = r.count;
          d["non_bounding"] = r.non_bounding;
          d["freq"] = r.freq;
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["total_pairs"] = t.total_pairs;
        out["h2_flag_valid"] = t.h2_flag_valid;
        return out;
      },
      py::arg("spec"));

  mod.def(
      "surface_statistics",
      [](int n, uint64_t samples, uint64_t seed) {
        auto rng = make_rng(seed, 0);
        double sum = 0, sq = 0;
        bool euler_ok = true;
        for (uint64_t s = 0; s < samples; s++) {
          SurfaceStats st = surface_stats(random_surface(n, rng));
          sum += st.vertices;
          sq += (double)st.vertices * st.vertices;
          if (st.euler != st.vertices - n / 2) euler_ok = false;
        }
        double mean = sum / samples;
        py::dict d;
        d["mean_vertices"] = mean;
        d["sd_vertices"] = std::sqrt(std::max(0.0, sq / samples - mean * mean));
        d["euler_identity"] = euler_ok;
        d["samples"] = samples;
        return d;
      },
      py::arg("n"), py::arg("samples") = 1000, py::arg("seed") = 0);

  mod.def(
      "short_cycle_means",
      [](int d, int n, int imax, uint64_t samples, uint64_t seed) {
        return short_cycle_stats(d, n, imax, samples, seed).mean;
      },
      py::arg("d") = 4, py::arg("n") = 1000, py::arg("imax") = 4,
      py::arg("samples") = 1000, py::arg("seed") = 0);

  mod.def(
      "tet_manifold_probability",
      [](int n, int particles, int runs, int tail, uint64_t seed) {
        if (tail < 0) tail = default_smc_tail(n);
        ManifoldProbEstimate e =
            tet_manifold_probability(n, particles, runs, tail, seed);
        py::dict d;
        d["p_hat"] = e.p_hat;
        d["std_err"] = e.std_err;
        d["particles"] = e.particles;
        d["runs"] = e.runs;
        d["tail"] = e.tail;
        return d;
      },
      py::arg("n"), py::arg("particles") = 500, py::arg("runs") = 20,
      py::arg("tail") = -1, py::arg("seed") = 0);

  mod.def(
      "betti_trend",
      [](const std::string& spec, int genus,
         const std::vector<uint64_t>& lengths, uint64_t extending,
         uint64_t seed) {
        auto trend = betti_trend_experiment(*build_group(spec).G, genus,
                                            lengths, extending, seed);
        py::list out;
        for (const auto& pt : trend) {
          py::dict d;
          d["length"] = pt.length;
          d["walks"] = pt.walks;
          d["extending"] = pt.extending;
          d["positive"] = pt.positive;
          d["freq"] = pt.freq;
          out.append(d);
        }
        return out;
      },
      py::arg("spec"), py::arg("genus") = 2,
      py::arg("lengths") = std::vector<uint64_t>{100, 1000},
      py::arg("extending") = 100, py::arg("seed") = 0);
}
