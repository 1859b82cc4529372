#pragma once
// Random gluing models: triangulated surfaces from n triangles with a random
// side pairing (vertex counts via sigma-pi cycles), cycle statistics of random
// d-valent configuration-model multigraphs, and random tetrahedron gluings
// with the vertex-link manifold test.
#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace rhm {

struct TriangleGluing {
  int n = 0;                 // triangles, even
  std::vector<int> pi;       // fixed-point-free involution on the 3n sides
};

// sigma rotates the sides of each triangle: slot 3t+k -> 3t+(k+1)%3
int sigma_slot(int slot);

TriangleGluing random_surface(int n, std::mt19937_64& rng);
// uniform fixed-point-free involution on m items (m even)
std::vector<int> random_involution(int m, std::mt19937_64& rng);

struct SurfaceStats {
  int vertices = 0;    // cycles of sigma * pi
  int vertices_alt = 0;  // independent corner-tracing count
  long euler = 0;      // v - n/2
  int components = 0;
  std::vector<int> component_genus;  // per component, orientable
};
SurfaceStats surface_stats(const TriangleGluing& T);

struct CycleStats {
  std::vector<double> mean;  // mean[i] = average number of i-cycles, i >= 1
  uint64_t samples = 0;
};
// random d-valent multigraph on n vertices (configuration model)
CycleStats short_cycle_stats(int d, int n, int imax, uint64_t samples,
                             uint64_t seed);

struct TetGluing {
  int n = 0;
  std::vector<int> pairing;   // involution on the 4n faces (face = 4t + i)
  std::vector<int> rotation;  // per face, rotation of the gluing (shared by
                              // both faces of a pair), in {0,1,2}
};
TetGluing random_tet_gluing(int n, std::mt19937_64& rng);

struct TetStats {
  bool manifold = false;
  int vertices = 0, edges = 0;
  std::vector<long> link_euler;  // per vertex class
  long global_euler = 0;         // v - e + 2n - n
  double mean_edge_valence = 0;
  double frac_valence_le6 = 0;
};
TetStats tet_stats(const TetGluing& T);

// Manifold probability for the uniform gluing of n tetrahedra. Plain
// frequency estimation dies for n >= 8 (the probability drops below 1e-4 and
// then by many orders of magnitude), so this is a sequential Monte Carlo
// estimator: the gluing is built one face pair at a time, each step proposes
// uniformly among the choices that do not yet doom a vertex link (the partial
// link is always a surface with boundary; it can no longer become a sphere
// exactly when its genus is positive or it closed at chi != 2, and both
// conditions are permanent), weighting by the allowed fraction. `particles`
// gluings evolve together with systematic resampling per step, and the last
// `tail` faces are finished by exact DFS counting of manifold completions.
// The estimator is unbiased for the naive manifold frequency; std_err is the
// spread over `runs` independent replicates.
struct ManifoldProbEstimate {
  double p_hat = 0;
  double std_err = 0;
  int particles = 0, runs = 0, tail = 0;
};
ManifoldProbEstimate tet_manifold_probability(int n, int particles, int runs,
                                              int tail, uint64_t seed);
// tail chosen by n: exact DFS for n <= 3, endgame DFS from 12 faces for
// n >= 16, plain SMC otherwise (DFS explodes where pruning does not bite)
int default_smc_tail(int n);

// outward-oriented vertex cycle of face i of a standard tetrahedron
const std::array<int, 3>& face_cycle(int i);
// vertex map of an orientation-reversing gluing of face i onto face j with
// rotation r: face_cycle(i)[k] -> face_cycle(j)[(r - k) mod 3]
int glued_vertex(int i, int j, int r, int v);

}  // namespace rhm
