#pragma once
// Symplectic F_p machinery for H_1 of a random Heegaard manifold: orders of
// Sp(2g,F_p), Lagrangian counts by intersection dimension with the meridian
// Lagrangian J, the limiting distribution, Monte Carlo verification through
// symplectic walks, and integral H_1 via Smith normal form. Basis ordering is
// a_1, b_1, ..., a_g, b_g (matching the surface modules); J = span{b_i}.
#include <cstdint>
#include <vector>

#include "mcg.hpp"
#include "snf.hpp"

namespace rhm {

using FpMat = std::vector<std::vector<int>>;

mpz_class sp_order(int g, int p);           // p^{g^2} prod (p^{2k} - 1)
mpz_class count_lagrangians(int g, int p);  // prod (p^k + 1)
mpz_class count_transverse(int g, int p);   // p^{g(g+1)/2}
// Lagrangians L with dim(L cap J) = d
mpz_class count_by_intersection(int g, int p, int d);

// c_0..c_g: distribution of dim H_1(M_phi; F_p) for uniform phi_*
std::vector<double> homology_dim_distribution(int g, int p);
// g -> infinity limit of c_0: prod_k (1 + p^-k)^-1, truncation error < 1e-9
double c0_limit(int p);

// row echelon basis (reduced), rows spanning the same subspace; canonical
FpMat echelon_form(FpMat M, int p);
int fp_rank(FpMat M, int p);
// symplectic pairing sum_i (u_{a_i} v_{b_i} - u_{b_i} v_{a_i}) mod p
int symplectic_pairing(const std::vector<int>& u, const std::vector<int>& v,
                       int p);
bool is_isotropic(const FpMat& rows, int g, int p);
// every Lagrangian of F_p^{2g} as a canonical echelon basis (brute force)
std::vector<FpMat> brute_lagrangians(int g, int p);
// dim of (row span of L) cap J for a rank-g matrix L
int lagrangian_j_intersection(const FpMat& L, int g, int p);

// transvection x -> x + <x, v> v as a 2g x 2g matrix
FpMat transvection(const std::vector<int>& v, int g, int p);
// chain transvections generating Sp(2g, F_p); closure-verified against
// sp_order whenever the group has at most 10^6 elements
std::vector<FpMat> transvection_generators(int g, int p);

struct DimHistogram {
  std::vector<uint64_t> counts;  // counts[d], d = 0..g
  uint64_t samples = 0;
  uint64_t length = 0, seed = 0;
};
// evolve a symplectic walk (surface twist images mod p, or the independent
// transvection set) and histogram dim(J cap phi J) at spaced epochs
DimHistogram mc_intersection_distribution(int g, int p, uint64_t length,
                                          uint64_t samples, uint64_t seed,
                                          bool use_transvections = false);
// joint (mod p, mod q) dimension counts from one shared walk; counts[d][e]
std::vector<std::vector<uint64_t>> mc_joint_dim(int g, int p, int q,
                                                uint64_t length,
                                                uint64_t samples,
                                                uint64_t seed);

// H_1(M_phi; Z) = Z^{2g} / <J, phi_*^{-1} J>; argument is the matrix of
// phi_*^{-1} (column j = image of generator j)
AbelianGroupDesc integral_h1(const ZMat& phi_inv, int g);

struct WalkMatrices {
  ZMat phi, phi_inv;  // exact integer matrices of the composed walk
};
WalkMatrices walk_matrices(int g, uint64_t length, uint64_t seed,
                           uint64_t stream = 0);

}  // namespace rhm
