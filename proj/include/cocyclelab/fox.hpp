#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cocyclelab/algebra.hpp"
#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/freegroup.hpp"

namespace cocyclelab {

// Expansion coefficients of a word w = x_1^{e_1} ... x_n^{e_n}: for each
// generator s,
//
//   f_{w,s} = sum over positions j with x_j = s of
//             e_j * x_1^{e_1} ... x_{j-1}^{e_{j-1}} x_j^{(e_j - 1)/2},
//
// so b(w) = sum_s lambda(f_{w,s}) b(s) for every cocycle b with respect to
// the regular representation. Returned indexed by generator (entry i is the
// coefficient of generator i+1). The prefixes are pairwise distinct, so the
// total term count over all generators equals |w|.
std::vector<AlgebraElement> fox_elements(const ReducedWord& w);

// || b(w) - sum_s lambda(f_{w,s}) b(s) || for the given model. Exactly 0 in
// exact arithmetic; integer-valued generator data keeps it exactly 0 in
// doubles too.
double fox_identity_residual(const RegularCocycleModel& model, const ReducedWord& w);

struct NullPairOptions {
  std::uint64_t seed = 7;
  int max_iterations = 500;
  double tol = 1e-14;
  std::size_t ball_cap = Ball::kDefaultCap;
};

// Near-kernel pair: minimizes || lambda(f1) xi1 + lambda(f2) xi2 || over
// vectors supported in B_radius with ||xi1||^2 + ||xi2||^2 = 1. residual is
// the attained minimum (the smallest singular value of the stacked truncated
// operator). Nonincreasing in the radius since the search space only grows.
struct NullPairResult {
  int radius = 0;
  double residual = 0.0;
  TruncatedVector xi1, xi2;
  double norm1 = 0.0, norm2 = 0.0;
  int iterations = 0;
};

// Shifted inverse iteration on the normal operator M^* M with a deterministic
// seed, accelerated by a two-dimensional Rayleigh-Ritz step per iteration; the
// shift tightens toward the running estimate as the Ritz residual shrinks.
// Throws NumericalError if the iteration does not settle.
NullPairResult null_pair_search(const AlgebraElement& f1, const AlgebraElement& f2, int radius,
                                const NullPairOptions& opts = {});

// Cocycle on F_2 built from the expansion coefficients of w: generator values
// are the near-kernel pair for (f_{w,s}, f_{w,t}), so ||b(w)|| equals the
// search residual and decays as the radius grows.
struct VanishingCocycle {
  RegularCocycleModel model;
  NullPairResult search;
  double reported_norm = 0.0;  // ||b(w)|| re-evaluated through the model
  std::vector<std::string> warnings;
};

// w must use both generators of F_2; a one-generator word has f_{w,t} = 0 and
// belongs to the amalgam construction instead.
VanishingCocycle build_vanishing_cocycle(const ReducedWord& w, int radius,
                                         const NullPairOptions& opts = {},
                                         double degenerate_floor = 1e-6);

// Free basis of the rank-k subgroup of F_2 of index k - 1: the kernel of the
// t-exponent map onto Z/(k-1), generated by t^{k-1} and t^i s t^-i for
// i = 0..k-2. No finite computation can certify which of the projected
// cocycles on it is unbounded, so nothing here asserts that.
std::vector<ReducedWord> finite_index_generators(int k);

// Terms of f whose t-exponent sum is congruent to residue mod modulus: the
// coset blocks of l^2(F_2) over the subgroup above.
AlgebraElement coset_component(const AlgebraElement& f, int modulus, int residue);

}  // namespace cocyclelab
