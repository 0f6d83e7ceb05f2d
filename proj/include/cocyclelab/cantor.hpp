#pragma once

#include <cstdint>
#include <vector>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

// Interval near a grid point, stored as the anchor k/N plus small offsets.
// The construction lives at scales far below 1 ulp of the anchors, so plain
// endpoints would collapse; differences of anchors stay exact and offsets
// carry the actual geometry.
struct AnchoredInterval {
  double anchor;
  double lo;
  double hi;

  double width() const { return hi - lo; }
  double inf() const { return anchor + lo; }
  double sup() const { return anchor + hi; }
};

struct CantorParams {
  std::vector<long> scales;      // N_1 < N_2 < ...
  std::vector<double> epsilons;  // eps_n, strictly decreasing

  static CantorParams defaults();  // N = {8, 8^7}, eps_n = N_n^{-5}

  int depth() const { return static_cast<int>(scales.size()); }

  // Nesting conditions: N_n / N_{n+1} < eps_n and eps_n < N_n^{-4}, with
  // eps decreasing and scales increasing. Violations throw.
  void validate() const;
};

// Nested-interval residual set K = intersection of the K_n, where K_n keeps
// the eps_n/N_n neighborhoods of the grid points k/N_n inside K_{n-1},
// together with the singular probability measure calibrated so that
// mu[0, sqrt(eps_n)] = sqrt(eps_n) at every level. Pieces are restricted to
// [0, 1/2]; the measure is uniform within each piece.
class CantorMeasure {
 public:
  explicit CantorMeasure(CantorParams params = CantorParams::defaults());

  const CantorParams& params() const { return params_; }
  const std::vector<AnchoredInterval>& pieces() const { return pieces_; }
  const std::vector<double>& masses() const { return masses_; }
  // Calibration region per piece: depth() for the tail below the deepest
  // cutoff, n for pieces between cutoffs s_{n+1} and s_n, 0 above s_1.
  const std::vector<int>& regions() const { return regions_; }

  // sqrt(eps_level), the calibration cutoff; level is 1-based.
  double cutoff(int level) const;

  double total_mass() const;
  // mu[0, s], counting the pieces with sup <= s.
  double mass_below(double s) const;

  // c(n) = integral of the squared Dirichlet kernel, piecewise quadrature
  // with anchored evaluation of sin(pi n x).
  double growth(long n) const;

  // integral of 1 / sin^2(pi x) over [0, s]; finite because the deepest
  // piece keeps away from 0.
  double singular_integral(double s) const;

  // sqrt(eps_n) N_n^2 + pi^2 eps_n / 4.
  double growth_bound(int level) const;

 private:
  CantorParams params_;
  std::vector<AnchoredInterval> pieces_;
  std::vector<double> masses_;
  std::vector<int> regions_;
};

// sin(pi n (anchor + off)) evaluated without forming anchor + off: the
// integer part of n * anchor only flips the sign.
double sinpi_anchored(long n, double anchor, double off);

struct CantorClaims {
  // mu[0, sqrt(eps_n)] vs sqrt(eps_n), relative error per level
  std::vector<double> calibration_error;
  // claim 1: singular integral over [0, sqrt(eps_n)] vs 1/(pi^2 sqrt(eps_n))
  std::vector<double> claim1_value;
  std::vector<double> claim1_floor;
  // claim 2: c(N_n) vs the growth bound
  std::vector<double> claim2_value;
  std::vector<double> claim2_bound;
};

CantorClaims evaluate_cantor_claims(const CantorMeasure& mu);

// Relative slack allowed on claim 2; at the deepest level value and bound
// agree to the last double bit, so a strict <= would test the rounding
// direction rather than the claim.
inline constexpr double kClaim2RelTol = 1e-10;

}  // namespace cocyclelab
