#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cocyclelab/algebra.hpp"
#include "cocyclelab/cocycle.hpp"

namespace cocyclelab {

// Reduce an angle to [-pi, pi). Rejects non-finite input.
double wrap_angle(double x);

// Bridge from the circle parameter in [0,1) used by the spectral module:
// x = 2 pi f  - 2 pi [f >= 1/2]. Values outside [0,1) are reduced mod 1 first.
double angle_from_circle(double frac);

// a(u) = (e^{iu} - 1)/(iu) with the removable value a(0) = 1.
Complex flow_average(double u);

// g(x) = ix/(e^{ix} - 1) = 1/a(x) with g(0) = 1; bounded by pi/2 on [-pi, pi).
Complex flow_multiplier(double x);

// U = diag(e^{i x_j}); angles are wrapped to [-pi, pi) on construction.
struct DiagonalUnitary {
  Eigen::VectorXd angles;

  explicit DiagonalUnitary(Eigen::VectorXd a);
  Eigen::Index dimension() const { return angles.size(); }
};

// upsilon(s) = diag(e^{i s x_j}) as its vector of diagonal entries;
// upsilon(1) = U and upsilon(s) upsilon(u) = upsilon(s+u).
Eigen::VectorXcd one_param(const DiagonalUnitary& u, double s);

// Affine flow data: the unitary, the translation part b, and the solution xi
// of A xi = b where A = integral of upsilon(s) over s in [0,1].
struct FlowSpec {
  DiagonalUnitary unitary;
  Eigen::VectorXcd translation;
  Eigen::VectorXcd xi;
};

// xi_j = g(x_j) b_j, the exact diagonal inverse of A.
FlowSpec solve_flow(const DiagonalUnitary& u, const Eigen::VectorXcd& b);

// Coordinatewise multiplication by t a(t x_j); t = 1 gives A itself.
Eigen::VectorXcd apply_average(const DiagonalUnitary& u, double t, const Eigen::VectorXcd& v);

// b_xi(t)_j = xi_j t a(t x_j). Satisfies b_xi(1) = b and the continuous
// cocycle identity b_xi(t+u) = b_xi(t) + upsilon(t) b_xi(u).
Eigen::VectorXcd flow_cocycle(const FlowSpec& spec, double t);

// || b_xi(t+u) - b_xi(t) - upsilon(t) b_xi(u) ||
double flow_identity_residual(const FlowSpec& spec, double t, double u);

// || b_xi(t) || over the given t grid; labels carry the t values.
GrowthProfile extend_z_action(const DiagonalUnitary& u, const Eigen::VectorXcd& b,
                              const std::vector<double>& t_grid);

}  // namespace cocyclelab
