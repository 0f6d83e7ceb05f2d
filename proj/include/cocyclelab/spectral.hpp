#pragma once

#include <functional>
#include <vector>

#include "cocyclelab/algebra.hpp"
#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/rng.hpp"

namespace cocyclelab {

// Gauss-Legendre rule on [-1, 1]. Rules are cached per node count.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int m);

// Squared Dirichlet kernel phi_n(x) = (sin(pi n x) / sin(pi x))^2, the growth
// kernel of a Z-cocycle: ||b(g^n)||^2 = integral of phi_n against the spectral
// measure. Near the zeros of sin(pi x) the ratio is replaced by the explicit
// exponential sum |sum_{j<n} e^{2 pi i j x}|^2, so phi_n(0) = n^2 exactly.
double spectral_kernel(long n, double x);
long double spectral_kernel_ld(long n, long double x);

// Purely atomic measure on [0, 1): positions x_i with positive weights.
struct AtomicMeasure {
  std::vector<double> positions;
  std::vector<double> weights;

  double total_mass() const;
  void validate() const;
};

// positions in [0.01, 0.99), 1..max_atoms atoms, weights normalized to total
// mass 1. Consumes exactly 1 + 2 * natoms draws.
AtomicMeasure random_atomic_measure(Rng& rng, int max_atoms = 16);

// c(n) = sum_i w_i phi_n(x_i), evaluated in extended precision.
double atomic_growth(const AtomicMeasure& mu, long n);

// The same c(n) for n = 1..n_max through the two independent routes: the
// kernel sum above, and the orbit walk b(g^n) = xi + U b(g^{n-1}) with
// U = diag(e^{2 pi i x}), xi = sqrt(w). Both in extended precision; their
// agreement is the cross-check for the spectral calculus.
std::vector<double> atomic_growth_sequence(const AtomicMeasure& mu, long n_max);
std::vector<double> atomic_walk_sequence(const AtomicMeasure& mu, long n_max);

// c(n) for an absolutely continuous measure rho(x) dx on [0, 1), by composite
// Gauss-Legendre with the panel count tied to the kernel frequency; the hint
// adds panels for densities with their own oscillation. Panels double until
// two successive refinements agree to rel_tol; failure to settle throws
// NumericalError carrying the achieved estimate.
double density_growth(const std::function<double(double)>& rho, long n, int bandwidth_hint = 0,
                      double rel_tol = 1e-9);

// Finitely supported f in l^2(Z): f(offset + i) = coeffs[i]. Its shift
// measure is |fhat|^2 dx with fhat(x) = sum_j f(j) e^{2 pi i j x}; the mass
// is ||f||^2, deliberately not renormalized.
struct ShiftVector {
  long offset = 0;
  std::vector<Complex> coeffs;

  double mass() const;
  void validate() const;
};

double shift_density(const ShiftVector& f, double x);

// || sum_{j<n} T^j f ||^2 summed literally in l^2(Z).
double shift_growth_direct(const ShiftVector& f, long n);

// The same number via the autocorrelation a(m) = sum_k f(k+m) conj(f(k)):
// c(n) = n a(0) + 2 sum_{m=1}^{n-1} (n - m) Re a(m). For delta_0 this is n,
// for delta_0 - delta_1 it is constantly 2: the two ends of the dichotomy.
double shift_growth_exact(const ShiftVector& f, long n);

// And through the generic density quadrature.
double shift_growth_quadrature(const ShiftVector& f, long n);

// ||r^m(0)||^2 = sum_{n<=n_max} |1 - e^{2 pi i m / n!}|^2 for the product of
// rotations with centre 1 and angles 2 pi / n!. Reduced mod n! in integer
// arithmetic first, so coordinates 1..n vanish exactly at m = n!.
double edelstein_orbit_norm_sq(long m, int n_max);

// The orbit as an atomic measure: atoms at 1/n! with weights 4 sin^2(pi/n!),
// linking the direct computation to the spectral calculus.
AtomicMeasure edelstein_measure(int n_max);

// Upper bound for the return depth at time n!:
// ||r^{n!}(0)||^2 <= sum_{n < k <= n_max} (2 pi n! / k!)^2.
double edelstein_return_bound(int n, int n_max);

// || r(v_m) - v_m || for the almost-fixed witnesses v_m (the characteristic
// vectors of the first m coordinates), truncated at component trunc:
// sqrt(sum_{n>m} 4 sin^2(pi / n!)). Strictly decreasing in m while the
// truncation keeps a nonzero tail.
double edelstein_almost_fixed(int m, int trunc = 25);

// Norms ||r^m(0)|| for m = 1..m_max; labels are the exponents.
GrowthProfile edelstein_profile(int n_max, long m_max);

// Norms sqrt(c(m)) for a general atomic measure, same labeling.
GrowthProfile atomic_orbit_profile(const AtomicMeasure& mu, long m_max);

}  // namespace cocyclelab
