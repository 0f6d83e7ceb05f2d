#include "doctest.h"

#include "cocyclelab/errors.hpp"
#include "cocyclelab/rng.hpp"
#include "cocyclelab/spectral.hpp"

#include <cmath>
#include <cstdlib>

using namespace cocyclelab;

TEST_CASE("quadrature rules") {
  const auto& gl3 = gauss_legendre(3);
  REQUIRE(gl3.nodes.size() == 3);
  CHECK(gl3.nodes[1] == doctest::Approx(0.0));
  CHECK(gl3.nodes[0] == doctest::Approx(-gl3.nodes[2]));
  double wsum = 0.0;
  for (double w : gl3.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0));

  // Degree-5 polynomial integrated exactly by the 3-point rule.
  double acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = gl3.nodes[i];
    acc += gl3.weights[i] * (x * x * x * x * x + 3 * x * x);
  }
  CHECK(acc == doctest::Approx(2.0));
}

TEST_CASE("squared Dirichlet kernel") {
  CHECK(spectral_kernel(2, 0.25) == doctest::Approx(2.0));
  CHECK(spectral_kernel(5, 0.0) == 25.0);
  CHECK(spectral_kernel(3, 1.0) == doctest::Approx(9.0));
  CHECK(spectral_kernel(0, 0.37) == 0.0);
  CHECK_THROWS_AS(spectral_kernel(-1, 0.5), PreconditionError);

  // Near a zero of sin(pi x) the fallback stays continuous.
  const double a = spectral_kernel(7, 1e-9);
  const double b = spectral_kernel(7, 1e-7);
  CHECK(a == doctest::Approx(49.0).epsilon(1e-6));
  CHECK(b == doctest::Approx(49.0).epsilon(1e-6));
}

TEST_CASE("atomic measures: kernel sum agrees with the orbit walk") {
  AtomicMeasure mu;
  mu.positions = {0.25};
  mu.weights = {1.0};
  mu.validate();
  CHECK(atomic_growth(mu, 2) == doctest::Approx(2.0));
  CHECK(atomic_growth(mu, 4) == doctest::Approx(0.0));

  Rng rng(2024);
  const auto random_mu = random_atomic_measure(rng);
  CHECK(random_mu.total_mass() == doctest::Approx(1.0));

  const auto quad = atomic_growth_sequence(random_mu, 200);
  const auto walk = atomic_walk_sequence(random_mu, 200);
  REQUIRE(quad.size() == walk.size());
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const double scale = std::max(1.0, std::abs(quad[i]));
    CHECK(std::abs(quad[i] - walk[i]) / scale <= 1e-10);
  }
}

TEST_CASE("density growth for smooth measures") {
  // Lebesgue measure: c(n) = n.
  for (long n : {1L, 2L, 7L, 33L, 64L}) {
    const double c = density_growth([](double) { return 1.0; }, n);
    CHECK(std::abs(c - double(n)) / double(n) <= 1e-8);
  }

  // Raised cosine 1 + cos(2 pi x): c(n) = 2n - 1.
  for (long n : {1L, 3L, 16L}) {
    const double c = density_growth([](double x) { return 1.0 + std::cos(2 * M_PI * x); }, n);
    CHECK(c == doctest::Approx(2.0 * double(n) - 1.0).epsilon(1e-8));
  }

  // A jump discontinuity off the panel grid never settles: the refinement
  // loop reports failure instead of returning a wrong value.
  CHECK_THROWS_AS(
      density_growth([](double x) { return x < 1.0 / M_E ? 1.0 : 0.0; }, 50, 0, 1e-9),
      NumericalError);
}

TEST_CASE("shift vectors and the coboundary dichotomy") {
  ShiftVector delta0;
  delta0.coeffs = {Complex(1.0)};
  for (long n : {1L, 2L, 9L, 40L}) {
    CHECK(shift_growth_direct(delta0, n) == doctest::Approx(double(n)));
    CHECK(shift_growth_exact(delta0, n) == doctest::Approx(double(n)));
  }

  ShiftVector diff;
  diff.coeffs = {Complex(1.0), Complex(-1.0)};
  for (long n : {1L, 2L, 9L, 40L}) {
    CHECK(shift_growth_direct(diff, n) == doctest::Approx(2.0));
    CHECK(shift_growth_exact(diff, n) == doctest::Approx(2.0));
  }

  // Translating the vector does not change the growth.
  ShiftVector shifted = diff;
  shifted.offset = -3;
  CHECK(shift_growth_exact(shifted, 17) == doctest::Approx(shift_growth_exact(diff, 17)));
  CHECK(shift_growth_direct(shifted, 17) == doctest::Approx(shift_growth_direct(diff, 17)));

  // All three routes agree on a generic vector.
  ShiftVector f;
  f.offset = -1;
  f.coeffs = {Complex(1.0, 0.5), Complex(-0.25), Complex(0.0, 1.0)};
  for (long n : {1L, 5L, 12L}) {
    const double exact = shift_growth_exact(f, n);
    CHECK(shift_growth_direct(f, n) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(shift_growth_quadrature(f, n) == doctest::Approx(exact).epsilon(1e-8));
  }

  // The density route sees the same measure.
  CHECK(shift_density(delta0, 0.3) == doctest::Approx(1.0));

  ShiftVector empty;
  CHECK_THROWS_AS(empty.validate(), PreconditionError);
}

TEST_CASE("factorial rotation orbit") {
  // Frozen reference values for the orbit of the composite rotation.
  CHECK(edelstein_orbit_norm_sq(1, 12) == doctest::Approx(5.07096701054142).epsilon(1e-12));
  CHECK(std::sqrt(edelstein_orbit_norm_sq(1, 12)) ==
        doctest::Approx(2.251880771830831).epsilon(1e-12));
  CHECK(edelstein_orbit_norm_sq(720, 12) == doctest::Approx(0.7657529586379873).epsilon(1e-10));

  // Factorial times dip below the return bound.
  long fact = 1;
  for (int n = 1; n <= 6; ++n) {
    fact *= n;
    CHECK(edelstein_orbit_norm_sq(fact, 12) <= edelstein_return_bound(n, 12) * (1 + 1e-12));
  }

  // The orbit keeps exceeding its own dips: max well above the dip floor.
  const auto profile = edelstein_profile(12, 720);
  REQUIRE(profile.norms.size() == 720);
  double lo = profile.norms[0], hi = profile.norms[0];
  for (double v : profile.norms) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi == doctest::Approx(4.40632723135261).epsilon(1e-10));
  CHECK(hi > 4.0 * lo);

  // Almost-fixed witnesses: strictly decreasing displacement.
  for (int m = 1; m < 20; ++m)
    CHECK(edelstein_almost_fixed(m + 1) < edelstein_almost_fixed(m));
  CHECK(edelstein_almost_fixed(25, 25) == 0.0);

  // The orbit measure reproduces the direct computation.
  const auto mu = edelstein_measure(12);
  mu.validate();
  for (long m : {1L, 2L, 17L, 120L, 417L, 720L})
    CHECK(std::abs(atomic_growth(mu, m) - edelstein_orbit_norm_sq(m, 12)) <= 1e-12);
}
