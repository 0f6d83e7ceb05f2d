#include "doctest.h"

#include "cocyclelab/cantor.hpp"
#include "cocyclelab/errors.hpp"

#include <cmath>

using namespace cocyclelab;

TEST_CASE("parameter validation") {
  auto p = CantorParams::defaults();
  REQUIRE(p.depth() == 2);
  CHECK(p.scales[0] == 8);
  CHECK(p.scales[1] == 2097152);
  CHECK(p.epsilons[0] == doctest::Approx(std::pow(8.0, -5.0)));
  p.validate();

  // Too shallow a second scale violates the nesting condition.
  CantorParams bad;
  bad.scales = {8, 64};
  bad.epsilons = {std::pow(8.0, -5.0), std::pow(64.0, -5.0)};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);

  CantorParams bad2;
  bad2.scales = {8, 2097152};
  bad2.epsilons = {1e-3, std::pow(2097152.0, -5.0)};  // eps_1 > N_1^{-4}
  CHECK_THROWS_AS(bad2.validate(), PreconditionError);
}

TEST_CASE("anchored intervals and anchored sines") {
  const AnchoredInterval iv{0.375, -1e-20, 3e-20};
  CHECK(iv.width() == doctest::Approx(4e-20));
  CHECK(iv.inf() == doctest::Approx(0.375));

  // n * anchor integer: the sign flip is exact and the offset survives.
  CHECK(sinpi_anchored(8, 0.375, 0.0) == 0.0);
  const double tiny = sinpi_anchored(8, 0.375, 1e-20);
  CHECK(tiny == doctest::Approx(-std::sin(M_PI * 8 * 1e-20)));

  // Against the plain evaluation at a scale where both still work.
  const double direct = std::sin(M_PI * 5 * (0.25 + 1e-4));
  CHECK(sinpi_anchored(5, 0.25, 1e-4) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("measure structure at default parameters") {
  const CantorMeasure mu;

  REQUIRE(mu.pieces().size() == 69);
  CHECK(mu.masses().size() == 69);
  CHECK(mu.regions().size() == 69);

  int tail = 0, mid = 0, bulk = 0;
  for (int r : mu.regions()) {
    if (r == 2) ++tail;
    if (r == 1) ++mid;
    if (r == 0) ++bulk;
  }
  CHECK(tail == 1);
  CHECK(mid == 8);
  CHECK(bulk == 60);

  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

  // Pieces are disjoint, ordered, inside [0, 1/2], with positive mass.
  double prev_sup = 0.0;
  for (std::size_t i = 0; i < mu.pieces().size(); ++i) {
    const auto& iv = mu.pieces()[i];
    CHECK(iv.width() > 0.0);
    CHECK(iv.inf() >= prev_sup);
    CHECK(iv.sup() <= 0.5 + 1e-15);
    CHECK(mu.masses()[i] > 0.0);
    prev_sup = iv.sup();
  }

  // Calibration: mu[0, sqrt(eps_n)] = sqrt(eps_n) at both levels.
  for (int level = 1; level <= 2; ++level) {
    const double s = mu.cutoff(level);
    CHECK(mu.mass_below(s) == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK(mu.cutoff(2) == doctest::Approx(1.5700924586837752e-16).epsilon(1e-12));
}

TEST_CASE("growth values against frozen references") {
  const CantorMeasure mu;

  // c(1) integrates the constant 1: the total mass.
  CHECK(mu.growth(1) == doctest::Approx(mu.total_mass()).epsilon(1e-13));

  CHECK(mu.growth(2) == doctest::Approx(1.7269126211188979).epsilon(1e-10));
  CHECK(mu.growth(5) == doctest::Approx(2.2691262122402045).epsilon(1e-10));
  CHECK(mu.growth(8) == doctest::Approx(0.35355339942359154).epsilon(1e-9));

  CHECK(mu.growth_bound(1) == doctest::Approx(0.35362868969911704).epsilon(1e-12));
  CHECK(mu.growth(8) <= mu.growth_bound(1) * (1 + kClaim2RelTol));
}

TEST_CASE("claims evaluate inside their bounds") {
  const CantorMeasure mu;
  const auto claims = evaluate_cantor_claims(mu);

  REQUIRE(claims.calibration_error.size() == 2);
  for (double err : claims.calibration_error) CHECK(err <= 1e-12);

  for (std::size_t i = 0; i < claims.claim1_value.size(); ++i)
    CHECK(claims.claim1_value[i] >= claims.claim1_floor[i]);
  CHECK(claims.claim1_value[0] == doctest::Approx(2.3025781821949497e+59).epsilon(1e-9));
  CHECK(claims.claim1_floor[0] == doctest::Approx(18.3410933840242).epsilon(1e-10));
  CHECK(claims.claim1_floor[1] == doctest::Approx(645319854139522.4).epsilon(1e-10));

  for (std::size_t i = 0; i < claims.claim2_value.size(); ++i)
    CHECK(claims.claim2_value[i] <= claims.claim2_bound[i] * (1 + kClaim2RelTol));
  CHECK(claims.claim2_value[1] == doctest::Approx(0.0006905339660024879).epsilon(1e-9));
}
