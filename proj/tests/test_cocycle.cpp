#include "doctest.h"

#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/errors.hpp"
#include "cocyclelab/rng.hpp"

#include <cmath>
#include <vector>

using namespace cocyclelab;

namespace {

// Coboundary model b(g) = v - pi(g) v over the regular representation.
RegularCocycleModel coboundary_model(const AlgebraElement& v) {
  std::vector<AlgebraElement> values;
  for (int gen = 1; gen <= 2; ++gen) {
    const auto g = ReducedWord::generator(2, gen);
    AlgebraElement bg = v;
    bg -= AlgebraElement::delta(g) * v;
    values.push_back(bg);
  }
  return RegularCocycleModel(2, std::move(values));
}

ReducedWord random_word(Rng& rng, int rank, int max_len) {
  auto w = ReducedWord::identity(rank);
  const int len = rng.next_int(0, max_len);
  for (int i = 0; i < len; ++i) {
    const int gen = rng.next_int(1, rank);
    const int exp = rng.next_int(0, 1) ? 1 : -1;
    w = w * ReducedWord::generator(rank, gen, exp);
  }
  return w;
}

}  // namespace

TEST_CASE("chain rule on words") {
  AlgebraElement v(2);
  v.add_term(ReducedWord::identity(2), Complex(1.0));
  v.add_term(ReducedWord::parse(2, "st"), Complex(2.0));
  const auto m = coboundary_model(v);

  // b(st) = b(s) + pi(s) b(t), assembled by hand.
  const auto bs = evaluate_cocycle(m, ReducedWord::parse(2, "s"));
  const auto bt = evaluate_cocycle(m, ReducedWord::parse(2, "t"));
  AlgebraElement expect = bs;
  expect += AlgebraElement::delta(ReducedWord::parse(2, "s")) * bt;
  const auto got = evaluate_cocycle(m, ReducedWord::parse(2, "st"));
  CHECK(got == expect);

  // b(s^-1) = -pi(s^-1) b(s).
  const auto bS = evaluate_cocycle(m, ReducedWord::parse(2, "S"));
  AlgebraElement expect_inv = AlgebraElement::delta(ReducedWord::parse(2, "S")) * bs;
  expect_inv *= Complex(-1.0);
  CHECK(bS == expect_inv);

  CHECK(evaluate_cocycle(m, ReducedWord::identity(2)).is_zero());
  CHECK_THROWS_AS(evaluate_cocycle(m, ReducedWord::identity(3)), PreconditionError);
}

TEST_CASE("integer models satisfy the identity exactly") {
  AlgebraElement v(2);
  v.add_term(ReducedWord::identity(2), Complex(3.0));
  v.add_term(ReducedWord::parse(2, "ts"), Complex(-2.0));
  v.add_term(ReducedWord::parse(2, "S"), Complex(1.0));
  const auto m = coboundary_model(v);

  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_word(rng, 2, 6);
    const auto h = random_word(rng, 2, 6);
    CHECK(cocycle_identity_residual(m, g, h) == 0.0);
  }
}

TEST_CASE("coboundaries are bounded by twice the vector norm") {
  AlgebraElement v(2);
  v.add_term(ReducedWord::identity(2), Complex(1.0));
  v.add_term(ReducedWord::parse(2, "st"), Complex(2.0));
  const auto m = coboundary_model(v);
  const double cap = 2.0 * v.norm() + 1e-12;

  const auto ball = Ball::enumerate(2, 5);
  for (std::size_t i = 0; i < ball.size(); ++i)
    CHECK(evaluate_cocycle(m, ball.word(i)).norm() <= cap);
}

TEST_CASE("diagonal model over Z") {
  Eigen::VectorXd angles(1);
  angles << M_PI;
  Eigen::VectorXcd xi(1);
  xi << Complex(1.0);
  const DiagonalCocycleModel m(angles, xi);

  const auto a = ReducedWord::generator(1, 1);
  CHECK(evaluate_cocycle(m, a).norm() == doctest::Approx(1.0));
  CHECK(evaluate_cocycle(m, pow(a, 2)).norm() == doctest::Approx(0.0));
  CHECK(evaluate_cocycle(m, pow(a, 3)).norm() == doctest::Approx(1.0));
  CHECK(evaluate_cocycle(m, pow(a, -2)).norm() == doctest::Approx(0.0));

  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = pow(a, rng.next_int(-8, 8));
    const auto h = pow(a, rng.next_int(-8, 8));
    CHECK(cocycle_identity_residual(m, g, h) <= 1e-12);
  }
}

TEST_CASE("growth classification") {
  auto profile_from = [](const std::vector<double>& norms) {
    GrowthProfile p;
    for (std::size_t i = 0; i < norms.size(); ++i) {
      p.labels.push_back(std::to_string(i + 1));
      p.norms.push_back(norms[i]);
    }
    return p;
  };

  const GrowthThresholds t{2.0, 2.0, 0.0};

  std::vector<double> flat(64, 1.5);
  CHECK(classify_growth(profile_from(flat), t).verdict == GrowthVerdict::Bounded);

  std::vector<double> sqrtish;
  for (int n = 1; n <= 64; ++n) sqrtish.push_back(std::sqrt(double(n)));
  const auto proper = classify_growth(profile_from(sqrtish), t);
  CHECK(proper.verdict == GrowthVerdict::ProperLike);
  CHECK(proper.max_norm == doctest::Approx(8.0));

  // Large excursions with returns near zero: neither bounded nor proper.
  std::vector<double> osc;
  for (int n = 1; n <= 64; ++n) osc.push_back(double(n % 8));
  const auto neither = classify_growth(profile_from(osc), t);
  CHECK(neither.verdict == GrowthVerdict::NeitherLike);
  CHECK(neither.tail_min == doctest::Approx(0.0));

  // The verdict is invariant under a common rescaling.
  std::vector<double> osc_scaled;
  for (double x : osc) osc_scaled.push_back(1e6 * x);
  const GrowthThresholds ts{2.0e6, 2.0e6, 0.0};
  CHECK(classify_growth(profile_from(osc_scaled), ts).verdict == GrowthVerdict::NeitherLike);

  CHECK(default_thresholds(2.0).bound == doctest::Approx(20.0));
  CHECK(verdict_name(GrowthVerdict::Inconclusive) == "Inconclusive");
}

TEST_CASE("growth profile records labels") {
  AlgebraElement v(2);
  v.add_term(ReducedWord::identity(2), Complex(1.0));
  const auto m = coboundary_model(v);

  std::vector<ReducedWord> window;
  const auto s = ReducedWord::parse(2, "s");
  for (int n = 1; n <= 4; ++n) window.push_back(pow(s, n));
  const auto p = growth_profile(m, window);
  REQUIRE(p.labels.size() == 4);
  CHECK(p.labels[2] == "sss");
  CHECK(p.norms[0] == doctest::Approx(std::sqrt(2.0)));
}
