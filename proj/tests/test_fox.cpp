#include "doctest.h"

#include "cocyclelab/errors.hpp"
#include "cocyclelab/fox.hpp"
#include "cocyclelab/rng.hpp"

#include <cstddef>
#include <vector>

using namespace cocyclelab;

namespace {

ReducedWord random_word(Rng& rng, int max_len) {
  auto w = ReducedWord::identity(2);
  const int len = rng.next_int(1, max_len);
  for (int i = 0; i < len; ++i)
    w = w * ReducedWord::generator(2, rng.next_int(1, 2), rng.next_int(0, 1) ? 1 : -1);
  return w;
}

RegularCocycleModel random_integer_model(Rng& rng) {
  const auto ball = Ball::enumerate(2, 2);
  std::vector<AlgebraElement> values;
  for (int gen = 0; gen < 2; ++gen) {
    AlgebraElement f(2);
    const int terms = rng.next_int(1, 3);
    for (int k = 0; k < terms; ++k) {
      const auto w = ball.word(std::size_t(rng.next_int(0, int(ball.size()) - 1)));
      const double c = double(rng.next_int(1, 3)) * (rng.next_int(0, 1) ? 1.0 : -1.0);
      f.add_term(w, Complex(c));
    }
    values.push_back(f);
  }
  return RegularCocycleModel(2, std::move(values));
}

}  // namespace

TEST_CASE("expansion coefficients of short words") {
  const auto e = ReducedWord::identity(2);
  const auto s = ReducedWord::parse(2, "s");

  // w = st: f_s = delta_e, f_t = delta_s.
  {
    const auto fs = fox_elements(ReducedWord::parse(2, "st"));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].term_count() == 1);
    CHECK(fs[0].coeff(e) == Complex(1.0));
    CHECK(fs[1].term_count() == 1);
    CHECK(fs[1].coeff(s) == Complex(1.0));
  }

  // w = s^-1: f_s = -delta_{s^-1}, f_t = 0.
  {
    const auto fs = fox_elements(ReducedWord::parse(2, "S"));
    CHECK(fs[0].coeff(ReducedWord::parse(2, "S")) == Complex(-1.0));
    CHECK(fs[0].term_count() == 1);
    CHECK(fs[1].is_zero());
  }

  // Commutator stST: f_s = delta_e - delta_{stS}, f_t = delta_s - delta_{stST}.
  {
    const auto fs = fox_elements(ReducedWord::parse(2, "stST"));
    CHECK(fs[0].coeff(e) == Complex(1.0));
    CHECK(fs[0].coeff(ReducedWord::parse(2, "stS")) == Complex(-1.0));
    CHECK(fs[1].coeff(s) == Complex(1.0));
    CHECK(fs[1].coeff(ReducedWord::parse(2, "stST")) == Complex(-1.0));
  }
}

TEST_CASE("term count equals word length") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = random_word(rng, 10);
    const auto fs = fox_elements(w);
    std::size_t total = 0;
    for (const auto& f : fs) total += f.term_count();
    CHECK(total == w.length());
  }
}

TEST_CASE("expansion identity is exact for integer data") {
  Rng rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const auto model = random_integer_model(rng);
    const auto w = random_word(rng, 8);
    CHECK(fox_identity_residual(model, w) == 0.0);
  }
}

TEST_CASE("near-kernel pairs with exact kernels") {
  // f1 = delta_e - delta_s has lambda(f1) xi = 0 unattainable on finite balls,
  // but the pair (f, -f) kills the diagonal vector exactly.
  AlgebraElement f = parse_algebra_element(2, "1*e,-1*s");
  AlgebraElement g = f;
  g *= Complex(-1.0);
  const auto r = null_pair_search(f, g, 2);
  CHECK(r.residual <= 1e-8);

  // (delta_e, delta_e): xi1 = -xi2 is an exact kernel vector.
  const auto id = parse_algebra_element(2, "1*e");
  const auto r2 = null_pair_search(id, id, 2);
  CHECK(r2.residual <= 1e-8);

  CHECK(r.norm1 * r.norm1 + r.norm2 * r.norm2 == doctest::Approx(1.0));
}

TEST_CASE("near-kernel residuals for the commutator") {
  const auto fs = fox_elements(ReducedWord::parse(2, "stST"));

  const auto r2 = null_pair_search(fs[0], fs[1], 2);
  CHECK(r2.radius == 2);
  CHECK(r2.residual == doctest::Approx(0.2962614074016481).epsilon(1e-8));

  const auto r3 = null_pair_search(fs[0], fs[1], 3);
  CHECK(r3.residual == doctest::Approx(0.1853246582287549).epsilon(1e-8));
  CHECK(r3.residual < r2.residual);
}

TEST_CASE("vanishing cocycle construction") {
  const auto vc = build_vanishing_cocycle(ReducedWord::parse(2, "stST"), 2);
  CHECK(vc.warnings.empty());
  CHECK(vc.reported_norm == doctest::Approx(vc.search.residual).epsilon(1e-10));
  CHECK(fox_identity_residual(vc.model, ReducedWord::parse(2, "stST")) <= 1e-12);

  CHECK_THROWS_AS(build_vanishing_cocycle(ReducedWord::parse(2, "ss"), 2), PreconditionError);
}

TEST_CASE("finite index subgroup data") {
  const auto gens = finite_index_generators(3);
  REQUIRE(gens.size() == 3);
  CHECK(gens[0] == ReducedWord::parse(2, "tt"));
  CHECK(gens[1] == ReducedWord::parse(2, "s"));
  CHECK(gens[2] == ReducedWord::parse(2, "tsT"));

  AlgebraElement f(2);
  f.add_term(ReducedWord::identity(2), Complex(1.0));
  f.add_term(ReducedWord::parse(2, "t"), Complex(2.0));
  f.add_term(ReducedWord::parse(2, "tt"), Complex(3.0));
  const auto even = coset_component(f, 2, 0);
  const auto odd = coset_component(f, 2, 1);
  CHECK(even.term_count() == 2);
  CHECK(even.coeff(ReducedWord::parse(2, "tt")) == Complex(3.0));
  CHECK(odd.term_count() == 1);
  CHECK(odd.coeff(ReducedWord::parse(2, "t")) == Complex(2.0));
}
