#include "doctest.h"

#include "cocyclelab/errors.hpp"
#include "cocyclelab/rng.hpp"
#include "cocyclelab/walls.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

using namespace cocyclelab;

namespace {

const char* kSquare = R"(
# four-cycle with a rotation
point p0
point p1
point p2
point p3
wall 1 p0,p1
wall 1 p1,p2
gen a p1 p2 p3 p0
)";

const char* kLine3 = R"(
point x0
point x1
point x2
wall 1 x0
wall 3 x0,x1
)";

}  // namespace

TEST_CASE("wall space parsing") {
  const auto ws = WallSpace::parse_text(kSquare);
  CHECK(ws.point_count() == 4);
  CHECK(ws.wall_count() == 2);
  CHECK(ws.rank() == 1);
  CHECK(ws.point_index("p2") == 2);
  CHECK(ws.point_id(0) == "p0");
  CHECK_THROWS_AS(ws.point_index("nope"), PreconditionError);

  CHECK_THROWS_AS(WallSpace::parse_text("point a\npoint a\n"), PreconditionError);
  CHECK_THROWS_AS(WallSpace::parse_text("point a\nwall 1 b\n"), PreconditionError);
  CHECK_THROWS_AS(WallSpace::parse_text("point a\npoint b\nwall 0 a\n"), PreconditionError);
  CHECK_THROWS_AS(WallSpace::parse_text("point a\npoint b\nwall 1 a,b\n"), PreconditionError);

  // The same bipartition encoded through the complementary class is a dup.
  CHECK_THROWS_AS(WallSpace::parse_text("point a\npoint b\npoint c\n"
                                        "wall 1 a\nwall 2 b,c\n"),
                  PreconditionError);

  // Generator names must be the canonical letters for the rank.
  CHECK_THROWS_AS(WallSpace::parse_text("point a\npoint b\nwall 1 a\ngen x b a\n"),
                  PreconditionError);

  // An action that breaks wall weights is rejected: swapping the endpoints
  // of the line sends the weight-1 wall to the weight-3 bipartition.
  CHECK_THROWS_AS(WallSpace::parse_text("point x0\npoint x1\npoint x2\n"
                                        "wall 1 x0\nwall 3 x0,x1\n"
                                        "gen a x2 x1 x0\n"),
                  PreconditionError);
}

TEST_CASE("wall distances on the cycle and the weighted line") {
  const auto sq = WallSpace::parse_text(kSquare);
  CHECK(wall_distance(sq, 0, 1) == 1.0);
  CHECK(wall_distance(sq, 0, 2) == 2.0);
  CHECK(wall_distance(sq, 0, 3) == 1.0);
  CHECK(wall_distance(sq, 1, 3) == 2.0);
  CHECK(wall_distance(sq, 2, 2) == 0.0);

  const auto ln = WallSpace::parse_text(kLine3);
  CHECK(wall_distance(ln, 0, 1) == 1.0);
  CHECK(wall_distance(ln, 1, 2) == 3.0);
  CHECK(wall_distance(ln, 0, 2) == 4.0);

  // Triangle inequality holds with equality along the line.
  CHECK(wall_distance(ln, 0, 2) == wall_distance(ln, 0, 1) + wall_distance(ln, 1, 2));

  // ||c(x,y)||_p^p equals the distance exactly, for every p and pair.
  for (const auto* ws : {&sq, &ln})
    for (double p : {1.0, 1.5, 2.0, 4.0})
      for (int x = 0; x < ws->point_count(); ++x)
        for (int y = 0; y < ws->point_count(); ++y)
          CHECK(wall_norm(*ws, x, y, p) == wall_distance(*ws, x, y));
}

TEST_CASE("wall cocycle of the rotation action") {
  const auto sq = WallSpace::parse_text(kSquare);
  const WallCocycleModel m(sq, 0, 2.0);

  const auto a = ReducedWord::generator(1, 1);
  CHECK(m.norm_pp(evaluate_cocycle(m, a)) == 1.0);
  CHECK(m.norm_pp(evaluate_cocycle(m, pow(a, 2))) == 2.0);
  CHECK(m.norm_pp(evaluate_cocycle(m, pow(a, 3))) == 1.0);
  CHECK(m.norm_pp(evaluate_cocycle(m, pow(a, 4))) == 0.0);
  CHECK(m.norm_pp(evaluate_cocycle(m, pow(a, -6))) == 2.0);

  // Integer coordinates: the cocycle identity is exact.
  const auto ball = Ball::enumerate(1, 3);
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = 0; j < ball.size(); ++j)
      CHECK(cocycle_identity_residual(m, ball.word(i), ball.word(j)) == 0.0);

  // The action permutes points as declared.
  CHECK(sq.act_point(a, 0) == 1);
  CHECK(sq.act_point(pow(a, -1), 1) == 0);
  CHECK(sq.act_point(pow(a, 4), 2) == 2);
}

TEST_CASE("tree cocycle norm law") {
  for (double p : {1.0, 2.0, 4.0}) {
    const TreeCocycleModel m(2, p);
    const auto ball = Ball::enumerate(2, 4);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const auto g = ball.word(i);
      CHECK(m.norm_pp(evaluate_cocycle(m, g)) == double(g.length()));
    }
  }

  // Rank one: the tree is a line.
  const TreeCocycleModel line(1, 3.0);
  for (int n = -5; n <= 5; ++n) {
    const auto g = pow(ReducedWord::generator(1, 1), n);
    CHECK(line.norm_pp(evaluate_cocycle(line, g)) == double(std::abs(n)));
  }

  // Exact identity on integer coordinates.
  const TreeCocycleModel m2(2, 2.0);
  Rng rng(5);
  const auto ball = Ball::enumerate(2, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = ball.word(std::size_t(rng.next_int(0, int(ball.size()) - 1)));
    const auto h = ball.word(std::size_t(rng.next_int(0, int(ball.size()) - 1)));
    CHECK(cocycle_identity_residual(m2, g, h) == 0.0);
  }

  const auto profile =
      tree_cocycle_growth(2, 3, 2.0, std::vector<ReducedWord>{ReducedWord::parse(2, "sts")});
  CHECK(profile.norms[0] == doctest::Approx(std::sqrt(3.0)));
  const std::vector<ReducedWord> outside{ReducedWord::parse(2, "ststst")};
  CHECK_THROWS_AS(tree_cocycle_growth(2, 3, 2.0, outside), PreconditionError);
}

TEST_CASE("gradient inequality") {
  // f = delta_e, g = s: displacement 2^{1/p}, gradient side 4^{1/p}.
  for (double p : {1.0, 2.0}) {
    std::map<ReducedWord, double> f{{ReducedWord::identity(2), 1.0}};
    const auto check = gradient_cocycle(2, f, ReducedWord::parse(2, "s"), p, 6);
    CHECK(check.lhs == doctest::Approx(std::pow(2.0, 1.0 / p)));
    CHECK(check.rhs == doctest::Approx(std::pow(4.0, 1.0 / p)));
    CHECK(check.holds);
  }

  // g = e gives zero displacement.
  std::map<ReducedWord, double> f{{ReducedWord::parse(2, "st"), 2.0}};
  const auto idcheck = gradient_cocycle(2, f, ReducedWord::identity(2), 2.0, 6);
  CHECK(idcheck.lhs == 0.0);
  CHECK(idcheck.holds);

  // Random supported functions: the inequality never fails.
  Rng rng(31);
  const auto ball = Ball::enumerate(2, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<ReducedWord, double> h;
    const int terms = rng.next_int(1, 5);
    for (int k = 0; k < terms; ++k)
      h[ball.word(std::size_t(rng.next_int(0, int(ball.size()) - 1)))] =
          2 * rng.next_double() - 1;
    auto g = ReducedWord::identity(2);
    const int len = rng.next_int(0, 2);
    for (int k = 0; k < len; ++k)
      g = g * ReducedWord::generator(2, rng.next_int(1, 2), rng.next_int(0, 1) ? 1 : -1);
    const double p = rng.next_int(0, 1) ? 1.0 : 2.0;
    const auto chk = gradient_cocycle(2, h, g, p, 8);
    CHECK(chk.holds);
    CHECK(chk.lhs <= chk.rhs + 1e-12);
  }

  // Support too close to the stated radius is refused.
  std::map<ReducedWord, double> wide{{ReducedWord::parse(2, "ststs"), 1.0}};
  CHECK_THROWS_AS(gradient_cocycle(2, wide, ReducedWord::parse(2, "s"), 2.0, 6),
                  PreconditionError);
}
