#include "doctest.h"

#include "cocyclelab/errors.hpp"
#include "cocyclelab/freegroup.hpp"

#include <set>

using namespace cocyclelab;

TEST_CASE("parse and print round trip") {
  const auto w = ReducedWord::parse(2, "stS");
  CHECK(w.str() == "stS");
  CHECK(w.length() == 3);

  CHECK(ReducedWord::parse(2, "sS").is_identity());
  CHECK(ReducedWord::parse(2, "e").str() == "e");
  CHECK(ReducedWord::parse(2, "ab").str() == "st");
  CHECK(ReducedWord::parse(3, "abc").str() == "abc");
  CHECK(ReducedWord::parse(1, "aaA").str() == "a");

  CHECK_THROWS_AS(ReducedWord::parse(2, "c"), PreconditionError);
  CHECK_THROWS_AS(ReducedWord::parse(2, "s t"), PreconditionError);
  CHECK_THROWS_AS(ReducedWord::parse(0, "e"), PreconditionError);
}

TEST_CASE("free reduction is eager") {
  const auto s = ReducedWord::generator(2, 1);
  const auto t = ReducedWord::generator(2, 2);
  const auto S = ReducedWord::generator(2, 1, -1);

  CHECK((s * S).is_identity());
  CHECK((s * t * t.inverse()).str() == "s");
  CHECK((s * t).inverse().str() == "TS");
  CHECK(pow(s * t, 2).str() == "stst");
  CHECK(pow(s, -3).str() == "SSS");
  CHECK(pow(s, 0).is_identity());

  const auto w = ReducedWord::parse(2, "stST");
  CHECK((w * w.inverse()).is_identity());
}

TEST_CASE("mixing ranks is rejected") {
  const auto a2 = ReducedWord::generator(2, 1);
  const auto a3 = ReducedWord::generator(3, 1);
  CHECK_THROWS_AS(a2 * a3, PreconditionError);
}

TEST_CASE("shortlex order") {
  const auto e = ReducedWord::identity(2);
  const auto s = ReducedWord::parse(2, "s");
  const auto S = ReducedWord::parse(2, "S");
  const auto t = ReducedWord::parse(2, "t");
  const auto ss = ReducedWord::parse(2, "ss");

  CHECK(e < s);
  CHECK(s < S);
  CHECK(S < t);
  CHECK(t < ss);
  CHECK(s == ReducedWord::generator(2, 1));
}

TEST_CASE("ball enumeration") {
  const auto ball = Ball::enumerate(2, 2);
  CHECK(ball.size() == 17);
  CHECK(ball.word(0).is_identity());

  // Every element appears exactly once and index_of inverts word().
  std::set<ReducedWord> seen;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto w = ball.word(i);
    CHECK(w.length() <= 2);
    CHECK(seen.insert(w).second);
    CHECK(ball.index_of(w) == i);
  }

  CHECK(Ball::enumerate(2, 5).size() == 485);
  CHECK(Ball::enumerate(2, 6).size() == 1457);
  CHECK(Ball::enumerate(1, 3).size() == 7);
  CHECK(Ball::cardinality(2, 9) == 39365);
}
