#include "doctest.h"

#include "cocyclelab/amalgam.hpp"
#include "cocyclelab/errors.hpp"
#include "cocyclelab/fox.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace cocyclelab;

TEST_CASE("normal form in Z * C_2") {
  const auto e = ZC2Element::identity();
  const auto h = ZC2Element::h(1);
  const auto k = ZC2Element::k();

  CHECK((ZC2Element::h(2) * ZC2Element::h(-2)).is_identity());
  CHECK((k * k).is_identity());
  CHECK((h * k).str() == "h1.k");
  CHECK((h * k) != (k * h));
  CHECK((h * k).inverse().str() == "k.h-1");
  CHECK(((h * k) * (h * k).inverse()).is_identity());
  CHECK(ZC2Element::h(3).length() == 3);
  CHECK(ZC2Element::h(-2).str() == "h-2");
  CHECK(k.length() == 1);
  CHECK(e.str() == "e");
  CHECK((ZC2Element::h(2) * k * ZC2Element::h(-1)).length() == 4);
}

TEST_CASE("ball enumeration matches brute force") {
  CHECK(zc2_ball(0).size() == 1);
  CHECK(zc2_ball(1).size() == 4);

  // Independent breadth-first sweep over the generating set {h, h^-1, k}.
  std::set<ZC2Element> frontier{ZC2Element::identity()}, all{ZC2Element::identity()};
  for (int step = 0; step < 4; ++step) {
    std::set<ZC2Element> next;
    for (const auto& g : frontier)
      for (const auto& x : {ZC2Element::h(1), ZC2Element::h(-1), ZC2Element::k()}) {
        const auto y = g * x;
        if (all.insert(y).second) next.insert(y);
      }
    frontier = std::move(next);
  }
  const auto ball = zc2_ball(4);
  CHECK(ball.size() == all.size());
  for (const auto& g : ball) {
    CHECK(all.count(g) == 1);
    CHECK(g.length() <= 4);
  }
}

TEST_CASE("twisted amalgam cocycle") {
  const ZC2AmalgamCocycle c;

  CHECK(zc2_norm(c.evaluate(ZC2Element::k())) == 0.0);
  CHECK(zc2_norm(c.evaluate(ZC2Element::identity())) == 0.0);

  // b(h^n) = w - lambda(h^n) w has norm sqrt(2) ||w|| exactly for n != 0.
  for (long n : {1L, -1L, 2L, 5L, -7L}) {
    const auto b = c.evaluate(ZC2Element::h(n));
    CHECK(zc2_norm(b) == std::sqrt(2.0));
  }

  // The affine action of the conjugated generator fixes the twist vector;
  // the plain generator k moves it.
  const auto w = c.twist();
  for (long n : {1L, -1L, 3L}) {
    const auto moved = c.affine(ZC2Element::h(n), w);
    CHECK(zc2_norm(zc2_add(moved, zc2_scale(Complex(-1.0), w))) == 0.0);
  }
  const auto kmoved = c.affine(ZC2Element::k(), w);
  CHECK(zc2_norm(zc2_add(kmoved, zc2_scale(Complex(-1.0), w))) != 0.0);

  // Cocycle identity holds exactly on integer data.
  const auto ball = zc2_ball(3);
  for (const auto& g : ball)
    for (const auto& h : ball) CHECK(c.identity_residual(g, h) == 0.0);

  // A twist fixed by lambda(k) is rejected.
  auto bad = zc2_delta(ZC2Element::identity());
  bad = zc2_add(bad, zc2_delta(ZC2Element::k()));
  CHECK_THROWS_AS(ZC2AmalgamCocycle(std::move(bad)), PreconditionError);
}

TEST_CASE("amalgam normal form and arithmetic") {
  const auto w = ReducedWord::parse(2, "stST");
  const AmalgamOverZ gamma(2, w, 2, w);

  // Powers of the amalgamated word decompose with trivial representative.
  const auto d3 = gamma.decompose(0, pow(w, 3));
  CHECK(d3.first.is_identity());
  CHECK(d3.second == 3);

  const auto s = ReducedWord::parse(2, "s");
  const auto ds = gamma.decompose(0, s * pow(w, 2));
  CHECK(ds.first == s);
  CHECK(ds.second == 2);

  // embed respects powers of w: pure z-power element.
  const auto zw = gamma.embed(0, pow(w, 2));
  CHECK(zw.syllables.empty());
  CHECK(zw.zexp == 2);

  // Group axioms on a batch of mixed elements.
  std::vector<AmalgamOverZ::Element> els;
  for (const char* xa : {"s", "t", "ST", "e"})
    for (const char* xb : {"t", "Ts", "e"}) {
      const auto g = gamma.mul(gamma.embed(0, ReducedWord::parse(2, xa)),
                               gamma.embed(1, ReducedWord::parse(2, xb)));
      els.push_back(g);
    }
  for (const auto& g : els) {
    CHECK(gamma.mul(g, gamma.inv(g)).is_identity());
    CHECK(gamma.mul(gamma.inv(g), g).is_identity());
    CHECK(gamma.mul(g, gamma.identity()) == g);
  }
  for (const auto& a : els)
    for (const auto& b : els)
      for (const auto& c : {els[0], els[5]})
        CHECK(gamma.mul(gamma.mul(a, b), c) == gamma.mul(a, gamma.mul(b, c)));

  CHECK(gamma.identity().str() == "e");
}

TEST_CASE("glued cocycle pushes the defect into the amalgam") {
  const auto w = ReducedWord::parse(2, "stST");
  const auto vc = build_vanishing_cocycle(w, 2);
  const AmalgamOverZ gamma(2, w, 2, w);
  const GluedCocycle glued(gamma, vc.model);

  // The defect across the amalgamated element is exactly the base norm at w.
  CHECK(glued.consistency_residual() == doctest::Approx(vc.reported_norm).epsilon(1e-10));

  // Pure B elements cost nothing.
  for (const char* x : {"t", "sT", "tt"})
    CHECK(gamma_norm(glued.evaluate(gamma.embed(1, ReducedWord::parse(2, x)))) == 0.0);

  // Products that extract a fresh power of the amalgamated word expose the
  // defect; its size is exactly the consistency residual.
  const auto g = gamma.embed(0, ReducedWord::parse(2, "T"));
  const auto h = gamma.embed(0, ReducedWord::parse(2, "S"));
  CHECK(glued.identity_residual(g, h) ==
        doctest::Approx(glued.consistency_residual()).epsilon(1e-8));

  double max_resid = 0.0;
  for (const char* a : {"s", "S", "t", "T"})
    for (const char* b : {"s", "S", "t", "T"})
      max_resid = std::max(max_resid, glued.identity_residual(
                                          gamma.embed(0, ReducedWord::parse(2, a)),
                                          gamma.embed(0, ReducedWord::parse(2, b))));
  CHECK(max_resid == doctest::Approx(glued.consistency_residual()).epsilon(1e-8));

  // Pairs whose normal forms rewrite the same way cancel the defect exactly:
  // ts * TS falls into the z line, with both routes rewriting through ST.
  const auto p1 = gamma.embed(0, ReducedWord::parse(2, "ts"));
  const auto p2 = gamma.embed(0, ReducedWord::parse(2, "TS"));
  CHECK(gamma.mul(p1, p2).syllables.empty());
  CHECK(glued.identity_residual(p1, p2) <= 1e-12);

  // Pairs staying inside the A factor satisfy the identity up to roundoff.
  const auto a1 = gamma.embed(0, ReducedWord::parse(2, "s"));
  const auto a2 = gamma.embed(0, ReducedWord::parse(2, "tS"));
  CHECK(glued.identity_residual(a1, a2) <= 1e-12);
}

TEST_CASE("surface group data") {
  const auto d2 = surface_group_data(2);
  CHECK(d2.genus == 2);
  CHECK(d2.rank_a == 2);
  CHECK(d2.rank_b == 2);
  CHECK(d2.w.length() == 4);
  CHECK(d2.v.length() == 4);
  CHECK(d2.w.rank() == 2);

  const auto d3 = surface_group_data(3);
  CHECK(d3.rank_b == 4);
  CHECK(d3.v.length() == 8);
  CHECK(d3.v.rank() == 4);

  CHECK_THROWS_AS(surface_group_data(1), PreconditionError);
}
