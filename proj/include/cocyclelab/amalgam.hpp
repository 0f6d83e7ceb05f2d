#pragma once

#include <compare>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cocyclelab/algebra.hpp"
#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/freegroup.hpp"

namespace cocyclelab {

// Element of Z * C_2 = <h> * <k | k^2> in alternating normal form: a token
// list mixing nonzero h-runs and single k's, with no two h-runs adjacent and
// no two k's adjacent.
class ZC2Element {
 public:
  ZC2Element() = default;

  static ZC2Element identity() { return {}; }
  static ZC2Element h(long n);
  static ZC2Element k();

  bool is_identity() const { return tokens_.empty(); }
  // Word length with respect to {h, h^-1, k}.
  long length() const;

  ZC2Element operator*(const ZC2Element& rhs) const;
  ZC2Element inverse() const;

  friend bool operator==(const ZC2Element&, const ZC2Element&) = default;
  std::strong_ordering operator<=>(const ZC2Element& rhs) const = default;

  // "e", "h3", "h-2.k.h1", "k"
  std::string str() const;

  struct Token {
    char kind;  // 'h' or 'k'
    long run;   // exponent for 'h', unused for 'k'
    friend bool operator==(const Token&, const Token&) = default;
    std::strong_ordering operator<=>(const Token&) const = default;
  };
  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void push(Token t);
  std::vector<Token> tokens_;
};

using ZC2Vector = std::map<ZC2Element, Complex>;

ZC2Vector zc2_delta(const ZC2Element& g, Complex c = 1.0);
ZC2Vector zc2_translate(const ZC2Element& g, const ZC2Vector& v);  // lambda(g) v
ZC2Vector zc2_add(ZC2Vector a, const ZC2Vector& b);
ZC2Vector zc2_scale(Complex c, ZC2Vector v);
double zc2_norm(const ZC2Vector& v);

// Elements of word length at most radius, breadth-first by length with a
// deterministic order inside each length.
std::vector<ZC2Element> zc2_ball(int radius);

// Cocycle for the action of Z * C_2 twisted by a vector w: the generator k
// acts plainly, b(k) = 0, while h is conjugated by the translation t_w, so
// b(h^n) = w - lambda(h^n) w. w defaults to delta_e; it must move under
// lambda(k), otherwise the twist is trivial on the k side too.
class ZC2AmalgamCocycle {
 public:
  explicit ZC2AmalgamCocycle(ZC2Vector w = zc2_delta(ZC2Element::identity()));

  const ZC2Vector& twist() const { return w_; }

  ZC2Vector evaluate(const ZC2Element& g) const;
  // alpha(g) v = lambda(g) v + b(g)
  ZC2Vector affine(const ZC2Element& g, const ZC2Vector& v) const;
  double identity_residual(const ZC2Element& g, const ZC2Element& h) const;

 private:
  ZC2Vector w_;
};

// Free factors A = F_ra, B = F_rb glued along <w> = <v>, both words
// nontrivial. Elements carry the right-normal form c_1 ... c_r z^n with
// alternating coset representatives (minimal length, shortlex ties) and the
// amalgamated power pushed to the right.
class AmalgamOverZ {
 public:
  AmalgamOverZ(int rank_a, ReducedWord w, int rank_b, ReducedWord v);

  struct Syllable {
    int factor;  // 0 = A, 1 = B
    ReducedWord word;
    friend bool operator==(const Syllable&, const Syllable&) = default;
    std::strong_ordering operator<=>(const Syllable&) const = default;
  };

  struct Element {
    std::vector<Syllable> syllables;
    long zexp = 0;
    bool is_identity() const { return syllables.empty() && zexp == 0; }
    friend bool operator==(const Element&, const Element&) = default;
    std::strong_ordering operator<=>(const Element&) const = default;
    std::string str() const;
  };

  int rank_a() const { return rank_a_; }
  int rank_b() const { return rank_b_; }
  const ReducedWord& w() const { return w_; }
  const ReducedWord& v() const { return v_; }

  Element identity() const { return Element{}; }
  Element embed(int factor, const ReducedWord& x) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;

  // y = rep * u^n with rep the canonical representative of y<u>; rep is the
  // identity exactly when y is a power of u.
  std::pair<ReducedWord, long> decompose(int factor, const ReducedWord& y) const;

 private:
  const ReducedWord& amalgamated(int factor) const { return factor == 0 ? w_ : v_; }
  void push_syllable(Element& e, int factor, ReducedWord x) const;

  int rank_a_, rank_b_;
  ReducedWord w_, v_;
};

using GammaVector = std::map<AmalgamOverZ::Element, Complex>;

double gamma_norm(const GammaVector& v);

// Base cocycle on A = F_ra transported to the amalgam: A-syllables evaluate
// through the base cocycle with l^2(A) embedded along coset representatives,
// B-syllables contribute zero. The two routes across the amalgamated element
// differ by the base residual ||b(w)||, which is the whole point of the
// construction: the defect is pushed into an arbitrarily small translation.
class GluedCocycle {
 public:
  struct Factor {
    int factor;  // 0 = A, 1 = B
    ReducedWord word;
  };

  GluedCocycle(AmalgamOverZ amalgam, RegularCocycleModel base);

  const AmalgamOverZ& amalgam() const { return amalgam_; }

  GammaVector evaluate(std::span<const Factor> factors) const;
  // Canonical route: syllables as written, the z-power through the B side.
  GammaVector evaluate(const AmalgamOverZ::Element& g) const;

  double identity_residual(const AmalgamOverZ::Element& g, const AmalgamOverZ::Element& h) const;
  // || b([w]_A) - b([v]_B) ||; equals the base residual at w.
  double consistency_residual() const;

 private:
  GammaVector lift(const AlgebraElement& f) const;
  GammaVector translate(const AmalgamOverZ::Element& g, const GammaVector& v) const;

  AmalgamOverZ amalgam_;
  RegularCocycleModel base_;
};

// Genus-g surface group as F_2 glued to F_{2g-2} over a single relator-piece:
// w = [a_1, b_1]^{-1} in F_2, v = prod_{j=2}^{g} [a_j, b_j] in F_{2g-2}.
struct SurfaceData {
  int genus = 2;
  int rank_a = 2;
  int rank_b = 2;
  ReducedWord w = ReducedWord::identity(2);
  ReducedWord v = ReducedWord::identity(2);
};

SurfaceData surface_group_data(int genus);

}  // namespace cocyclelab
