#include "cocyclelab/amalgam.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

template <typename Key>
void add_into(std::map<Key, Complex>& target, const Key& key, Complex c) {
  auto [it, inserted] = target.try_emplace(key, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0.0)) target.erase(it);
}

template <typename Key>
double map_norm(const std::map<Key, Complex>& v) {
  double s = 0.0;
  for (const auto& [key, c] : v) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

ZC2Element ZC2Element::h(long n) {
  ZC2Element e;
  e.push({'h', n});
  return e;
}

ZC2Element ZC2Element::k() {
  ZC2Element e;
  e.push({'k', 0});
  return e;
}

void ZC2Element::push(Token t) {
  if (t.kind == 'h' && t.run == 0) return;
  if (!tokens_.empty()) {
    Token& top = tokens_.back();
    if (top.kind == 'h' && t.kind == 'h') {
      top.run += t.run;
      if (top.run == 0) tokens_.pop_back();
      return;
    }
    if (top.kind == 'k' && t.kind == 'k') {
      tokens_.pop_back();
      return;
    }
  }
  tokens_.push_back(t);
}

long ZC2Element::length() const {
  long n = 0;
  for (const Token& t : tokens_) n += t.kind == 'h' ? std::labs(t.run) : 1;
  return n;
}

ZC2Element ZC2Element::operator*(const ZC2Element& rhs) const {
  ZC2Element out = *this;
  for (const Token& t : rhs.tokens_) out.push(t);
  return out;
}

ZC2Element ZC2Element::inverse() const {
  ZC2Element out;
  for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it)
    out.push(it->kind == 'h' ? Token{'h', -it->run} : *it);
  return out;
}

std::string ZC2Element::str() const {
  if (tokens_.empty()) return "e";
  std::ostringstream os;
  bool first = true;
  for (const Token& t : tokens_) {
    if (!first) os << '.';
    first = false;
    if (t.kind == 'h')
      os << 'h' << t.run;
    else
      os << 'k';
  }
  return os.str();
}

ZC2Vector zc2_delta(const ZC2Element& g, Complex c) {
  ZC2Vector v;
  if (c != Complex(0.0)) v.emplace(g, c);
  return v;
}

ZC2Vector zc2_translate(const ZC2Element& g, const ZC2Vector& v) {
  ZC2Vector out;
  for (const auto& [key, c] : v) out.emplace(g * key, c);
  return out;
}

ZC2Vector zc2_add(ZC2Vector a, const ZC2Vector& b) {
  for (const auto& [key, c] : b) add_into(a, key, c);
  return a;
}

ZC2Vector zc2_scale(Complex c, ZC2Vector v) {
  if (c == Complex(0.0)) return {};
  for (auto& [key, coeff] : v) coeff *= c;
  return v;
}

double zc2_norm(const ZC2Vector& v) { return map_norm(v); }

std::vector<ZC2Element> zc2_ball(int radius) {
  if (radius < 0) throw PreconditionError("ball radius must be nonnegative");
  std::set<ZC2Element> seen;
  std::vector<ZC2Element> out;
  std::vector<ZC2Element> frontier{ZC2Element::identity()};
  seen.insert(frontier[0]);
  out.push_back(frontier[0]);
  const ZC2Element gens[] = {ZC2Element::h(1), ZC2Element::h(-1), ZC2Element::k()};
  for (int r = 1; r <= radius; ++r) {
    std::set<ZC2Element> next;
    for (const ZC2Element& g : frontier)
      for (const ZC2Element& s : gens) {
        ZC2Element cand = g * s;
        if (!seen.contains(cand)) next.insert(cand);
      }
    frontier.assign(next.begin(), next.end());
    for (const ZC2Element& g : frontier) {
      seen.insert(g);
      out.push_back(g);
    }
  }
  return out;
}

ZC2AmalgamCocycle::ZC2AmalgamCocycle(ZC2Vector w) : w_(std::move(w)) {
  std::erase_if(w_, [](const auto& term) { return term.second == Complex(0.0); });
  if (w_.empty()) throw PreconditionError("twist vector must be nonzero");
  if (zc2_translate(ZC2Element::k(), w_) == w_)
    throw PreconditionError("twist vector must move under the order-two generator");
}

ZC2Vector ZC2AmalgamCocycle::evaluate(const ZC2Element& g) const {
  ZC2Vector acc;
  const auto& toks = g.tokens();
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    ZC2Element syll = it->kind == 'h' ? ZC2Element::h(it->run) : ZC2Element::k();
    acc = zc2_translate(syll, acc);
    if (it->kind == 'h') {
      // b(h^n) = w - lambda(h^n) w
      acc = zc2_add(std::move(acc), w_);
      acc = zc2_add(std::move(acc), zc2_scale(-1.0, zc2_translate(syll, w_)));
    }
  }
  return acc;
}

ZC2Vector ZC2AmalgamCocycle::affine(const ZC2Element& g, const ZC2Vector& v) const {
  return zc2_add(zc2_translate(g, v), evaluate(g));
}

double ZC2AmalgamCocycle::identity_residual(const ZC2Element& g, const ZC2Element& h) const {
  ZC2Vector lhs = evaluate(g * h);
  ZC2Vector rhs = zc2_add(evaluate(g), zc2_translate(g, evaluate(h)));
  return zc2_norm(zc2_add(std::move(lhs), zc2_scale(-1.0, std::move(rhs))));
}

AmalgamOverZ::AmalgamOverZ(int rank_a, ReducedWord w, int rank_b, ReducedWord v)
    : rank_a_(rank_a), rank_b_(rank_b), w_(std::move(w)), v_(std::move(v)) {
  if (rank_a_ < 1 || rank_b_ < 1) throw PreconditionError("factor ranks must be at least 1");
  if (w_.rank() != rank_a_ || v_.rank() != rank_b_)
    throw PreconditionError("amalgamated words must live in their own factors");
  if (w_.is_identity() || v_.is_identity())
    throw PreconditionError("amalgamated words must be nontrivial");
}

std::pair<ReducedWord, long> AmalgamOverZ::decompose(int factor, const ReducedWord& y) const {
  const ReducedWord& u = amalgamated(factor);
  // |u^n| >= |n| - 2|u|, so coset members shorter than y force a small n.
  const long reach = 2 * static_cast<long>(y.length()) + static_cast<long>(u.length()) + 2;
  ReducedWord best = y;
  long best_n = 0;
  ReducedWord cand = y * pow(u, reach);  // n = -reach
  for (long n = -reach; n <= reach; ++n) {
    bool better = cand.length() < best.length() ||
                  (cand.length() == best.length() && cand < best);
    if (n != 0 && better) {
      best = cand;
      best_n = n;
    }
    cand = cand * u.inverse();
  }
  if (y.length() < best.length() || (y.length() == best.length() && y < best)) {
    best = y;
    best_n = 0;
  }
  return {best, best_n};
}

void AmalgamOverZ::push_syllable(Element& e, int factor, ReducedWord x) const {
  const ReducedWord& u = amalgamated(factor);
  ReducedWord y = pow(u, e.zexp) * x;
  e.zexp = 0;
  while (!e.syllables.empty() && e.syllables.back().factor == factor) {
    y = e.syllables.back().word * y;
    e.syllables.pop_back();
  }
  auto [rep, n] = decompose(factor, y);
  if (!rep.is_identity()) {
    e.syllables.push_back({factor, std::move(rep)});
    e.zexp = n;
    return;
  }
  if (e.syllables.empty()) {
    e.zexp = n;
    return;
  }
  // The syllable collapsed into the edge group; fold z^n into the other side.
  Syllable top = std::move(e.syllables.back());
  e.syllables.pop_back();
  push_syllable(e, top.factor, top.word * pow(amalgamated(top.factor), n));
}

AmalgamOverZ::Element AmalgamOverZ::embed(int factor, const ReducedWord& x) const {
  if (factor != 0 && factor != 1) throw PreconditionError("factor index must be 0 or 1");
  if (x.rank() != (factor == 0 ? rank_a_ : rank_b_))
    throw PreconditionError("word rank does not match the chosen factor");
  Element out;
  push_syllable(out, factor, x);
  return out;
}

AmalgamOverZ::Element AmalgamOverZ::mul(const Element& a, const Element& b) const {
  Element out = a;
  for (const Syllable& s : b.syllables) push_syllable(out, s.factor, s.word);
  out.zexp += b.zexp;
  return out;
}

AmalgamOverZ::Element AmalgamOverZ::inv(const Element& a) const {
  Element out;
  out.zexp = -a.zexp;
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it)
    push_syllable(out, it->factor, it->word.inverse());
  return out;
}

std::string AmalgamOverZ::Element::str() const {
  if (is_identity()) return "e";
  std::ostringstream os;
  bool first = true;
  for (const Syllable& s : syllables) {
    if (!first) os << '.';
    first = false;
    os << (s.factor == 0 ? "A:" : "B:") << s.word.str();
  }
  if (zexp != 0) {
    if (!first) os << '.';
    os << 'z' << zexp;
  }
  return os.str();
}

double gamma_norm(const GammaVector& v) { return map_norm(v); }

GluedCocycle::GluedCocycle(AmalgamOverZ amalgam, RegularCocycleModel base)
    : amalgam_(std::move(amalgam)), base_(std::move(base)) {
  if (base_.rank() != amalgam_.rank_a())
    throw PreconditionError("base cocycle must live on the A factor");
}

GammaVector GluedCocycle::lift(const AlgebraElement& f) const {
  GammaVector out;
  for (const auto& [word, c] : f.terms()) add_into(out, amalgam_.embed(0, word), c);
  return out;
}

GammaVector GluedCocycle::translate(const AmalgamOverZ::Element& g, const GammaVector& v) const {
  GammaVector out;
  for (const auto& [key, c] : v) out.emplace(amalgam_.mul(g, key), c);
  return out;
}

GammaVector GluedCocycle::evaluate(std::span<const Factor> factors) const {
  GammaVector acc;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    acc = translate(amalgam_.embed(it->factor, it->word), acc);
    if (it->factor == 0) {
      GammaVector val = lift(evaluate_cocycle(base_, it->word));
      for (const auto& [key, c] : val) add_into(acc, key, c);
    }
  }
  return acc;
}

GammaVector GluedCocycle::evaluate(const AmalgamOverZ::Element& g) const {
  std::vector<Factor> factors;
  factors.reserve(g.syllables.size() + 1);
  for (const auto& s : g.syllables) factors.push_back({s.factor, s.word});
  if (g.zexp != 0) factors.push_back({1, pow(amalgam_.v(), g.zexp)});
  return evaluate(std::span<const Factor>(factors));
}

double GluedCocycle::identity_residual(const AmalgamOverZ::Element& g,
                                       const AmalgamOverZ::Element& h) const {
  GammaVector lhs = evaluate(amalgam_.mul(g, h));
  GammaVector rhs = evaluate(g);
  for (const auto& [key, c] : translate(g, evaluate(h))) add_into(rhs, key, c);
  for (const auto& [key, c] : rhs) add_into(lhs, key, -c);
  return gamma_norm(lhs);
}

double GluedCocycle::consistency_residual() const {
  const Factor via_a[] = {{0, amalgam_.w()}};
  const Factor via_b[] = {{1, amalgam_.v()}};
  GammaVector diff = evaluate(std::span<const Factor>(via_a));
  for (const auto& [key, c] : evaluate(std::span<const Factor>(via_b))) add_into(diff, key, -c);
  return gamma_norm(diff);
}

SurfaceData surface_group_data(int genus) {
  if (genus < 2) throw PreconditionError("surface gluing needs genus at least 2");
  SurfaceData d;
  d.genus = genus;
  d.rank_a = 2;
  d.rank_b = 2 * genus - 2;
  d.w = ReducedWord::parse(2, "tsTS");  // [a1, b1]^{-1}
  std::vector<Letter> letters;
  letters.reserve(4 * (genus - 1));
  for (int j = 0; j + 1 < d.rank_b; j += 2) {
    letters.push_back({j + 1, +1});
    letters.push_back({j + 2, +1});
    letters.push_back({j + 1, -1});
    letters.push_back({j + 2, -1});
  }
  d.v = ReducedWord(d.rank_b, std::move(letters));
  return d;
}

}  // namespace cocyclelab
