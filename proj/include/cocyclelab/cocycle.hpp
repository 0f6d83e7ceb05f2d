#pragma once

#include <Eigen/Dense>
#include <concepts>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cocyclelab/algebra.hpp"
#include "cocyclelab/errors.hpp"
#include "cocyclelab/freegroup.hpp"

namespace cocyclelab {

// A 1-cocycle b for an action pi of F_k, given by its values on generators
// and the action of single letters on the carrier. Everything else follows
// from b(gh) = b(g) + pi(g) b(h):
//
//   b(l_1 ... l_m) = sum_j pi(l_1 ... l_{j-1}) b(l_j),  b(x^-1) = -pi(x^-1) b(x).
//
// Models plug in different carriers: sparse l^2(F_k) with the regular
// representation, diagonal unitaries on C^d, signed permutations on
// half-space coordinates.
template <typename M>
concept CocycleModel = requires(const M& m, const Letter& l, const typename M::Vector& v) {
  typename M::Vector;
  { m.rank() } -> std::convertible_to<int>;
  { m.generator_value(1) } -> std::convertible_to<typename M::Vector>;
  { m.act(l, v) } -> std::convertible_to<typename M::Vector>;
  { m.add(v, v) } -> std::convertible_to<typename M::Vector>;
  { m.negate(v) } -> std::convertible_to<typename M::Vector>;
  { m.zero() } -> std::convertible_to<typename M::Vector>;
  { m.norm(v) } -> std::convertible_to<double>;
};

namespace detail {
template <CocycleModel M>
typename M::Vector letter_value(const M& m, const Letter& l) {
  if (l.exp > 0) return m.generator_value(l.gen);
  return m.negate(m.act(l, m.generator_value(l.gen)));
}
}  // namespace detail

// pi(g) v, one letter at a time.
template <CocycleModel M>
typename M::Vector act_word(const M& m, const ReducedWord& g, typename M::Vector v) {
  const auto& ls = g.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) v = m.act(*it, v);
  return v;
}

template <CocycleModel M>
typename M::Vector evaluate_cocycle(const M& m, const ReducedWord& g) {
  if (g.rank() != m.rank()) throw PreconditionError("rank mismatch in cocycle evaluation");
  typename M::Vector acc = m.zero();
  const auto& ls = g.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it)
    acc = m.add(detail::letter_value(m, *it), m.act(*it, acc));
  return acc;
}

// || b(gh) - b(g) - pi(g) b(h) ||. Always 0 up to roundoff; integer-valued
// models give exactly 0.
template <CocycleModel M>
double cocycle_identity_residual(const M& m, const ReducedWord& g, const ReducedWord& h) {
  auto lhs = evaluate_cocycle(m, g * h);
  auto rhs = m.add(evaluate_cocycle(m, g), act_word(m, g, evaluate_cocycle(m, h)));
  return m.norm(m.add(lhs, m.negate(rhs)));
}

// Norms ||b(g)|| for a window of group elements, in the order given.
struct GrowthProfile {
  std::vector<std::string> labels;
  std::vector<double> norms;
};

template <CocycleModel M>
GrowthProfile growth_profile(const M& m, std::span<const ReducedWord> elements) {
  GrowthProfile p;
  p.labels.reserve(elements.size());
  p.norms.reserve(elements.size());
  for (const ReducedWord& g : elements) {
    p.labels.push_back(g.str());
    p.norms.push_back(m.norm(evaluate_cocycle(m, g)));
  }
  return p;
}

// Heuristic growth verdicts. These inspect a finite window and are explicitly
// marked as heuristics everywhere they surface; they never override an exact
// statement.
enum class GrowthVerdict { Bounded, ProperLike, NeitherLike, Inconclusive };

std::string verdict_name(GrowthVerdict v);

struct GrowthThresholds {
  double bound;        // Bounded iff max norm <= bound
  double recurrence;   // NeitherLike needs tail minimum <= recurrence
  double trend = 0.0;  // ProperLike needs tail-minimum slope > trend
};

// Scale-aware defaults: ten times the largest generator value norm.
GrowthThresholds default_thresholds(double generator_scale);

struct GrowthClassification {
  GrowthVerdict verdict;
  double max_norm;        // over the whole window
  double tail_min;        // min norm over the last half of the window
  double tail_min_slope;  // least-squares slope of running tail minima, last half
};

// Decision order: Bounded, then ProperLike (tail minima trending up), then
// NeitherLike (max beyond bound while the tail keeps returning below the
// recurrence level), else Inconclusive. Invariant under rescaling all norms
// and thresholds by the same positive constant.
GrowthClassification classify_growth(const GrowthProfile& profile, const GrowthThresholds& t);

// Cocycle on F_k with values in l^2(F_k) and the left regular representation.
class RegularCocycleModel {
 public:
  using Vector = AlgebraElement;

  RegularCocycleModel(int rank, std::vector<AlgebraElement> generator_values);

  int rank() const { return rank_; }
  const Vector& generator_value(int gen) const;
  Vector act(const Letter& l, const Vector& v) const;
  Vector add(const Vector& a, const Vector& b) const { return a + b; }
  Vector negate(Vector v) const { return std::move(v *= Complex(-1.0)); }
  Vector zero() const { return AlgebraElement(rank_); }
  double norm(const Vector& v) const { return v.norm(); }

  double max_generator_norm() const;

 private:
  int rank_;
  std::vector<AlgebraElement> values_;
};

// Cocycle on Z = F_1 with values in C^d, the generator acting as the diagonal
// unitary with the given angles.
class DiagonalCocycleModel {
 public:
  using Vector = Eigen::VectorXcd;

  DiagonalCocycleModel(Eigen::VectorXd angles, Eigen::VectorXcd translation);

  int rank() const { return 1; }
  const Vector& generator_value(int) const { return translation_; }
  Vector act(const Letter& l, const Vector& v) const;
  Vector add(const Vector& a, const Vector& b) const { return a + b; }
  Vector negate(const Vector& v) const { return -v; }
  Vector zero() const { return Vector::Zero(translation_.size()); }
  double norm(const Vector& v) const { return v.norm(); }

 private:
  Eigen::VectorXd angles_;
  Eigen::VectorXcd phases_;  // e^{i angle}
  Eigen::VectorXcd translation_;
};

}  // namespace cocyclelab
