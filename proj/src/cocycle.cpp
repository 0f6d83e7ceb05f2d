#include "cocyclelab/cocycle.hpp"

#include <algorithm>
#include <cmath>

namespace cocyclelab {

std::string verdict_name(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Bounded: return "Bounded";
    case GrowthVerdict::ProperLike: return "ProperLike";
    case GrowthVerdict::NeitherLike: return "NeitherLike";
    case GrowthVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

GrowthThresholds default_thresholds(double generator_scale) {
  return GrowthThresholds{10.0 * generator_scale, 10.0 * generator_scale, 0.0};
}

GrowthClassification classify_growth(const GrowthProfile& profile, const GrowthThresholds& t) {
  const auto& ns = profile.norms;
  if (ns.empty()) throw PreconditionError("cannot classify an empty growth profile");

  const std::size_t n = ns.size();
  double max_norm = *std::max_element(ns.begin(), ns.end());

  // Running tail minima T_i = min_{j >= i} norm_j; nondecreasing in i.
  std::vector<double> tail(n);
  double run = ns.back();
  for (std::size_t i = n; i-- > 0;) {
    run = std::min(run, ns[i]);
    tail[i] = run;
  }

  const std::size_t half = n / 2;
  double tail_min = tail[half];

  // Least-squares slope of T over the last half of the window.
  double slope = 0.0;
  if (n - half >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = half; i < n; ++i) {
      double x = static_cast<double>(i);
      sx += x;
      sy += tail[i];
      sxx += x * x;
      sxy += x * tail[i];
    }
    double count = static_cast<double>(n - half);
    double denom = count * sxx - sx * sx;
    if (denom > 0) slope = (count * sxy - sx * sy) / denom;
  }

  GrowthVerdict verdict = GrowthVerdict::Inconclusive;
  if (max_norm <= t.bound)
    verdict = GrowthVerdict::Bounded;
  else if (tail_min <= t.recurrence)
    verdict = GrowthVerdict::NeitherLike;
  else if (slope > t.trend)
    verdict = GrowthVerdict::ProperLike;

  return GrowthClassification{verdict, max_norm, tail_min, slope};
}

RegularCocycleModel::RegularCocycleModel(int rank, std::vector<AlgebraElement> generator_values)
    : rank_(rank), values_(std::move(generator_values)) {
  if (static_cast<int>(values_.size()) != rank)
    throw PreconditionError("need one generator value per generator");
  for (const auto& v : values_)
    if (v.rank() != rank) throw PreconditionError("generator value rank mismatch");
}

const RegularCocycleModel::Vector& RegularCocycleModel::generator_value(int gen) const {
  if (gen < 1 || gen > rank_) throw PreconditionError("generator index out of range");
  return values_[static_cast<std::size_t>(gen - 1)];
}

RegularCocycleModel::Vector RegularCocycleModel::act(const Letter& l, const Vector& v) const {
  return AlgebraElement::delta(ReducedWord::generator(rank_, l.gen, l.exp)) * v;
}

double RegularCocycleModel::max_generator_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.norm());
  return m;
}

DiagonalCocycleModel::DiagonalCocycleModel(Eigen::VectorXd angles, Eigen::VectorXcd translation)
    : angles_(std::move(angles)), translation_(std::move(translation)) {
  if (angles_.size() != translation_.size())
    throw PreconditionError("angle and translation dimensions differ");
  phases_ = (Complex(0, 1) * angles_.cast<Complex>()).array().exp();
}

DiagonalCocycleModel::Vector DiagonalCocycleModel::act(const Letter& l, const Vector& v) const {
  if (l.exp > 0) return phases_.cwiseProduct(v);
  return phases_.conjugate().cwiseProduct(v);
}

}  // namespace cocyclelab
