#include "cocyclelab/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cocyclelab/spectral.hpp"

namespace cocyclelab {

namespace {

std::vector<AnchoredInterval> refine(const std::vector<AnchoredInterval>& prev, long scale,
                                     double eps) {
  std::vector<AnchoredInterval> out;
  const double n = static_cast<double>(scale);
  for (const AnchoredInterval& iv : prev) {
    const long k0 = std::max(0L, static_cast<long>(std::floor(iv.inf() * n - eps)));
    const long k1 = std::min(scale, static_cast<long>(std::ceil(iv.sup() * n + eps)));
    for (long k = k0; k <= k1; ++k) {
      const double anchor = static_cast<double>(k) / n;
      const double d = iv.anchor - anchor;
      double lo = std::max(-eps / n, d + iv.lo);
      double hi = std::min(eps / n, d + iv.hi);
      if (k == 0) lo = std::max(lo, 0.0);
      if (k == scale) hi = std::min(hi, 0.0);
      if (lo < hi) out.push_back({anchor, lo, hi});
    }
  }
  return out;
}

}  // namespace

CantorParams CantorParams::defaults() {
  CantorParams p;
  p.scales = {8, 8L * 8 * 8 * 8 * 8 * 8 * 8};
  for (long n : p.scales) p.epsilons.push_back(std::pow(static_cast<double>(n), -5.0));
  return p;
}

void CantorParams::validate() const {
  if (scales.empty()) throw PreconditionError("construction needs at least one level");
  if (scales.size() != epsilons.size())
    throw PreconditionError("construction needs one eps per scale");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] < 2) throw PreconditionError("scales must be at least 2");
    if (!(epsilons[i] > 0.0 && epsilons[i] < 1.0))
      throw PreconditionError("eps values must lie in (0,1)");
    const double n4 = std::pow(static_cast<double>(scales[i]), -4.0);
    if (!(epsilons[i] < n4))
      throw PreconditionError("nesting needs eps_n < N_n^-4 at every level");
  }
  for (std::size_t i = 0; i + 1 < scales.size(); ++i) {
    if (scales[i + 1] <= scales[i]) throw PreconditionError("scales must increase");
    if (!(epsilons[i + 1] < epsilons[i])) throw PreconditionError("eps values must decrease");
    const double ratio = static_cast<double>(scales[i]) / static_cast<double>(scales[i + 1]);
    if (!(ratio < epsilons[i]))
      throw PreconditionError("nesting needs N_n / N_{n+1} < eps_n between levels");
  }
}

CantorMeasure::CantorMeasure(CantorParams params) : params_(std::move(params)) {
  params_.validate();
  std::vector<AnchoredInterval> pieces = {{0.0, 0.0, 1.0}};
  for (int level = 0; level < params_.depth(); ++level)
    pieces = refine(pieces, params_.scales[level], params_.epsilons[level]);

  // Restriction to [0, 1/2], again by anchor differences.
  std::vector<AnchoredInterval> kept;
  for (AnchoredInterval iv : pieces) {
    const double d = iv.anchor - 0.5;
    if (d + iv.lo >= 0.0) continue;
    if (d + iv.hi > 0.0) iv.hi = -d;
    kept.push_back(iv);
  }
  if (kept.empty()) throw PreconditionError("construction left no pieces in [0, 1/2]");

  // Region cutoffs s_n = sqrt(eps_n); region d (deepest) is [0, s_depth],
  // then (s_{n+1}, s_n], finally (s_1, 1/2]. The deepest region is pulled
  // into its upper half so the singular integrand stays finite on it.
  const int depth = params_.depth();
  std::vector<double> s(static_cast<std::size_t>(depth));
  for (int n = 0; n < depth; ++n) s[static_cast<std::size_t>(n)] = std::sqrt(params_.epsilons[n]);

  std::vector<std::vector<AnchoredInterval>> regions(static_cast<std::size_t>(depth) + 1);
  for (const AnchoredInterval& iv : kept) {
    if (iv.sup() <= s.back()) {
      regions[static_cast<std::size_t>(depth)].push_back(iv);
      continue;
    }
    if (iv.inf() > s.front()) {
      regions[0].push_back(iv);
      continue;
    }
    bool placed = false;
    for (int n = 1; n < depth; ++n) {
      if (iv.inf() > s[static_cast<std::size_t>(n)] && iv.sup() <= s[static_cast<std::size_t>(n - 1)]) {
        regions[static_cast<std::size_t>(n)].push_back(iv);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw PreconditionError("a construction piece straddles a calibration cutoff");
  }
  for (int n = 0; n <= depth; ++n)
    if (regions[static_cast<std::size_t>(n)].empty())
      throw PreconditionError("a calibration region received no pieces");

  for (AnchoredInterval& iv : regions[static_cast<std::size_t>(depth)])
    if (iv.anchor == 0.0 && iv.lo == 0.0) iv.lo = std::max(iv.lo, 0.5 * iv.hi);

  // Region masses make mu[0, s_n] = s_n exact by telescoping.
  for (int n = depth; n >= 0; --n) {
    const double upper = n == 0 ? 1.0 : s[static_cast<std::size_t>(n - 1)];
    const double lower = n == depth ? 0.0 : s[static_cast<std::size_t>(n)];
    const double mass = upper - lower;
    const auto& ivs = regions[static_cast<std::size_t>(n)];
    double width_total = 0.0;
    for (const AnchoredInterval& iv : ivs) width_total += iv.width();
    for (const AnchoredInterval& iv : ivs) {
      pieces_.push_back(iv);
      masses_.push_back(mass * iv.width() / width_total);
      regions_.push_back(n);
    }
  }
}

double CantorMeasure::cutoff(int level) const {
  if (level < 1 || level > params_.depth()) throw PreconditionError("cutoff level out of range");
  return std::sqrt(params_.epsilons[static_cast<std::size_t>(level - 1)]);
}

double CantorMeasure::total_mass() const {
  double s = 0.0;
  for (double m : masses_) s += m;
  return s;
}

double CantorMeasure::mass_below(double s) const {
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].sup() <= s) total += masses_[i];
  return total;
}

double sinpi_anchored(long n, double anchor, double off) {
  const double a = static_cast<double>(n) * anchor;
  const long long k = std::llround(a);
  const double r = a - static_cast<double>(k);
  const double value = std::sin(std::numbers::pi * (r + static_cast<double>(n) * off));
  return (k % 2 != 0) ? -value : value;
}

double CantorMeasure::growth(long n) const {
  if (n < 1) throw PreconditionError("growth index must be positive");
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const AnchoredInterval& iv = pieces_[i];
    const int m =
        static_cast<int>(std::ceil(10.0 * iv.width() * static_cast<double>(n))) + 4;
    const GaussLegendre& rule = gauss_legendre(m);
    const double mid = 0.5 * (iv.lo + iv.hi), half = 0.5 * iv.width();
    double mean = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double off = mid + half * rule.nodes[j];
      const double num = sinpi_anchored(n, iv.anchor, off);
      const double den = sinpi_anchored(1, iv.anchor, off);
      const double ratio = num / den;
      mean += rule.weights[j] * ratio * ratio;
    }
    total += 0.5 * mean * masses_[i];
  }
  return total;
}

double CantorMeasure::singular_integral(double s) const {
  double total = 0.0;
  const GaussLegendre& rule = gauss_legendre(16);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const AnchoredInterval& iv = pieces_[i];
    if (iv.sup() > s) continue;
    const double mid = 0.5 * (iv.lo + iv.hi), half = 0.5 * iv.width();
    double mean = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double den = sinpi_anchored(1, iv.anchor, mid + half * rule.nodes[j]);
      mean += rule.weights[j] / (den * den);
    }
    total += 0.5 * mean * masses_[i];
  }
  return total;
}

double CantorMeasure::growth_bound(int level) const {
  if (level < 1 || level > params_.depth()) throw PreconditionError("bound level out of range");
  const double n = static_cast<double>(params_.scales[static_cast<std::size_t>(level - 1)]);
  const double eps = params_.epsilons[static_cast<std::size_t>(level - 1)];
  return std::sqrt(eps) * n * n + std::numbers::pi * std::numbers::pi * eps / 4.0;
}

CantorClaims evaluate_cantor_claims(const CantorMeasure& mu) {
  CantorClaims claims;
  const int depth = mu.params().depth();
  for (int level = 1; level <= depth; ++level) {
    const double s = mu.cutoff(level);
    const double mass = mu.mass_below(s);
    claims.calibration_error.push_back(std::abs(mass - s) / s);
    claims.claim1_value.push_back(mu.singular_integral(s));
    claims.claim1_floor.push_back(1.0 / (std::numbers::pi * std::numbers::pi * s));
    claims.claim2_value.push_back(mu.growth(mu.params().scales[static_cast<std::size_t>(level - 1)]));
    claims.claim2_bound.push_back(mu.growth_bound(level));
  }
  return claims;
}

}  // namespace cocyclelab
