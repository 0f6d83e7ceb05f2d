#include "cocyclelab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>

#include "cocyclelab/amalgam.hpp"
#include "cocyclelab/cantor.hpp"
#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/csv.hpp"
#include "cocyclelab/flow.hpp"
#include "cocyclelab/fox.hpp"
#include "cocyclelab/freegroup.hpp"
#include "cocyclelab/rng.hpp"
#include "cocyclelab/spectral.hpp"
#include "cocyclelab/walls.hpp"

namespace cocyclelab {

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

CriterionResult run_criterion(int number, const char* name, double limit,
                              const std::function<Outcome()>& body) {
  CriterionResult r;
  r.number = number;
  r.name = name;
  r.limit_seconds = limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = body();
    r.passed = o.ok;
    r.detail = std::move(o.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds >= limit) {
    r.passed = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("over the runtime budget");
  }
  return r;
}

ReducedWord random_reduced_word(Rng& rng, int rank, int length) {
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    std::vector<Letter> candidates;
    for (int gen = 1; gen <= rank; ++gen)
      for (int exp : {1, -1}) {
        if (!letters.empty() && letters.back().gen == gen && letters.back().exp == -exp) continue;
        candidates.push_back({gen, exp});
      }
    letters.push_back(candidates[static_cast<std::size_t>(
        rng.next_int(0, static_cast<long>(candidates.size()) - 1))]);
  }
  return ReducedWord(rank, std::move(letters));
}

AlgebraElement random_integer_element(Rng& rng, const Ball& ball) {
  AlgebraElement out(ball.rank());
  const long terms = rng.next_int(1, 3);
  for (long i = 0; i < terms; ++i) {
    const ReducedWord& w = ball.word(
        static_cast<std::size_t>(rng.next_int(0, static_cast<long>(ball.size()) - 1)));
    const double c = static_cast<double>(rng.next_int(1, 3) * (rng.next_int(0, 1) ? 1 : -1));
    out.add_term(w, c);
  }
  return out;
}

long factorial(int n) {
  long f = 1;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

Outcome criterion_fox_identity() {
  Rng rng(101);
  const Ball support = Ball::enumerate(2, 2);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const ReducedWord w = random_reduced_word(rng, 2, static_cast<int>(rng.next_int(1, 12)));
    RegularCocycleModel model(
        2, {random_integer_element(rng, support), random_integer_element(rng, support)});
    worst = std::max(worst, fox_identity_residual(model, w));
  }
  std::ostringstream os;
  os << "max residual " << format_double(worst) << " over 200 trials";
  return {worst == 0.0, os.str()};
}

Outcome criterion_tree_norm_law() {
  const Ball ball = Ball::enumerate(2, 6);
  bool ok = true;
  for (double p : {1.0, 2.0, 4.0}) {
    TreeCocycleModel model(2, p);
    for (const ReducedWord& g : ball.elements()) {
      const double pp = model.norm_pp(evaluate_cocycle(model, g));
      if (pp != static_cast<double>(g.length())) ok = false;
    }
  }
  std::ostringstream os;
  os << "||b(g)||_p^p = |g| exactly on " << ball.size() << " elements, p in {1,2,4}";
  return {ok, os.str()};
}

Outcome criterion_atomic_oracle() {
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng(1000 + trial);
    const AtomicMeasure mu = random_atomic_measure(rng, 16);
    const std::vector<double> quad = atomic_growth_sequence(mu, 1000);
    const std::vector<double> walk = atomic_walk_sequence(mu, 1000);
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const double rel = std::abs(quad[i] - walk[i]) / std::max(std::abs(walk[i]), 1e-300);
      worst = std::max(worst, rel);
    }
  }
  std::ostringstream os;
  os << "worst relative gap " << format_double(worst) << " over 50 measures, n <= 1000";
  return {worst <= 1e-10, os.str()};
}

Outcome criterion_fejer_density() {
  double worst = 0.0;
  for (long n = 1; n <= 64; ++n) {
    const double c = density_growth([](double) { return 1.0; }, n);
    worst = std::max(worst, std::abs(c - static_cast<double>(n)) / static_cast<double>(n));
  }
  std::ostringstream os;
  os << "worst |c(n) - n|/n = " << format_double(worst) << " for n <= 64";
  return {worst <= 1e-6, os.str()};
}

Outcome criterion_shift_dichotomy() {
  const ShiftVector proper{0, {Complex(1.0)}};
  const ShiftVector bounded{0, {Complex(1.0), Complex(-1.0)}};
  bool exact_ok = true;
  double worst = 0.0;
  for (long n = 1; n <= 64; ++n) {
    const double dp = shift_growth_direct(proper, n);
    const double db = shift_growth_direct(bounded, n);
    if (dp != static_cast<double>(n) || db != 2.0) exact_ok = false;
    if (shift_growth_exact(proper, n) != dp || shift_growth_exact(bounded, n) != db)
      exact_ok = false;
    const double qp = shift_growth_quadrature(proper, n);
    const double qb = shift_growth_quadrature(bounded, n);
    worst = std::max(worst, std::abs(qp - dp) / dp);
    worst = std::max(worst, std::abs(qb - db) / db);
  }
  std::ostringstream os;
  os << "delta_0 gives c(n) = n and delta_0 - delta_1 gives c(n) = 2 exactly; "
     << "worst spectral-vs-direct gap " << format_double(worst);
  return {exact_ok && worst <= 1e-8, os.str()};
}

Outcome criterion_edelstein() {
  bool ok = true;
  for (int n = 1; n <= 6; ++n) {
    const double c = edelstein_orbit_norm_sq(factorial(n), 12);
    if (!(c <= edelstein_return_bound(n, 12))) ok = false;
  }
  double prev = edelstein_almost_fixed(1);
  for (int m = 2; m <= 20; ++m) {
    const double cur = edelstein_almost_fixed(m);
    if (!(cur < prev)) ok = false;
    prev = cur;
  }
  const GrowthProfile profile = edelstein_profile(12, 720);
  const double scale = profile.norms.front();  // ||b(1)||
  const GrowthThresholds thresholds{scale, scale, 0.0};
  const GrowthClassification cls = classify_growth(profile, thresholds);
  ok = ok && cls.verdict == GrowthVerdict::NeitherLike;
  std::ostringstream os;
  os << "return bounds hold for n = 1..6; almost-fixed defect strictly decreasing m = 1..20; "
     << "verdict " << verdict_name(cls.verdict) << " with thresholds ||b(1)|| = "
     << format_double(scale);
  return {ok, os.str()};
}

Outcome criterion_cantor() {
  const CantorMeasure mu;
  const CantorClaims claims = evaluate_cantor_claims(mu);
  bool ok = true;
  std::ostringstream os;
  for (std::size_t i = 0; i < claims.claim2_value.size(); ++i) {
    if (!(claims.calibration_error[i] <= 1e-12)) ok = false;
    if (!(claims.claim2_value[i] <= claims.claim2_bound[i] * (1.0 + kClaim2RelTol))) ok = false;
    if (!(claims.claim1_value[i] >= claims.claim1_floor[i])) ok = false;
    if (i) os << "; ";
    os << "level " << (i + 1) << ": c = " << format_double(claims.claim2_value[i])
       << " vs bound " << format_double(claims.claim2_bound[i]);
  }
  return {ok, os.str()};
}

Outcome criterion_flow() {
  Rng rng(808);
  const int d = 64;
  bool ok = true;
  double worst_inv = 0.0, worst_group = 0.0, worst_ident = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd angles(d);
    for (int j = 0; j < d; ++j) angles[j] = std::numbers::pi * (2.0 * rng.next_double() - 1.0);
    Eigen::VectorXcd b(d);
    for (int j = 0; j < d; ++j) {
      const double re = 2.0 * rng.next_double() - 1.0;
      const double im = 2.0 * rng.next_double() - 1.0;
      b[j] = Complex(re, im);
    }
    const DiagonalUnitary u(angles);
    const FlowSpec spec = solve_flow(u, b);
    const double bn = b.norm();

    worst_inv = std::max(worst_inv, (flow_cocycle(spec, 1.0) - b).norm() / bn);
    const double s = 4.0 * (rng.next_double() - 0.5);
    const double t = 4.0 * (rng.next_double() - 0.5);
    const double group = (one_param(u, s).cwiseProduct(one_param(u, t)) - one_param(u, s + t))
                             .cwiseAbs()
                             .maxCoeff();
    worst_group = std::max(worst_group, group);
    worst_ident = std::max(worst_ident, flow_identity_residual(spec, s, t) / bn);
    if (!(spec.xi.norm() <= 0.5 * std::numbers::pi * bn * (1.0 + 1e-13))) ok = false;
  }
  ok = ok && worst_inv <= 1e-10 && worst_group <= 1e-10 && worst_ident <= 1e-10;

  const DiagonalUnitary half_turn(Eigen::VectorXd::Constant(1, -std::numbers::pi));
  const FlowSpec pinned = solve_flow(half_turn, Eigen::VectorXcd::Ones(1));
  const double pin_err = std::abs(pinned.xi[0] - Complex(0.0, 0.5 * std::numbers::pi));
  ok = ok && pin_err <= 1e-12;

  std::ostringstream os;
  os << "worst inversion " << format_double(worst_inv) << ", group law "
     << format_double(worst_group) << ", cocycle identity " << format_double(worst_ident)
     << ", |xi - i pi/2| = " << format_double(pin_err) << " in the half-turn case";
  return {ok, os.str()};
}

Outcome criterion_nullpair() {
  const ReducedWord w = ReducedWord::parse(2, "stST");
  const std::vector<AlgebraElement> fox = fox_elements(w);
  std::vector<NullPairResult> results;
  for (int radius = 2; radius <= 5; ++radius)
    results.push_back(null_pair_search(fox[0], fox[1], radius));
  bool ok = true;
  for (std::size_t i = 0; i + 1 < results.size(); ++i)
    if (!(results[i + 1].residual <= results[i].residual + 1e-10)) ok = false;
  if (!(results.back().residual < results.front().residual)) ok = false;
  std::ostringstream os;
  os << "residuals";
  for (const NullPairResult& r : results)
    os << ' ' << format_double(r.residual) << " (R=" << r.radius << ')';
  return {ok, os.str()};
}

Outcome criterion_zc2_amalgam() {
  const ZC2AmalgamCocycle cocycle;  // twist w = delta_e
  bool ok = zc2_norm(cocycle.evaluate(ZC2Element::k())) == 0.0;
  const double expected = std::sqrt(2.0) * zc2_norm(cocycle.twist());
  for (long n = -5; n <= 5; ++n) {
    if (n == 0) continue;
    if (zc2_norm(cocycle.evaluate(ZC2Element::h(n))) != expected) ok = false;
    if (cocycle.affine(ZC2Element::h(n), cocycle.twist()) != cocycle.twist()) ok = false;
  }
  const std::vector<ZC2Element> ball = zc2_ball(5);
  double worst = 0.0;
  for (const ZC2Element& g : ball)
    for (const ZC2Element& h : ball)
      worst = std::max(worst, cocycle.identity_residual(g, h));
  ok = ok && worst == 0.0;
  std::ostringstream os;
  os << "b(k) = 0, ||b(h^n)|| = sqrt(2) exactly, alpha(h^n) fixes w, identity residual "
     << format_double(worst) << " over " << ball.size() << "^2 pairs";
  return {ok, os.str()};
}

Outcome criterion_determinism() {
  auto atomic_csv = [] {
    Rng rng(1000);
    const AtomicMeasure mu = random_atomic_measure(rng, 16);
    const std::vector<double> c = atomic_growth_sequence(mu, 64);
    return to_csv(sequence_table(c));
  };
  auto nullpair_csv = [] {
    const std::vector<AlgebraElement> fox = fox_elements(ReducedWord::parse(2, "stST"));
    std::vector<NullPairResult> rs;
    for (int radius = 2; radius <= 3; ++radius)
      rs.push_back(null_pair_search(fox[0], fox[1], radius));
    return to_csv(nullpair_table(rs));
  };
  auto edelstein_csv = [] { return to_csv(profile_table(edelstein_profile(12, 120))); };

  const bool ok = atomic_csv() == atomic_csv() && nullpair_csv() == nullpair_csv() &&
                  edelstein_csv() == edelstein_csv();
  return {ok, "atomic, null-pair, and orbit-profile CSV artifacts byte-identical across reruns"};
}

}  // namespace

bool AcceptanceReport::all_passed() const {
  for (const CriterionResult& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

AcceptanceReport run_acceptance(const std::vector<int>& only) {
  struct Entry {
    int number;
    const char* name;
    double limit;
    Outcome (*body)();
  };
  static const Entry entries[] = {
      {1, "fox-identity", 10.0, criterion_fox_identity},
      {2, "tree-norm-law", 30.0, criterion_tree_norm_law},
      {3, "atomic-oracle", 30.0, criterion_atomic_oracle},
      {4, "fejer-density", 5.0, criterion_fejer_density},
      {5, "shift-dichotomy", 5.0, criterion_shift_dichotomy},
      {6, "edelstein", 10.0, criterion_edelstein},
      {7, "cantor-claims", 120.0, criterion_cantor},
      {8, "flow-extension", 5.0, criterion_flow},
      {9, "nullpair-decay", 60.0, criterion_nullpair},
      {10, "zc2-amalgam", 10.0, criterion_zc2_amalgam},
      {11, "determinism", 5.0, criterion_determinism},
  };
  for (int n : only) {
    if (n < 1 || n > static_cast<int>(std::size(entries)))
      throw PreconditionError("no acceptance criterion numbered " + std::to_string(n));
  }
  AcceptanceReport report;
  for (const Entry& e : entries) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.number) == only.end()) continue;
    report.results.push_back(run_criterion(e.number, e.name, e.limit, e.body));
  }
  return report;
}

std::string acceptance_summary(const AcceptanceReport& report) {
  std::ostringstream os;
  for (const CriterionResult& r : report.results) {
    os << (r.passed ? "PASS" : "FAIL") << "  " << (r.number < 10 ? " " : "") << r.number << ' '
       << r.name;
    for (std::size_t i = r.name.size(); i < 16; ++i) os << ' ';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%7.2fs / %gs", r.seconds, r.limit_seconds);
    os << buf;
    if (!r.detail.empty()) os << "  " << r.detail;
    os << '\n';
  }
  os << (report.all_passed() ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << '\n';
  return os.str();
}

}  // namespace cocyclelab
