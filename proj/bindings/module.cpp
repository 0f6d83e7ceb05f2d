// Thin python face over the C++ core: plain strings for group elements,
// lists and dicts for coefficient data, numpy vectors for the diagonal flow.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/amalgam.hpp"
#include "cocyclelab/cantor.hpp"
#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/errors.hpp"
#include "cocyclelab/flow.hpp"
#include "cocyclelab/fox.hpp"
#include "cocyclelab/freegroup.hpp"
#include "cocyclelab/rng.hpp"
#include "cocyclelab/spectral.hpp"
#include "cocyclelab/version.hpp"
#include "cocyclelab/walls.hpp"

namespace py = pybind11;

namespace {

using namespace cocyclelab;

std::map<std::string, Complex> terms_dict(const AlgebraElement& f) {
  std::map<std::string, Complex> out;
  for (const auto& [word, coeff] : f.terms()) out.emplace(word.str(), coeff);
  return out;
}

py::tuple profile_tuple(const GrowthProfile& p) { return py::make_tuple(p.labels, p.norms); }

py::dict nullpair_dict(const NullPairResult& r) {
  py::dict d;
  d["radius"] = r.radius;
  d["residual"] = r.residual;
  d["norm1"] = r.norm1;
  d["norm2"] = r.norm2;
  d["iterations"] = r.iterations;
  return d;
}

AtomicMeasure make_measure(const std::vector<double>& positions,
                           const std::vector<double>& weights) {
  AtomicMeasure mu{positions, weights};
  mu.validate();
  return mu;
}

CantorParams make_params(const std::vector<long>& scales,
                         const std::optional<std::vector<double>>& epsilons) {
  CantorParams p;
  p.scales = scales;
  if (epsilons) {
    p.epsilons = *epsilons;
  } else {
    for (long n : scales) p.epsilons.push_back(std::pow(static_cast<double>(n), -5.0));
  }
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cocycles of affine isometric group actions: exact free-group calculus, spectral "
            "growth of Z-actions, and continuous extensions";
  m.attr("__version__") = kToolVersion;

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // Free group words as strings in the canonical letter names.
  m.def(
      "reduce_word",
      [](int rank, const std::string& text) { return ReducedWord::parse(rank, text).str(); },
      py::arg("rank"), py::arg("text"), "Freely reduce a word and return its normal form");
  m.def(
      "word_length",
      [](int rank, const std::string& text) { return ReducedWord::parse(rank, text).length(); },
      py::arg("rank"), py::arg("text"));
  m.def(
      "multiply_words",
      [](int rank, const std::string& a, const std::string& b) {
        return (ReducedWord::parse(rank, a) * ReducedWord::parse(rank, b)).str();
      },
      py::arg("rank"), py::arg("a"), py::arg("b"));
  m.def(
      "invert_word",
      [](int rank, const std::string& text) {
        return ReducedWord::parse(rank, text).inverse().str();
      },
      py::arg("rank"), py::arg("text"));
  m.def(
      "ball",
      [](int rank, int radius) {
        std::vector<std::string> out;
        Ball ball = Ball::enumerate(rank, radius);
        for (const ReducedWord& w : ball.elements()) out.push_back(w.str());
        return out;
      },
      py::arg("rank"), py::arg("radius"), "Metric ball, breadth-first then lexicographic");

  // Expansion coefficients and the near-kernel search.
  m.def(
      "fox_elements",
      [](int rank, const std::string& word) {
        std::vector<std::map<std::string, Complex>> out;
        for (const AlgebraElement& f : fox_elements(ReducedWord::parse(rank, word)))
          out.push_back(terms_dict(f));
        return out;
      },
      py::arg("rank"), py::arg("word"),
      "Expansion coefficients per generator, as {word: coefficient} dicts");
  m.def(
      "fox_identity_residual",
      [](int rank, const std::string& word, const std::vector<std::string>& gens) {
        if (static_cast<int>(gens.size()) != rank)
          throw PreconditionError("one generator value per generator");
        std::vector<AlgebraElement> values;
        for (const std::string& g : gens) values.push_back(parse_algebra_element(rank, g));
        return fox_identity_residual(RegularCocycleModel(rank, std::move(values)),
                                     ReducedWord::parse(rank, word));
      },
      py::arg("rank"), py::arg("word"), py::arg("gens"),
      "|| b(w) - sum_s lambda(f_{w,s}) b(s) ||, exactly 0 for integer data");
  m.def(
      "null_pair_search",
      [](const std::string& word, int radius, std::uint64_t seed) {
        const std::vector<AlgebraElement> fox = fox_elements(ReducedWord::parse(2, word));
        NullPairOptions opts;
        opts.seed = seed;
        return nullpair_dict(null_pair_search(fox[0], fox[1], radius, opts));
      },
      py::arg("word"), py::arg("radius"), py::arg("seed") = 7,
      "Smallest singular value of the stacked expansion pair over the given support radius");

  // Tree and wall cocycles.
  m.def(
      "tree_profile",
      [](int rank, int radius, double p) {
        const Ball ball = Ball::enumerate(rank, radius);
        return profile_tuple(tree_cocycle_growth(rank, radius, p, ball.elements()));
      },
      py::arg("rank"), py::arg("radius"), py::arg("p") = 2.0);
  m.def(
      "tree_norm_pp",
      [](int rank, const std::string& word, double p) {
        const TreeCocycleModel model(rank, p);
        return model.norm_pp(evaluate_cocycle(model, ReducedWord::parse(rank, word)));
      },
      py::arg("rank"), py::arg("word"), py::arg("p") = 2.0,
      "||b(g)||_p^p on the Cayley tree; equals |g| exactly");
  m.def(
      "gradient_check",
      [](int rank, const std::map<std::string, double>& f, const std::string& g, double p,
         int radius) {
        std::map<ReducedWord, double> support;
        for (const auto& [word, value] : f)
          support.emplace(ReducedWord::parse(rank, word), value);
        const GradientCheck c =
            gradient_cocycle(rank, support, ReducedWord::parse(rank, g), p, radius);
        return py::make_tuple(c.lhs, c.rhs, c.holds);
      },
      py::arg("rank"), py::arg("f"), py::arg("g"), py::arg("p") = 2.0, py::arg("radius") = 6,
      "(lhs, rhs, holds) of the gradient inequality over Cayley-tree edges");
  m.def(
      "wall_profile",
      [](const std::string& path, const std::string& base, double p, int radius) {
        const WallSpace ws = WallSpace::load(path);
        const int x0 = base.empty() ? 0 : ws.point_index(base);
        const WallCocycleModel model(ws, x0, p);
        const Ball ball = Ball::enumerate(ws.rank(), radius);
        return profile_tuple(growth_profile(model, ball.elements()));
      },
      py::arg("path"), py::arg("base") = "", py::arg("p") = 2.0, py::arg("radius") = 3,
      "Norms of the half-space cocycle over a ball, for a wall-space file with an action");

  // Spectral growth of Z-cocycles.
  m.def(
      "random_atomic_measure",
      [](std::uint64_t seed, int max_atoms) {
        Rng rng(seed);
        const AtomicMeasure mu = random_atomic_measure(rng, max_atoms);
        return py::make_tuple(mu.positions, mu.weights);
      },
      py::arg("seed"), py::arg("max_atoms") = 16);
  m.def(
      "atomic_growth_sequence",
      [](const std::vector<double>& positions, const std::vector<double>& weights, long nmax) {
        return atomic_growth_sequence(make_measure(positions, weights), nmax);
      },
      py::arg("positions"), py::arg("weights"), py::arg("nmax"),
      "c(n) for n = 1..nmax through the kernel sum");
  m.def(
      "atomic_walk_sequence",
      [](const std::vector<double>& positions, const std::vector<double>& weights, long nmax) {
        return atomic_walk_sequence(make_measure(positions, weights), nmax);
      },
      py::arg("positions"), py::arg("weights"), py::arg("nmax"),
      "The same c(n) through the unitary orbit walk");
  m.def("density_growth", &density_growth, py::arg("rho"), py::arg("n"),
        py::arg("bandwidth_hint") = 0, py::arg("rel_tol") = 1e-9,
        "c(n) for an absolutely continuous measure rho(x) dx by adaptive quadrature");
  m.def(
      "shift_growth",
      [](long offset, const std::vector<Complex>& coeffs, long n, const std::string& method) {
        ShiftVector f{offset, coeffs};
        f.validate();
        if (method == "exact") return shift_growth_exact(f, n);
        if (method == "direct") return shift_growth_direct(f, n);
        if (method == "quadrature") return shift_growth_quadrature(f, n);
        throw PreconditionError("method must be exact, direct, or quadrature");
      },
      py::arg("offset"), py::arg("coeffs"), py::arg("n"), py::arg("method") = "exact",
      "||sum_{j<n} T^j f||^2 for a finitely supported shift vector");

  // The rotation-product isometry.
  m.def("edelstein_orbit_norm_sq", &edelstein_orbit_norm_sq, py::arg("m"), py::arg("n_max"));
  m.def("edelstein_return_bound", &edelstein_return_bound, py::arg("n"), py::arg("n_max"));
  m.def("edelstein_almost_fixed", &edelstein_almost_fixed, py::arg("m"), py::arg("trunc") = 25);
  m.def(
      "edelstein_profile",
      [](int n_max, long m_max) { return profile_tuple(edelstein_profile(n_max, m_max)); },
      py::arg("n_max"), py::arg("m_max"));

  // Nested-interval singular measure.
  py::class_<CantorMeasure>(m, "CantorMeasure",
                            "Singular measure on nested grid neighborhoods, calibrated so that "
                            "mu[0, sqrt(eps_n)] = sqrt(eps_n) at every level")
      .def(py::init([](const std::optional<std::vector<long>>& scales,
                       const std::optional<std::vector<double>>& epsilons) {
             if (!scales) return CantorMeasure();
             return CantorMeasure(make_params(*scales, epsilons));
           }),
           py::arg("scales") = py::none(), py::arg("epsilons") = py::none())
      .def("total_mass", &CantorMeasure::total_mass)
      .def("mass_below", &CantorMeasure::mass_below, py::arg("s"))
      .def("cutoff", &CantorMeasure::cutoff, py::arg("level"))
      .def("growth", &CantorMeasure::growth, py::arg("n"))
      .def("growth_bound", &CantorMeasure::growth_bound, py::arg("level"))
      .def("singular_integral", &CantorMeasure::singular_integral, py::arg("s"))
      .def("piece_count", [](const CantorMeasure& mu) { return mu.pieces().size(); })
      .def("claims", [](const CantorMeasure& mu) {
        const CantorClaims c = evaluate_cantor_claims(mu);
        py::dict d;
        d["calibration_error"] = c.calibration_error;
        d["claim1_value"] = c.claim1_value;
        d["claim1_floor"] = c.claim1_floor;
        d["claim2_value"] = c.claim2_value;
        d["claim2_bound"] = c.claim2_bound;
        return d;
      });

  // Continuous extension of a diagonal Z-cocycle.
  m.def(
      "solve_flow",
      [](const Eigen::VectorXd& angles, const Eigen::VectorXcd& b) {
        return solve_flow(DiagonalUnitary(angles), b).xi;
      },
      py::arg("angles"), py::arg("b"), "The vector xi with b_xi(1) = b");
  m.def(
      "flow_cocycle",
      [](const Eigen::VectorXd& angles, const Eigen::VectorXcd& b, double t) {
        return flow_cocycle(solve_flow(DiagonalUnitary(angles), b), t);
      },
      py::arg("angles"), py::arg("b"), py::arg("t"));
  m.def(
      "flow_identity_residual",
      [](const Eigen::VectorXd& angles, const Eigen::VectorXcd& b, double t, double u) {
        return flow_identity_residual(solve_flow(DiagonalUnitary(angles), b), t, u);
      },
      py::arg("angles"), py::arg("b"), py::arg("t"), py::arg("u"));
  m.def(
      "flow_norms",
      [](const Eigen::VectorXd& angles, const Eigen::VectorXcd& b,
         const std::vector<double>& ts) {
        return extend_z_action(DiagonalUnitary(angles), b, ts).norms;
      },
      py::arg("angles"), py::arg("b"), py::arg("ts"), "||b_xi(t)|| over the given t grid");

  // Twisted cocycle on Z * C_2.
  m.def(
      "zc2_profile",
      [](int radius) {
        const ZC2AmalgamCocycle cocycle;
        GrowthProfile p;
        for (const ZC2Element& g : zc2_ball(radius)) {
          p.labels.push_back(g.str());
          p.norms.push_back(zc2_norm(cocycle.evaluate(g)));
        }
        return profile_tuple(p);
      },
      py::arg("radius"), "Norms of the twisted cocycle over the ball of Z * C_2");
  m.def(
      "zc2_identity_residual_max",
      [](int radius) {
        const ZC2AmalgamCocycle cocycle;
        const std::vector<ZC2Element> ball = zc2_ball(radius);
        double worst = 0.0;
        for (const ZC2Element& g : ball)
          for (const ZC2Element& h : ball)
            worst = std::max(worst, cocycle.identity_residual(g, h));
        return worst;
      },
      py::arg("radius"));

  // Gluing a near-kernel cocycle across an amalgam.
  m.def(
      "glue_consistency",
      [](int rank_a, const std::string& w, int rank_b, const std::string& v, int radius,
         std::uint64_t seed) {
        if (rank_a != 2) throw PreconditionError("the base build needs rank_a = 2");
        const ReducedWord ww = ReducedWord::parse(rank_a, w);
        const AmalgamOverZ am(rank_a, ww, rank_b, ReducedWord::parse(rank_b, v));
        NullPairOptions opts;
        opts.seed = seed;
        const VanishingCocycle base = build_vanishing_cocycle(ww, radius, opts);
        const GluedCocycle glued(am, base.model);
        py::dict d;
        d["base_residual"] = base.search.residual;
        d["consistency_residual"] = glued.consistency_residual();
        return d;
      },
      py::arg("rank_a"), py::arg("w"), py::arg("rank_b"), py::arg("v"), py::arg("radius") = 3,
      py::arg("seed") = 7,
      "Residuals of the cocycle transported across the amalgam of F_{rank_a} and F_{rank_b}");
  m.def(
      "surface_data",
      [](int genus) {
        const SurfaceData data = surface_group_data(genus);
        py::dict d;
        d["rank_a"] = data.rank_a;
        d["rank_b"] = data.rank_b;
        d["w"] = data.w.str();
        d["v"] = data.v.str();
        return d;
      },
      py::arg("genus"), "The standard amalgam splitting of a genus-g surface group");

  // Growth classification.
  m.def(
      "classify_profile",
      [](const std::vector<double>& norms, std::optional<double> bound,
         std::optional<double> recurrence, double trend) {
        if (norms.size() < 2) throw PreconditionError("profile needs at least two values");
        GrowthProfile p;
        p.norms = norms;
        for (std::size_t i = 0; i < norms.size(); ++i) p.labels.push_back(std::to_string(i + 1));
        GrowthThresholds t = default_thresholds(norms.front());
        if (bound) t.bound = *bound;
        if (recurrence) t.recurrence = *recurrence;
        t.trend = trend;
        const GrowthClassification c = classify_growth(p, t);
        py::dict d;
        d["verdict"] = verdict_name(c.verdict);
        d["heuristic"] = true;
        d["max_norm"] = c.max_norm;
        d["tail_min"] = c.tail_min;
        d["tail_min_slope"] = c.tail_min_slope;
        return d;
      },
      py::arg("norms"), py::arg("bound") = py::none(), py::arg("recurrence") = py::none(),
      py::arg("trend") = 0.0,
      "Finite-window growth verdict; thresholds default to 10 x the first norm");
}
