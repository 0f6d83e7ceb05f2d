// Experiment runner: every construction in the library as a subcommand, with
// plain key=value config files, deterministic CSV artifacts, and a manifest
// per run. Exit codes: 0 success, 2 precondition failure, 3 numerical
// failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cocyclelab/acceptance.hpp"
#include "cocyclelab/amalgam.hpp"
#include "cocyclelab/cantor.hpp"
#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/csv.hpp"
#include "cocyclelab/errors.hpp"
#include "cocyclelab/flow.hpp"
#include "cocyclelab/fox.hpp"
#include "cocyclelab/freegroup.hpp"
#include "cocyclelab/rng.hpp"
#include "cocyclelab/spectral.hpp"
#include "cocyclelab/version.hpp"
#include "cocyclelab/walls.hpp"

namespace {

using namespace cocyclelab;

const char* yn(bool b) { return b ? "true" : "false"; }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw PreconditionError(what + " is not a number: " + text);
  }
}

long parse_integer(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw PreconditionError(what + " is not an integer: " + text);
  }
}

// The environment variable wins over flags and config so wrapper scripts can
// redirect every artifact without touching the invocation.
std::string resolve_out(const std::string& flag_value) {
  const char* env = std::getenv("COCYCLELAB_OUT");
  if (env != nullptr && *env != '\0') return env;
  return flag_value;
}

void emit(const std::string& dir, const std::string& name, const std::string& content) {
  const std::string path = dir + "/" + name;
  write_file_atomic(path, content);
  std::cout << "wrote " << path << "\n";
}

void emit_manifest(const std::string& dir, const std::string& subcommand,
                   const std::map<std::string, std::string>& config) {
  emit(dir, "MANIFEST.txt", manifest_text(subcommand, config));
}

// key=value per line, '#' starts a comment, later flags on the command line
// override config values.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string item = trim(line);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw PreconditionError("config line " + std::to_string(lineno) + " needs key=value: " +
                              item);
    entries.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return entries;
}

// ---------------------------------------------------------------------------
// Subcommand options. Every field mirrors a long flag of the same name, which
// is also its key in a --config file.

struct FoxOpts {
  std::string word;
  int rank = 2;
  int radius = 0;
  std::vector<std::string> gen;
  std::uint64_t seed = 7;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct NullpairOpts {
  std::string word;
  int rmin = 2;
  int rmax = 5;
  std::uint64_t seed = 7;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct AmalgamOpts {
  int nmax = 5;
  int radius = 5;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct GlueOpts {
  int rank_a = 2;
  std::string w;
  int rank_b = 2;
  std::string v;
  int radius = 3;
  std::uint64_t seed = 7;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct SurfaceOpts {
  int genus = 2;
  int radius = 3;
  std::uint64_t seed = 7;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct SpectralOpts {
  std::string measure = "atomic";
  long nmax = 64;
  std::uint64_t seed = 1000;
  int max_atoms = 16;
  long offset = 0;
  std::string coeffs = "1";
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct EdelsteinOpts {
  int nmax = 12;
  long upto = 720;
  int trunc = 25;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct CantorOpts {
  std::string scales = "8,2097152";
  std::string epsilons;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct FlowOpts {
  int dim = 8;
  std::uint64_t seed = 1;
  double tmin = 0.0;
  double tmax = 4.0;
  int steps = 33;
  bool real_only = false;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct TreeOpts {
  int rank = 2;
  int radius = 4;
  double p = 2.0;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct WallsOpts {
  std::string file;
  std::string base;
  double p = 2.0;
  int radius = 3;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct GradientOpts {
  int rank = 2;
  std::string f = "e:1";
  std::string g;
  double p = 2.0;
  int radius = 6;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct ClassifyOpts {
  std::string input;
  double bound = std::numeric_limits<double>::quiet_NaN();
  double recurrence = std::numeric_limits<double>::quiet_NaN();
  double trend = std::numeric_limits<double>::quiet_NaN();
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct ReproOpts {
  std::vector<int> only;
  std::string out = ".";
  std::string config;
  CLI::App* sub = nullptr;
};

struct Options {
  FoxOpts fox;
  NullpairOpts nullpair;
  AmalgamOpts amalgam;
  GlueOpts glue;
  SurfaceOpts surface;
  SpectralOpts spectral;
  EdelsteinOpts edelstein;
  CantorOpts cantor;
  FlowOpts flow;
  TreeOpts tree;
  WallsOpts walls;
  GradientOpts gradient;
  ClassifyOpts classify;
  ReproOpts repro;
};

void add_common(CLI::App* sub, std::string& out, std::string& config) {
  sub->add_option("--out", out, "Output directory for CSV artifacts and manifest");
  sub->add_option("--config", config, "key=value file; command-line flags override it");
}

void build_app(CLI::App& app, Options& o) {
  app.require_subcommand(1);

  o.fox.sub = app.add_subcommand(
      "fox", "Expansion coefficients of a word, the expansion identity, and the near-kernel "
             "cocycle build");
  o.fox.sub->add_option("--word", o.fox.word, "Word to expand, e.g. stST");
  o.fox.sub->add_option("--rank", o.fox.rank, "Free group rank (default 2)");
  o.fox.sub->add_option("--radius", o.fox.radius,
                        "Support radius for the near-kernel build; 0 skips it");
  o.fox.sub->add_option("--gen", o.fox.gen,
                        "Generator value for the identity check, one per generator, e.g. "
                        "'1*e,-1*s' (default e)");
  o.fox.sub->add_option("--seed", o.fox.seed, "Search seed for the near-kernel build");
  add_common(o.fox.sub, o.fox.out, o.fox.config);

  o.nullpair.sub =
      app.add_subcommand("nullpair", "Near-kernel residual of the expansion pair against the "
                                     "support radius");
  o.nullpair.sub->add_option("--word", o.nullpair.word, "Word over F_2 whose pair is searched");
  o.nullpair.sub->add_option("--rmin", o.nullpair.rmin, "Smallest support radius (default 2)");
  o.nullpair.sub->add_option("--rmax", o.nullpair.rmax, "Largest support radius (default 5)");
  o.nullpair.sub->add_option("--seed", o.nullpair.seed, "Inverse-iteration seed");
  add_common(o.nullpair.sub, o.nullpair.out, o.nullpair.config);

  o.amalgam.sub = app.add_subcommand(
      "amalgam", "Twisted cocycle on Z * C_2: generator values, fixed vector, identity residual");
  o.amalgam.sub->add_option("--nmax", o.amalgam.nmax, "Check b(h^n) for n = -nmax..nmax");
  o.amalgam.sub->add_option("--radius", o.amalgam.radius,
                            "Identity residual over all pairs from this ball");
  add_common(o.amalgam.sub, o.amalgam.out, o.amalgam.config);

  o.glue.sub = app.add_subcommand(
      "glue", "Transport a near-kernel cocycle across a free amalgam over a common power");
  o.glue.sub->add_option("--rank-a", o.glue.rank_a, "Rank of the left factor (must be 2)");
  o.glue.sub->add_option("--w", o.glue.w, "Amalgamated word in the left factor");
  o.glue.sub->add_option("--rank-b", o.glue.rank_b, "Rank of the right factor");
  o.glue.sub->add_option("--v", o.glue.v, "Amalgamated word in the right factor");
  o.glue.sub->add_option("--radius", o.glue.radius, "Support radius for the base build");
  o.glue.sub->add_option("--seed", o.glue.seed, "Search seed for the base build");
  add_common(o.glue.sub, o.glue.out, o.glue.config);

  o.surface.sub = app.add_subcommand(
      "surface", "The glued construction on the standard splitting of a surface group");
  o.surface.sub->add_option("--genus", o.surface.genus, "Surface genus, at least 2");
  o.surface.sub->add_option("--radius", o.surface.radius, "Support radius for the base build");
  o.surface.sub->add_option("--seed", o.surface.seed, "Search seed for the base build");
  add_common(o.surface.sub, o.surface.out, o.surface.config);

  o.spectral.sub = app.add_subcommand(
      "spectral", "Growth curve c(n) of a Z-cocycle from its spectral measure");
  o.spectral.sub->add_option("--measure", o.spectral.measure, "atomic, lebesgue, or shift")
      ->check(CLI::IsMember({"atomic", "lebesgue", "shift"}));
  o.spectral.sub->add_option("--nmax", o.spectral.nmax, "Curve length");
  o.spectral.sub->add_option("--seed", o.spectral.seed, "Seed for the atomic sample");
  o.spectral.sub->add_option("--max-atoms", o.spectral.max_atoms,
                             "Atom count bound for the atomic sample");
  o.spectral.sub->add_option("--offset", o.spectral.offset, "Leftmost index of the shift vector");
  o.spectral.sub->add_option("--coeffs", o.spectral.coeffs,
                             "Shift vector coefficients, comma-separated reals, e.g. 1,-1");
  add_common(o.spectral.sub, o.spectral.out, o.spectral.config);

  o.edelstein.sub = app.add_subcommand(
      "edelstein", "Orbit norms of the rotation-product isometry, with return bounds and "
                   "almost-fixed defects");
  o.edelstein.sub->add_option("--nmax", o.edelstein.nmax, "Coordinate truncation");
  o.edelstein.sub->add_option("--upto", o.edelstein.upto, "Profile window m = 1..upto");
  o.edelstein.sub->add_option("--trunc", o.edelstein.trunc,
                              "Truncation for the almost-fixed defect");
  add_common(o.edelstein.sub, o.edelstein.out, o.edelstein.config);

  o.cantor.sub = app.add_subcommand(
      "cantor", "Nested-interval singular measure: pieces, calibration, and both growth claims");
  o.cantor.sub->add_option("--scales", o.cantor.scales, "Comma-separated grid scales N_1<N_2<...");
  o.cantor.sub->add_option("--epsilons", o.cantor.epsilons,
                           "Comma-separated eps_n; default N_n^-5");
  add_common(o.cantor.sub, o.cantor.out, o.cantor.config);

  o.flow.sub = app.add_subcommand(
      "flow", "Extend a diagonal Z-cocycle to a continuous one-parameter family");
  o.flow.sub->add_option("--dim", o.flow.dim, "Carrier dimension");
  o.flow.sub->add_option("--seed", o.flow.seed, "Seed for the sampled unitary and translation");
  o.flow.sub->add_option("--tmin", o.flow.tmin, "Left end of the t grid");
  o.flow.sub->add_option("--tmax", o.flow.tmax, "Right end of the t grid");
  o.flow.sub->add_option("--steps", o.flow.steps, "Grid size");
  o.flow.sub->add_flag("--real-only", o.flow.real_only,
                       "Request a real carrier (refused: the averaging multiplier is complex)");
  add_common(o.flow.sub, o.flow.out, o.flow.config);

  o.tree.sub = app.add_subcommand(
      "tree", "Geodesic edge cocycle on the Cayley tree and its exact norm law");
  o.tree.sub->add_option("--rank", o.tree.rank, "Free group rank");
  o.tree.sub->add_option("--radius", o.tree.radius, "Ball radius for the profile");
  o.tree.sub->add_option("--p", o.tree.p, "Norm exponent, at least 1");
  add_common(o.tree.sub, o.tree.out, o.tree.config);

  o.walls.sub = app.add_subcommand(
      "walls", "Measured wall space: separation distances and the half-space cocycle");
  o.walls.sub->add_option("--file", o.walls.file, "Wall-space description file");
  o.walls.sub->add_option("--base", o.walls.base, "Base point id (default: first point)");
  o.walls.sub->add_option("--p", o.walls.p, "Norm exponent, at least 1");
  o.walls.sub->add_option("--radius", o.walls.radius, "Ball radius for the action profile");
  add_common(o.walls.sub, o.walls.out, o.walls.config);

  o.gradient.sub = app.add_subcommand(
      "gradient", "Both sides of the discrete gradient inequality on the Cayley tree");
  o.gradient.sub->add_option("--rank", o.gradient.rank, "Free group rank");
  o.gradient.sub->add_option("--f", o.gradient.f,
                             "Function as word:value pairs, e.g. e:1,s:2,st:-0.5");
  o.gradient.sub->add_option("--g", o.gradient.g, "Translating element");
  o.gradient.sub->add_option("--p", o.gradient.p, "Norm exponent, at least 1");
  o.gradient.sub->add_option("--radius", o.gradient.radius, "Working ball radius");
  add_common(o.gradient.sub, o.gradient.out, o.gradient.config);

  o.classify.sub = app.add_subcommand(
      "classify", "Heuristic growth verdict for a profile CSV (last column read as the norms)");
  o.classify.sub->add_option("--input", o.classify.input, "Profile CSV with a header row");
  o.classify.sub->add_option("--bound", o.classify.bound,
                             "Bounded threshold (default 10 x first norm)");
  o.classify.sub->add_option("--recurrence", o.classify.recurrence,
                             "Recurrence threshold (default 10 x first norm)");
  o.classify.sub->add_option("--trend", o.classify.trend, "Trend threshold (default 0)");
  add_common(o.classify.sub, o.classify.out, o.classify.config);

  o.repro.sub = app.add_subcommand(
      "repro", "Run the acceptance gate and write its summary as an artifact");
  o.repro.sub->add_option("--only", o.repro.only, "Criterion numbers to run (default: all)");
  add_common(o.repro.sub, o.repro.out, o.repro.config);
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

int run_fox(const FoxOpts& o) {
  if (o.word.empty()) throw PreconditionError("fox needs --word");
  if (o.rank < 1) throw PreconditionError("fox needs --rank at least 1");
  const std::string out = resolve_out(o.out);
  const ReducedWord w = ReducedWord::parse(o.rank, o.word);
  const std::vector<AlgebraElement> fox = fox_elements(w);

  std::size_t terms = 0;
  for (int i = 0; i < o.rank; ++i) {
    const std::string letter = ReducedWord::generator(o.rank, i + 1).str();
    emit(out, "fox_" + letter + ".csv", to_csv(algebra_table(fox[static_cast<std::size_t>(i)])));
    terms += fox[static_cast<std::size_t>(i)].term_count();
  }
  std::cout << "fox_terms=" << terms << "\n";
  std::cout << "fox_terms_equal_length=" << yn(terms == w.length()) << "\n";

  std::vector<std::string> gen = o.gen;
  if (gen.empty()) gen.assign(static_cast<std::size_t>(o.rank), "e");
  if (static_cast<int>(gen.size()) != o.rank)
    throw PreconditionError("fox needs one --gen per generator");
  std::vector<AlgebraElement> values;
  values.reserve(gen.size());
  for (const std::string& g : gen) values.push_back(parse_algebra_element(o.rank, g));
  const RegularCocycleModel model(o.rank, std::move(values));
  std::cout << "identity_residual=" << format_double(fox_identity_residual(model, w)) << "\n";

  if (o.radius > 0) {
    NullPairOptions opts;
    opts.seed = o.seed;
    const VanishingCocycle vc = build_vanishing_cocycle(w, o.radius, opts);
    for (const std::string& warning : vc.warnings) std::cout << "warning=" << warning << "\n";
    emit(out, "nullpair.csv", to_csv(nullpair_table({&vc.search, 1})));
    emit(out, "xi_s.csv", to_csv(algebra_table(vc.model.generator_value(1))));
    emit(out, "xi_t.csv", to_csv(algebra_table(vc.model.generator_value(2))));
    std::cout << "residual=" << format_double(vc.search.residual) << "\n";
    std::cout << "reported_norm=" << format_double(vc.reported_norm) << "\n";
  }

  std::map<std::string, std::string> cfg{{"word", o.word},
                                         {"rank", std::to_string(o.rank)},
                                         {"radius", std::to_string(o.radius)},
                                         {"seed", std::to_string(o.seed)},
                                         {"out", out}};
  for (std::size_t i = 0; i < gen.size(); ++i) cfg["gen" + std::to_string(i + 1)] = gen[i];
  emit_manifest(out, "fox", cfg);
  return 0;
}

int run_nullpair(const NullpairOpts& o) {
  if (o.word.empty()) throw PreconditionError("nullpair needs --word");
  if (o.rmin < 1 || o.rmax < o.rmin) throw PreconditionError("nullpair needs 1 <= rmin <= rmax");
  if (o.rmax > 6)
    throw PreconditionError("support radius above 6 needs a dense solve beyond this tool");
  const std::string out = resolve_out(o.out);
  const ReducedWord w = ReducedWord::parse(2, o.word);
  const std::vector<AlgebraElement> fox = fox_elements(w);

  NullPairOptions opts;
  opts.seed = o.seed;
  std::vector<NullPairResult> results;
  for (int radius = o.rmin; radius <= o.rmax; ++radius)
    results.push_back(null_pair_search(fox[0], fox[1], radius, opts));
  emit(out, "nullpair.csv", to_csv(nullpair_table(results)));
  std::cout << "residual_first=" << format_double(results.front().residual) << "\n";
  std::cout << "residual_last=" << format_double(results.back().residual) << "\n";

  emit_manifest(out, "nullpair",
                {{"word", o.word},
                 {"rmin", std::to_string(o.rmin)},
                 {"rmax", std::to_string(o.rmax)},
                 {"seed", std::to_string(o.seed)},
                 {"out", out}});
  return 0;
}

int run_amalgam(const AmalgamOpts& o) {
  if (o.nmax < 1) throw PreconditionError("amalgam needs --nmax at least 1");
  if (o.radius < 0) throw PreconditionError("amalgam needs --radius at least 0");
  const std::string out = resolve_out(o.out);
  const ZC2AmalgamCocycle cocycle;

  std::cout << "bk_norm=" << format_double(zc2_norm(cocycle.evaluate(ZC2Element::k()))) << "\n";
  const double expected = std::sqrt(2.0) * zc2_norm(cocycle.twist());
  bool norms_exact = true;
  bool fixed = true;
  for (long n = -o.nmax; n <= o.nmax; ++n) {
    if (n == 0) continue;
    if (zc2_norm(cocycle.evaluate(ZC2Element::h(n))) != expected) norms_exact = false;
    if (cocycle.affine(ZC2Element::h(n), cocycle.twist()) != cocycle.twist()) fixed = false;
  }
  std::cout << "hn_norm=" << format_double(expected) << "\n";
  std::cout << "hn_norm_exact=" << yn(norms_exact) << "\n";
  std::cout << "twist_fixed=" << yn(fixed) << "\n";

  const std::vector<ZC2Element> ball = zc2_ball(o.radius);
  GrowthProfile profile;
  for (const ZC2Element& g : ball) {
    profile.labels.push_back(g.str());
    profile.norms.push_back(zc2_norm(cocycle.evaluate(g)));
  }
  emit(out, "amalgam.csv", to_csv(profile_table(profile)));

  double worst = 0.0;
  for (const ZC2Element& g : ball)
    for (const ZC2Element& h : ball) worst = std::max(worst, cocycle.identity_residual(g, h));
  std::cout << "ball_size=" << ball.size() << "\n";
  std::cout << "identity_residual_max=" << format_double(worst) << "\n";

  emit_manifest(out, "amalgam",
                {{"nmax", std::to_string(o.nmax)},
                 {"radius", std::to_string(o.radius)},
                 {"out", out}});
  return 0;
}

GrowthProfile glued_profile(const AmalgamOverZ& am, const GluedCocycle& glued) {
  std::vector<AmalgamOverZ::Element> elems;
  const Ball ball_a = Ball::enumerate(am.rank_a(), 2);
  const Ball ball_b = Ball::enumerate(am.rank_b(), 2);
  for (const ReducedWord& x : ball_a.elements()) elems.push_back(am.embed(0, x));
  for (const ReducedWord& y : ball_b.elements())
    if (!y.is_identity()) elems.push_back(am.embed(1, y));
  const Ball small_a = Ball::enumerate(am.rank_a(), 1);
  const Ball small_b = Ball::enumerate(am.rank_b(), 1);
  for (const ReducedWord& x : small_a.elements())
    for (const ReducedWord& y : small_b.elements()) {
      if (x.is_identity() || y.is_identity()) continue;
      elems.push_back(am.mul(am.embed(0, x), am.embed(1, y)));
    }
  GrowthProfile profile;
  for (const AmalgamOverZ::Element& g : elems) {
    profile.labels.push_back(g.str());
    profile.norms.push_back(gamma_norm(glued.evaluate(g)));
  }
  return profile;
}

double glued_identity_residual(const AmalgamOverZ& am, const GluedCocycle& glued) {
  std::vector<AmalgamOverZ::Element> gens;
  const Ball small_a = Ball::enumerate(am.rank_a(), 1);
  const Ball small_b = Ball::enumerate(am.rank_b(), 1);
  for (const ReducedWord& x : small_a.elements())
    if (!x.is_identity()) gens.push_back(am.embed(0, x));
  for (const ReducedWord& y : small_b.elements())
    if (!y.is_identity()) gens.push_back(am.embed(1, y));
  double worst = 0.0;
  for (const AmalgamOverZ::Element& g : gens)
    for (const AmalgamOverZ::Element& h : gens)
      worst = std::max(worst, glued.identity_residual(g, h));
  return worst;
}

int run_glue(const GlueOpts& o) {
  if (o.w.empty() || o.v.empty()) throw PreconditionError("glue needs --w and --v");
  if (o.rank_a != 2)
    throw PreconditionError("glue builds its base cocycle over rank 2; --rank-a must be 2");
  const std::string out = resolve_out(o.out);
  const ReducedWord w = ReducedWord::parse(o.rank_a, o.w);
  const ReducedWord v = ReducedWord::parse(o.rank_b, o.v);
  const AmalgamOverZ am(o.rank_a, w, o.rank_b, v);

  NullPairOptions opts;
  opts.seed = o.seed;
  const VanishingCocycle base = build_vanishing_cocycle(w, o.radius, opts);
  for (const std::string& warning : base.warnings) std::cout << "warning=" << warning << "\n";
  const GluedCocycle glued(am, base.model);

  std::cout << "base_residual=" << format_double(base.search.residual) << "\n";
  std::cout << "consistency_residual=" << format_double(glued.consistency_residual()) << "\n";
  std::cout << "identity_residual_max=" << format_double(glued_identity_residual(am, glued))
            << "\n";
  emit(out, "glue.csv", to_csv(profile_table(glued_profile(am, glued))));

  emit_manifest(out, "glue",
                {{"rank-a", std::to_string(o.rank_a)},
                 {"w", o.w},
                 {"rank-b", std::to_string(o.rank_b)},
                 {"v", o.v},
                 {"radius", std::to_string(o.radius)},
                 {"seed", std::to_string(o.seed)},
                 {"out", out}});
  return 0;
}

int run_surface(const SurfaceOpts& o) {
  const std::string out = resolve_out(o.out);
  const SurfaceData data = surface_group_data(o.genus);
  const AmalgamOverZ am(data.rank_a, data.w, data.rank_b, data.v);

  NullPairOptions opts;
  opts.seed = o.seed;
  const VanishingCocycle base = build_vanishing_cocycle(data.w, o.radius, opts);
  for (const std::string& warning : base.warnings) std::cout << "warning=" << warning << "\n";
  const GluedCocycle glued(am, base.model);

  std::cout << "rank_a=" << data.rank_a << "\n";
  std::cout << "rank_b=" << data.rank_b << "\n";
  std::cout << "w=" << data.w.str() << "\n";
  std::cout << "v=" << data.v.str() << "\n";
  std::cout << "base_residual=" << format_double(base.search.residual) << "\n";
  std::cout << "consistency_residual=" << format_double(glued.consistency_residual()) << "\n";
  std::cout << "identity_residual_max=" << format_double(glued_identity_residual(am, glued))
            << "\n";
  emit(out, "surface.csv", to_csv(profile_table(glued_profile(am, glued))));

  emit_manifest(out, "surface",
                {{"genus", std::to_string(o.genus)},
                 {"radius", std::to_string(o.radius)},
                 {"seed", std::to_string(o.seed)},
                 {"out", out}});
  return 0;
}

int run_spectral(const SpectralOpts& o) {
  if (o.nmax < 1) throw PreconditionError("spectral needs --nmax at least 1");
  const std::string out = resolve_out(o.out);
  std::map<std::string, std::string> cfg{{"measure", o.measure},
                                         {"nmax", std::to_string(o.nmax)},
                                         {"out", out}};

  if (o.measure == "atomic") {
    if (o.max_atoms < 1) throw PreconditionError("spectral needs --max-atoms at least 1");
    Rng rng(o.seed);
    const AtomicMeasure mu = random_atomic_measure(rng, o.max_atoms);
    CsvTable atoms{{"position", "weight"}, {}};
    for (std::size_t i = 0; i < mu.positions.size(); ++i)
      atoms.rows.push_back({format_double(mu.positions[i]), format_double(mu.weights[i])});
    emit(out, "atoms.csv", to_csv(atoms));

    const std::vector<double> quad = atomic_growth_sequence(mu, o.nmax);
    const std::vector<double> walk = atomic_walk_sequence(mu, o.nmax);
    double gap = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i)
      gap = std::max(gap, std::abs(quad[i] - walk[i]) / std::max(std::abs(walk[i]), 1e-300));
    emit(out, "spectral.csv", to_csv(sequence_table(quad)));
    std::cout << "atoms=" << mu.positions.size() << "\n";
    std::cout << "oracle_gap=" << format_double(gap) << "\n";
    cfg["seed"] = std::to_string(o.seed);
    cfg["max-atoms"] = std::to_string(o.max_atoms);
  } else if (o.measure == "lebesgue") {
    std::vector<double> c;
    double gap = 0.0;
    for (long n = 1; n <= o.nmax; ++n) {
      c.push_back(density_growth([](double) { return 1.0; }, n));
      gap = std::max(gap, std::abs(c.back() - static_cast<double>(n)) / static_cast<double>(n));
    }
    emit(out, "spectral.csv", to_csv(sequence_table(c)));
    std::cout << "linear_gap=" << format_double(gap) << "\n";
  } else {
    ShiftVector f;
    f.offset = o.offset;
    for (const std::string& item : split(o.coeffs, ','))
      f.coeffs.emplace_back(parse_number(trim(item), "shift coefficient"));
    f.validate();
    std::vector<double> c;
    double direct_gap = 0.0;
    for (long n = 1; n <= o.nmax; ++n) {
      c.push_back(shift_growth_exact(f, n));
      direct_gap = std::max(direct_gap, std::abs(c.back() - shift_growth_direct(f, n)));
    }
    emit(out, "spectral.csv", to_csv(sequence_table(c)));
    std::cout << "direct_gap=" << format_double(direct_gap) << "\n";
    cfg["offset"] = std::to_string(o.offset);
    cfg["coeffs"] = o.coeffs;
  }

  emit_manifest(out, "spectral", cfg);
  return 0;
}

int run_edelstein(const EdelsteinOpts& o) {
  if (o.nmax < 1 || o.upto < 1) throw PreconditionError("edelstein needs --nmax and --upto >= 1");
  const std::string out = resolve_out(o.out);

  const GrowthProfile profile = edelstein_profile(o.nmax, o.upto);
  emit(out, "edelstein.csv", to_csv(profile_table(profile)));

  bool bounds_ok = true;
  int last_n = 0;
  long fact = 1;
  for (int n = 1; n < o.nmax && n <= 20; ++n) {
    if (fact > o.upto / n) break;
    fact *= n;
    if (!(edelstein_orbit_norm_sq(fact, o.nmax) <= edelstein_return_bound(n, o.nmax)))
      bounds_ok = false;
    last_n = n;
  }
  std::cout << "return_bounds_upto=" << last_n << "\n";
  std::cout << "return_bounds_hold=" << yn(bounds_ok) << "\n";

  bool decreasing = true;
  double prev = edelstein_almost_fixed(1, o.trunc);
  for (int m = 2; m <= std::min(20, o.trunc - 1); ++m) {
    const double cur = edelstein_almost_fixed(m, o.trunc);
    if (!(cur < prev)) decreasing = false;
    prev = cur;
  }
  std::cout << "almost_fixed_decreasing=" << yn(decreasing) << "\n";

  // Thresholds pinned to ||b(1)||: any return below the first step counts as
  // recurrence, any excursion above it as escape.
  const double scale = profile.norms.front();
  const GrowthClassification cls = classify_growth(profile, {scale, scale, 0.0});
  std::cout << "verdict=" << verdict_name(cls.verdict) << " (heuristic)\n";
  std::cout << "max_norm=" << format_double(cls.max_norm) << "\n";
  std::cout << "tail_min=" << format_double(cls.tail_min) << "\n";
  std::cout << "threshold=" << format_double(scale) << "\n";

  emit_manifest(out, "edelstein",
                {{"nmax", std::to_string(o.nmax)},
                 {"upto", std::to_string(o.upto)},
                 {"trunc", std::to_string(o.trunc)},
                 {"out", out}});
  return 0;
}

int run_cantor(const CantorOpts& o) {
  const std::string out = resolve_out(o.out);
  CantorParams params;
  for (const std::string& item : split(o.scales, ','))
    params.scales.push_back(parse_integer(trim(item), "scale"));
  if (o.epsilons.empty()) {
    for (long n : params.scales)
      params.epsilons.push_back(std::pow(static_cast<double>(n), -5.0));
  } else {
    for (const std::string& item : split(o.epsilons, ','))
      params.epsilons.push_back(parse_number(trim(item), "epsilon"));
  }

  const CantorMeasure mu(params);
  emit(out, "cantor.csv", to_csv(cantor_table(mu)));
  std::cout << "pieces=" << mu.pieces().size() << "\n";
  std::cout << "total_mass=" << format_double(mu.total_mass()) << "\n";

  const CantorClaims claims = evaluate_cantor_claims(mu);
  CsvTable table{{"level", "calibration_error", "claim1_value", "claim1_floor", "claim2_value",
                  "claim2_bound"},
                 {}};
  bool calibration_ok = true, claim1_ok = true, claim2_ok = true;
  for (std::size_t i = 0; i < claims.claim2_value.size(); ++i) {
    table.rows.push_back({std::to_string(i + 1), format_double(claims.calibration_error[i]),
                          format_double(claims.claim1_value[i]),
                          format_double(claims.claim1_floor[i]),
                          format_double(claims.claim2_value[i]),
                          format_double(claims.claim2_bound[i])});
    if (!(claims.calibration_error[i] <= 1e-12)) calibration_ok = false;
    if (!(claims.claim1_value[i] >= claims.claim1_floor[i])) claim1_ok = false;
    if (!(claims.claim2_value[i] <= claims.claim2_bound[i] * (1.0 + kClaim2RelTol)))
      claim2_ok = false;
  }
  emit(out, "claims.csv", to_csv(table));
  std::cout << "calibration_ok=" << yn(calibration_ok) << "\n";
  std::cout << "claim1_ok=" << yn(claim1_ok) << "\n";
  std::cout << "claim2_ok=" << yn(claim2_ok) << "\n";

  emit_manifest(out, "cantor",
                {{"scales", o.scales},
                 {"epsilons", o.epsilons.empty() ? std::string("default") : o.epsilons},
                 {"out", out}});
  return 0;
}

int run_flow(const FlowOpts& o) {
  if (o.real_only)
    throw PreconditionError(
        "the averaging multiplier is genuinely complex; a real-only carrier cannot host the "
        "extension");
  if (o.dim < 1) throw PreconditionError("flow needs --dim at least 1");
  if (o.steps < 1) throw PreconditionError("flow needs --steps at least 1");
  const std::string out = resolve_out(o.out);

  Rng rng(o.seed);
  Eigen::VectorXd angles(o.dim);
  for (int j = 0; j < o.dim; ++j)
    angles[j] = std::numbers::pi * (2.0 * rng.next_double() - 1.0);
  Eigen::VectorXcd b(o.dim);
  for (int j = 0; j < o.dim; ++j) {
    const double re = 2.0 * rng.next_double() - 1.0;
    const double im = 2.0 * rng.next_double() - 1.0;
    b[j] = Complex(re, im);
  }

  const DiagonalUnitary u(angles);
  const FlowSpec spec = solve_flow(u, b);
  const double bn = b.norm();

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(o.steps));
  for (int i = 0; i < o.steps; ++i) {
    grid.push_back(o.steps == 1 ? o.tmin
                                : o.tmin + (o.tmax - o.tmin) * static_cast<double>(i) /
                                      static_cast<double>(o.steps - 1));
  }
  emit(out, "flow.csv", to_csv(flow_table(extend_z_action(u, b, grid))));

  std::cout << "xi_norm=" << format_double(spec.xi.norm()) << "\n";
  std::cout << "xi_bound=" << format_double(0.5 * std::numbers::pi * bn) << "\n";
  std::cout << "inversion_residual=" << format_double((flow_cocycle(spec, 1.0) - b).norm() / bn)
            << "\n";
  std::cout << "identity_residual=" << format_double(flow_identity_residual(spec, 0.3, 0.7) / bn)
            << "\n";

  emit_manifest(out, "flow",
                {{"dim", std::to_string(o.dim)},
                 {"seed", std::to_string(o.seed)},
                 {"tmin", format_double(o.tmin)},
                 {"tmax", format_double(o.tmax)},
                 {"steps", std::to_string(o.steps)},
                 {"out", out}});
  return 0;
}

int run_tree(const TreeOpts& o) {
  if (o.rank < 1) throw PreconditionError("tree needs --rank at least 1");
  if (o.radius < 0) throw PreconditionError("tree needs --radius at least 0");
  const std::string out = resolve_out(o.out);

  const Ball ball = Ball::enumerate(o.rank, o.radius);
  emit(out, "tree.csv",
       to_csv(profile_table(tree_cocycle_growth(o.rank, o.radius, o.p, ball.elements()))));

  const TreeCocycleModel model(o.rank, o.p);
  bool exact = true;
  for (const ReducedWord& g : ball.elements())
    if (model.norm_pp(evaluate_cocycle(model, g)) != static_cast<double>(g.length()))
      exact = false;
  std::cout << "ball_size=" << ball.size() << "\n";
  std::cout << "norm_law_exact=" << yn(exact) << "\n";

  emit_manifest(out, "tree",
                {{"rank", std::to_string(o.rank)},
                 {"radius", std::to_string(o.radius)},
                 {"p", format_double(o.p)},
                 {"out", out}});
  return 0;
}

int run_walls(const WallsOpts& o) {
  if (o.file.empty()) throw PreconditionError("walls needs --file");
  const std::string out = resolve_out(o.out);
  const WallSpace ws = WallSpace::load(o.file);
  const int base = o.base.empty() ? 0 : ws.point_index(o.base);

  CsvTable pairs{{"x", "y", "distance"}, {}};
  bool norm_law = true;
  for (int x = 0; x < ws.point_count(); ++x)
    for (int y = x + 1; y < ws.point_count(); ++y) {
      const double d = wall_distance(ws, x, y);
      pairs.rows.push_back({ws.point_id(x), ws.point_id(y), format_double(d)});
      if (wall_norm(ws, x, y, o.p) != d) norm_law = false;
    }
  emit(out, "walls.csv", to_csv(pairs));
  std::cout << "points=" << ws.point_count() << "\n";
  std::cout << "walls=" << ws.wall_count() << "\n";
  std::cout << "norm_law_exact=" << yn(norm_law) << "\n";

  if (ws.rank() >= 1) {
    const WallCocycleModel model(ws, base, o.p);
    const Ball ball = Ball::enumerate(ws.rank(), o.radius);
    emit(out, "wall_profile.csv", to_csv(profile_table(growth_profile(model, ball.elements()))));
    const Ball small = Ball::enumerate(ws.rank(), 1);
    double worst = 0.0;
    for (const ReducedWord& g : small.elements())
      for (const ReducedWord& h : small.elements())
        worst = std::max(worst, cocycle_identity_residual(model, g, h));
    std::cout << "action_rank=" << ws.rank() << "\n";
    std::cout << "identity_residual_max=" << format_double(worst) << "\n";
  } else {
    std::cout << "action_rank=0\n";
  }

  emit_manifest(out, "walls",
                {{"file", o.file},
                 {"base", o.base.empty() ? ws.point_id(0) : o.base},
                 {"p", format_double(o.p)},
                 {"radius", std::to_string(o.radius)},
                 {"out", out}});
  return 0;
}

int run_gradient(const GradientOpts& o) {
  if (o.g.empty()) throw PreconditionError("gradient needs --g");
  const std::string out = resolve_out(o.out);
  std::map<ReducedWord, double> f;
  for (const std::string& item : split(o.f, ',')) {
    const std::string entry = trim(item);
    const auto colon = entry.find_last_of(':');
    if (colon == std::string::npos || colon == 0)
      throw PreconditionError("--f entries must look like word:value, got: " + entry);
    const ReducedWord u = ReducedWord::parse(o.rank, trim(entry.substr(0, colon)));
    if (!f.emplace(u, parse_number(trim(entry.substr(colon + 1)), "--f value")).second)
      throw PreconditionError("repeated word in --f: " + u.str());
  }
  const ReducedWord g = ReducedWord::parse(o.rank, o.g);

  const GradientCheck check = gradient_cocycle(o.rank, f, g, o.p, o.radius);
  CsvTable table{{"lhs", "rhs", "holds"}, {}};
  table.rows.push_back({format_double(check.lhs), format_double(check.rhs), yn(check.holds)});
  emit(out, "gradient.csv", to_csv(table));
  std::cout << "lhs=" << format_double(check.lhs) << "\n";
  std::cout << "rhs=" << format_double(check.rhs) << "\n";
  std::cout << "holds=" << yn(check.holds) << "\n";

  emit_manifest(out, "gradient",
                {{"rank", std::to_string(o.rank)},
                 {"f", o.f},
                 {"g", o.g},
                 {"p", format_double(o.p)},
                 {"radius", std::to_string(o.radius)},
                 {"out", out}});
  return 0;
}

GrowthProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open profile: " + path);
  GrowthProfile profile;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto comma = line.find_last_of(',');
    const std::string label = comma == std::string::npos ? "" : line.substr(0, comma);
    const std::string cell = comma == std::string::npos ? line : line.substr(comma + 1);
    profile.labels.push_back(label);
    profile.norms.push_back(parse_number(cell, "profile value"));
  }
  if (profile.norms.size() < 2) throw PreconditionError("profile needs at least two data rows");
  return profile;
}

int run_classify(const ClassifyOpts& o) {
  if (o.input.empty()) throw PreconditionError("classify needs --input");
  const std::string out = resolve_out(o.out);
  const GrowthProfile profile = read_profile_csv(o.input);

  GrowthThresholds t = default_thresholds(profile.norms.front());
  if (!std::isnan(o.bound)) t.bound = o.bound;
  if (!std::isnan(o.recurrence)) t.recurrence = o.recurrence;
  if (!std::isnan(o.trend)) t.trend = o.trend;

  const GrowthClassification cls = classify_growth(profile, t);
  std::cout << verdict_name(cls.verdict) << " (heuristic): max_norm="
            << format_double(cls.max_norm) << " tail_min=" << format_double(cls.tail_min)
            << " tail_min_slope=" << format_double(cls.tail_min_slope)
            << " bound=" << format_double(t.bound)
            << " recurrence=" << format_double(t.recurrence)
            << " trend=" << format_double(t.trend) << "\n";

  CsvTable table{{"verdict", "max_norm", "tail_min", "tail_min_slope", "bound", "recurrence",
                  "trend"},
                 {}};
  table.rows.push_back({verdict_name(cls.verdict), format_double(cls.max_norm),
                        format_double(cls.tail_min), format_double(cls.tail_min_slope),
                        format_double(t.bound), format_double(t.recurrence),
                        format_double(t.trend)});
  emit(out, "classification.csv", to_csv(table));

  emit_manifest(out, "classify",
                {{"input", o.input},
                 {"bound", format_double(t.bound)},
                 {"recurrence", format_double(t.recurrence)},
                 {"trend", format_double(t.trend)},
                 {"out", out}});
  return 0;
}

int run_repro(const ReproOpts& o) {
  const std::string out = resolve_out(o.out);
  const AcceptanceReport report = run_acceptance(o.only);
  std::cout << acceptance_summary(report);

  CsvTable table{{"number", "name", "passed", "detail"}, {}};
  for (const CriterionResult& r : report.results)
    table.rows.push_back({std::to_string(r.number), r.name, yn(r.passed), r.detail});
  emit(out, "acceptance.csv", to_csv(table));

  std::string only;
  for (std::size_t i = 0; i < o.only.size(); ++i)
    only += (i ? "," : "") + std::to_string(o.only[i]);
  emit_manifest(out, "repro", {{"only", only.empty() ? std::string("all") : only}, {"out", out}});
  return report.all_passed() ? 0 : 3;
}

// ---------------------------------------------------------------------------

struct SubEntry {
  CLI::App* sub;
  const std::string* config;
  int (*run)(const Options&);
};

std::vector<SubEntry> sub_entries(const Options& o) {
  return {
      {o.fox.sub, &o.fox.config, [](const Options& x) { return run_fox(x.fox); }},
      {o.nullpair.sub, &o.nullpair.config,
       [](const Options& x) { return run_nullpair(x.nullpair); }},
      {o.amalgam.sub, &o.amalgam.config, [](const Options& x) { return run_amalgam(x.amalgam); }},
      {o.glue.sub, &o.glue.config, [](const Options& x) { return run_glue(x.glue); }},
      {o.surface.sub, &o.surface.config, [](const Options& x) { return run_surface(x.surface); }},
      {o.spectral.sub, &o.spectral.config,
       [](const Options& x) { return run_spectral(x.spectral); }},
      {o.edelstein.sub, &o.edelstein.config,
       [](const Options& x) { return run_edelstein(x.edelstein); }},
      {o.cantor.sub, &o.cantor.config, [](const Options& x) { return run_cantor(x.cantor); }},
      {o.flow.sub, &o.flow.config, [](const Options& x) { return run_flow(x.flow); }},
      {o.tree.sub, &o.tree.config, [](const Options& x) { return run_tree(x.tree); }},
      {o.walls.sub, &o.walls.config, [](const Options& x) { return run_walls(x.walls); }},
      {o.gradient.sub, &o.gradient.config,
       [](const Options& x) { return run_gradient(x.gradient); }},
      {o.classify.sub, &o.classify.config,
       [](const Options& x) { return run_classify(x.classify); }},
      {o.repro.sub, &o.repro.config, [](const Options& x) { return run_repro(x.repro); }},
  };
}

int run_cli(std::vector<std::string> args, bool allow_config) {
  Options o;
  CLI::App app{"Numeric and symbolic laboratory for translation parts of affine isometric "
               "group actions"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  build_app(app, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage] " << e.what() << "\n";
    return 2;
  }

  for (const SubEntry& entry : sub_entries(o)) {
    if (!entry.sub->parsed()) continue;
    if (allow_config && !entry.config->empty()) {
      std::vector<std::string> inject;
      for (const auto& [key, value] : read_config_file(*entry.config)) {
        CLI::Option* op = entry.sub->get_option_no_throw("--" + key);
        if (op == nullptr) throw PreconditionError("unknown config key: " + key);
        if (op->count() == 0) inject.push_back("--" + key + "=" + value);
      }
      if (!inject.empty()) {
        const auto pos = std::find(args.begin(), args.end(), entry.sub->get_name());
        args.insert(pos + 1, inject.begin(), inject.end());
        return run_cli(std::move(args), false);
      }
    }
    return entry.run(o);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), true);
  } catch (const PreconditionError& e) {
    std::cerr << "error[precondition] " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error[numerical] " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error[internal] " << e.what() << "\n";
    return 1;
  }
}
