#include "cocyclelab/fox.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Sparse>
#include <cmath>
#include <memory>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/rng.hpp"

namespace cocyclelab {

std::vector<AlgebraElement> fox_elements(const ReducedWord& w) {
  std::vector<AlgebraElement> out(static_cast<std::size_t>(w.rank()), AlgebraElement(w.rank()));
  ReducedWord prefix = ReducedWord::identity(w.rank());
  for (const Letter& l : w.letters()) {
    ReducedWord term = prefix;
    if (l.exp < 0) term = term * ReducedWord::generator(w.rank(), l.gen, -1);
    out[static_cast<std::size_t>(l.gen - 1)].add_term(term, static_cast<double>(l.exp));
    prefix = prefix * ReducedWord::generator(w.rank(), l.gen, l.exp);
  }
  return out;
}

double fox_identity_residual(const RegularCocycleModel& model, const ReducedWord& w) {
  if (model.rank() != w.rank()) throw PreconditionError("rank mismatch in identity check");
  AlgebraElement expanded(w.rank());
  std::vector<AlgebraElement> fox = fox_elements(w);
  for (int g = 1; g <= w.rank(); ++g)
    expanded += fox[static_cast<std::size_t>(g - 1)] * model.generator_value(g);
  return (evaluate_cocycle(model, w) - expanded).norm();
}

namespace {

// Smallest eigenpair of a 2x2 Hermitian matrix [[a, b], [conj(b), d]].
void smallest_pair_2x2(double a, Complex b, double d, double& lam, Complex& z0, Complex& z1) {
  double mid = 0.5 * (a + d);
  double off = std::hypot(0.5 * (a - d), std::abs(b));
  lam = mid - off;
  // (H - lam) z = 0; pick the better-conditioned row.
  Complex r0 = a - lam, r1 = d - lam;
  if (std::abs(r0) >= std::abs(r1)) {
    z0 = -b;
    z1 = r0;
  } else {
    z0 = r1;
    z1 = -std::conj(b);
  }
  double n = std::sqrt(std::norm(z0) + std::norm(z1));
  if (n == 0.0) {
    z0 = 1.0;
    z1 = 0.0;
  } else {
    z0 /= n;
    z1 /= n;
  }
}

}  // namespace

NullPairResult null_pair_search(const AlgebraElement& f1, const AlgebraElement& f2, int radius,
                                const NullPairOptions& opts) {
  if (f1.rank() != f2.rank()) throw PreconditionError("rank mismatch in null pair search");
  if (f1.is_zero() || f2.is_zero())
    throw PreconditionError("null pair search needs two nonzero elements");
  if (radius < 0) throw PreconditionError("radius must be >= 0");

  const int rank = f1.rank();
  const int ell = static_cast<int>(std::max(f1.max_length(), f2.max_length()));
  auto in_ball = std::make_shared<const Ball>(Ball::enumerate(rank, radius, opts.ball_cap));
  auto out_ball = std::make_shared<const Ball>(Ball::enumerate(rank, radius + ell, opts.ball_cap));

  const Eigen::Index n_in = static_cast<Eigen::Index>(in_ball->size());
  Eigen::SparseMatrix<Complex> a1 = truncated_matrix(f1, *in_ball, *out_ball);
  Eigen::SparseMatrix<Complex> a2 = truncated_matrix(f2, *in_ball, *out_ball);
  Eigen::SparseMatrix<Complex> m(a1.rows(), 2 * n_in);
  {
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(a1.nonZeros() + a2.nonZeros()));
    for (int k = 0; k < a1.outerSize(); ++k)
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(a1, k); it; ++it)
        trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int k = 0; k < a2.outerSize(); ++k)
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(a2, k); it; ++it)
        trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col() + n_in),
                           it.value());
    m.setFromTriplets(trips.begin(), trips.end());
  }

  Eigen::MatrixXcd normal = Eigen::MatrixXcd(m.adjoint() * m);
  const Eigen::Index n = normal.rows();
  double scale = normal.cwiseAbs().rowwise().sum().maxCoeff();
  double tau = 1e-10 * scale;

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  double shift = 0.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(normal + tau * id);
  if (llt.info() != Eigen::Success)
    throw NumericalError("factorization of the shifted normal operator failed");

  Rng rng(opts.seed);
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
  x.normalize();

  double rho = std::real(x.dot(normal * x));
  double rho_prev = rho;
  int stable = 0, iters = 0;
  for (int k = 0; k < opts.max_iterations; ++k) {
    iters = k + 1;
    Eigen::VectorXcd y = llt.solve(x);
    y.normalize();

    // Rayleigh-Ritz on span{y, previous iterate}: handles clustered spectra
    // where plain iteration crawls.
    Eigen::VectorXcd q2 = x - y * (y.dot(x));
    double q2n = q2.norm();
    Eigen::VectorXcd ny = normal * y;
    if (q2n > 1e-12) {
      q2 /= q2n;
      Eigen::VectorXcd nq2 = normal * q2;
      double a = std::real(y.dot(ny));
      Complex b = y.dot(nq2);
      double d = std::real(q2.dot(nq2));
      double lam;
      Complex z0, z1;
      smallest_pair_2x2(a, b, d, lam, z0, z1);
      x = (z0 * y + z1 * q2).normalized();
      rho = lam;
    } else {
      x = y;
      rho = std::real(y.dot(ny));
    }

    // Move the factorization shift up toward rho - resid once the margin has
    // shrunk enough to pay for a refactorization. Staying a full residual
    // below the estimate keeps the shifted operator positive definite; if a
    // trial factorization fails anyway, the previous shift stays in place.
    double resid = (normal * x - rho * x).norm();
    double cand = rho - resid;
    if (cand > 0.0 && cand > shift + 0.25 * (rho - shift)) {
      Eigen::LLT<Eigen::MatrixXcd> trial(normal - cand * id + tau * id);
      if (trial.info() == Eigen::Success) {
        llt = std::move(trial);
        shift = cand;
      }
    }

    if (std::abs(rho - rho_prev) <= opts.tol * std::max(std::abs(rho), tau)) {
      if (++stable >= 3) break;
    } else {
      stable = 0;
    }
    rho_prev = rho;
  }
  if (stable < 3)
    throw NumericalError("inverse iteration did not settle in " +
                         std::to_string(opts.max_iterations) + " iterations");

  // Canonical phase so reruns are bit-identical.
  Eigen::Index imax;
  x.cwiseAbs().maxCoeff(&imax);
  Complex ph = x[imax] / std::abs(x[imax]);
  x *= std::conj(ph);

  NullPairResult res;
  res.radius = radius;
  res.iterations = iters;
  res.residual = (m * x).norm();
  res.xi1 = TruncatedVector{in_ball, x.head(n_in)};
  res.xi2 = TruncatedVector{in_ball, x.tail(n_in)};
  res.norm1 = res.xi1.norm();
  res.norm2 = res.xi2.norm();
  return res;
}

VanishingCocycle build_vanishing_cocycle(const ReducedWord& w, int radius,
                                         const NullPairOptions& opts, double degenerate_floor) {
  if (w.rank() != 2)
    throw PreconditionError("vanishing cocycle construction works over F_2");
  bool has_s = false, has_t = false;
  for (const Letter& l : w.letters()) (l.gen == 1 ? has_s : has_t) = true;
  if (!has_s || !has_t)
    throw PreconditionError(
        "word '" + w.str() +
        "' does not use both generators; use the amalgam construction for one-generator words");

  std::vector<AlgebraElement> fox = fox_elements(w);
  NullPairResult search = null_pair_search(fox[0], fox[1], radius, opts);

  std::vector<AlgebraElement> values{search.xi1.to_sparse(), search.xi2.to_sparse()};
  VanishingCocycle out{RegularCocycleModel(2, std::move(values)), search, 0.0, {}};
  out.reported_norm = out.model.norm(evaluate_cocycle(out.model, w));

  if (search.norm1 < degenerate_floor || search.norm2 < degenerate_floor)
    out.warnings.push_back("degenerate pair: component norms " + std::to_string(search.norm1) +
                           ", " + std::to_string(search.norm2));
  return out;
}

std::vector<ReducedWord> finite_index_generators(int k) {
  if (k < 2) throw PreconditionError("subgroup rank must be at least 2");
  const int m = k - 1;
  std::vector<ReducedWord> gens;
  gens.reserve(static_cast<std::size_t>(k));
  gens.push_back(pow(ReducedWord::generator(2, 2), m));
  for (int i = 0; i < m; ++i) {
    ReducedWord ti = pow(ReducedWord::generator(2, 2), i);
    gens.push_back(ti * ReducedWord::generator(2, 1) * ti.inverse());
  }
  return gens;
}

AlgebraElement coset_component(const AlgebraElement& f, int modulus, int residue) {
  if (f.rank() != 2) throw PreconditionError("coset projection works over F_2");
  if (modulus < 1) throw PreconditionError("modulus must be positive");
  residue = ((residue % modulus) + modulus) % modulus;
  AlgebraElement out(2);
  for (const auto& [word, c] : f.terms()) {
    long t_sum = 0;
    for (const Letter& l : word.letters())
      if (l.gen == 2) t_sum += l.exp;
    if (((t_sum % modulus) + modulus) % modulus == residue) out.add_term(word, c);
  }
  return out;
}

}  // namespace cocyclelab
