#include "cocyclelab/spectral.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

constexpr long double kPiLd = std::numbers::pi_v<long double>;

GaussLegendre compute_gauss_legendre(int m) {
  GaussLegendre rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double p1 = 0.0, dp = 1.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0;
      p1 = x;
      for (int j = 2; j <= m; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m == 1 ? 1.0 : m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

double composite_kernel_quadrature(const std::function<double(double)>& rho, long n,
                                   long panels) {
  const GaussLegendre& rule = gauss_legendre(8);
  double total = 0.0;
  for (long p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / static_cast<double>(panels);
    const double b = static_cast<double>(p + 1) / static_cast<double>(panels);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double panel = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double x = mid + half * rule.nodes[j];
      panel += rule.weights[j] * spectral_kernel(n, x) * rho(x);
    }
    total += panel * half;
  }
  return total;
}

}  // namespace

const GaussLegendre& gauss_legendre(int m) {
  if (m < 1) throw PreconditionError("quadrature rule needs at least one node");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, compute_gauss_legendre(m)).first;
  return it->second;
}

long double spectral_kernel_ld(long n, long double x) {
  if (n < 0) throw PreconditionError("kernel index must be nonnegative");
  if (n == 0) return 0.0L;
  long double sx = std::sin(kPiLd * x);
  if (std::abs(sx) < 1e-8L) {
    std::complex<long double> sum(0.0L, 0.0L);
    for (long j = 0; j < n; ++j) {
      long double arg = 2.0L * kPiLd * static_cast<long double>(j) * x;
      sum += std::complex<long double>(std::cos(arg), std::sin(arg));
    }
    return std::norm(sum);
  }
  long double r = std::sin(kPiLd * static_cast<long double>(n) * x) / sx;
  return r * r;
}

double spectral_kernel(long n, double x) {
  return static_cast<double>(spectral_kernel_ld(n, static_cast<long double>(x)));
}

double AtomicMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void AtomicMeasure::validate() const {
  if (positions.size() != weights.size())
    throw PreconditionError("atomic measure needs one weight per atom");
  if (positions.empty()) throw PreconditionError("atomic measure needs at least one atom");
  for (double x : positions)
    if (!(x >= 0.0 && x < 1.0)) throw PreconditionError("atom positions must lie in [0,1)");
  for (double w : weights)
    if (!(w > 0.0)) throw PreconditionError("atom weights must be positive");
}

AtomicMeasure random_atomic_measure(Rng& rng, int max_atoms) {
  if (max_atoms < 1) throw PreconditionError("max_atoms must be at least 1");
  AtomicMeasure mu;
  int natoms = 1 + static_cast<int>(rng.next_double() * max_atoms);
  if (natoms > max_atoms) natoms = max_atoms;
  mu.positions.reserve(natoms);
  mu.weights.reserve(natoms);
  for (int i = 0; i < natoms; ++i) mu.positions.push_back(0.01 + 0.98 * rng.next_double());
  double total = 0.0;
  for (int i = 0; i < natoms; ++i) {
    mu.weights.push_back(rng.next_double());
    total += mu.weights.back();
  }
  for (double& w : mu.weights) w /= total;
  return mu;
}

double atomic_growth(const AtomicMeasure& mu, long n) {
  mu.validate();
  long double s = 0.0L;
  for (std::size_t i = 0; i < mu.positions.size(); ++i)
    s += static_cast<long double>(mu.weights[i]) *
         spectral_kernel_ld(n, static_cast<long double>(mu.positions[i]));
  return static_cast<double>(s);
}

std::vector<double> atomic_growth_sequence(const AtomicMeasure& mu, long n_max) {
  mu.validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (long n = 1; n <= n_max; ++n) out.push_back(atomic_growth(mu, n));
  return out;
}

std::vector<double> atomic_walk_sequence(const AtomicMeasure& mu, long n_max) {
  mu.validate();
  const std::size_t d = mu.positions.size();
  std::vector<std::complex<long double>> phase(d), u(d), acc(d);
  std::vector<long double> xi(d);
  for (std::size_t i = 0; i < d; ++i) {
    long double ang = 2.0L * kPiLd * static_cast<long double>(mu.positions[i]);
    phase[i] = {std::cos(ang), std::sin(ang)};
    u[i] = {1.0L, 0.0L};
    acc[i] = {0.0L, 0.0L};
    xi[i] = std::sqrt(static_cast<long double>(mu.weights[i]));
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (long n = 1; n <= n_max; ++n) {
    long double c = 0.0L;
    for (std::size_t i = 0; i < d; ++i) {
      acc[i] += u[i] * xi[i];
      u[i] *= phase[i];
      c += std::norm(acc[i]);
    }
    out.push_back(static_cast<double>(c));
  }
  return out;
}

double density_growth(const std::function<double(double)>& rho, long n, int bandwidth_hint,
                      double rel_tol) {
  if (n < 1) throw PreconditionError("growth index must be positive");
  if (bandwidth_hint < 0) throw PreconditionError("bandwidth hint must be nonnegative");
  if (!(rel_tol > 0.0)) throw PreconditionError("quadrature tolerance must be positive");
  long panels = std::max<long>(8, n + 2L * bandwidth_hint);
  double prev = composite_kernel_quadrature(rho, n, panels);
  for (int round = 0; round < 6; ++round) {
    panels *= 2;
    const double next = composite_kernel_quadrature(rho, n, panels);
    if (std::abs(next - prev) <= rel_tol * std::max(std::abs(next), 1.0)) return next;
    prev = next;
  }
  std::ostringstream os;
  os << "density quadrature did not settle to " << rel_tol << "; achieved estimate " << prev;
  throw NumericalError(os.str());
}

double ShiftVector::mass() const {
  double s = 0.0;
  for (Complex c : coeffs) s += std::norm(c);
  return s;
}

void ShiftVector::validate() const {
  bool nonzero = false;
  for (Complex c : coeffs) nonzero = nonzero || c != Complex(0.0);
  if (!nonzero) throw PreconditionError("shift vector must be nonzero");
}

double shift_density(const ShiftVector& f, double x) {
  Complex hat(0.0);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    double arg = 2.0 * std::numbers::pi * static_cast<double>(f.offset + static_cast<long>(i)) * x;
    hat += f.coeffs[i] * Complex(std::cos(arg), std::sin(arg));
  }
  return std::norm(hat);
}

double shift_growth_direct(const ShiftVector& f, long n) {
  f.validate();
  if (n < 1) throw PreconditionError("growth index must be positive");
  // sum_{j<n} T^j f has coefficient sum_{j<n} f(k - j) at position k.
  const long len = static_cast<long>(f.coeffs.size());
  std::vector<Complex> summed(static_cast<std::size_t>(len + n - 1), Complex(0.0));
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < len; ++k) summed[static_cast<std::size_t>(j + k)] += f.coeffs[k];
  double s = 0.0;
  for (Complex c : summed) s += std::norm(c);
  return s;
}

double shift_growth_exact(const ShiftVector& f, long n) {
  f.validate();
  if (n < 1) throw PreconditionError("growth index must be positive");
  const long len = static_cast<long>(f.coeffs.size());
  double c = static_cast<double>(n) * f.mass();
  for (long m = 1; m < std::min(n, len); ++m) {
    Complex a(0.0);
    for (long k = 0; k + m < len; ++k) a += f.coeffs[k + m] * std::conj(f.coeffs[k]);
    c += 2.0 * static_cast<double>(n - m) * a.real();
  }
  return c;
}

double shift_growth_quadrature(const ShiftVector& f, long n) {
  f.validate();
  const long hi = f.offset + static_cast<long>(f.coeffs.size());
  const int hint = static_cast<int>(std::max(std::labs(f.offset), std::labs(hi)));
  return density_growth([&f](double x) { return shift_density(f, x); }, n, hint);
}

double edelstein_orbit_norm_sq(long m, int n_max) {
  if (m < 0) throw PreconditionError("orbit exponent must be nonnegative");
  if (n_max < 1) throw PreconditionError("truncation must be at least 1");
  double total = 0.0;
  long fact = 1;
  for (int n = 1; n <= n_max; ++n) {
    fact *= n;
    const long rem = m % fact;
    const double half_angle = std::numbers::pi * static_cast<double>(rem) / static_cast<double>(fact);
    const double s = std::sin(half_angle);
    total += 4.0 * s * s;
  }
  return total;
}

AtomicMeasure edelstein_measure(int n_max) {
  if (n_max < 1) throw PreconditionError("truncation must be at least 1");
  AtomicMeasure mu;
  long fact = 1;
  for (int n = 1; n <= n_max; ++n) {
    fact *= n;
    double x = 1.0 / static_cast<double>(fact);
    const double s = std::sin(std::numbers::pi * x);
    if (x >= 1.0) x -= 1.0;
    mu.positions.push_back(x);
    mu.weights.push_back(4.0 * s * s);
  }
  return mu;
}

double edelstein_return_bound(int n, int n_max) {
  if (n < 1 || n > n_max) throw PreconditionError("return bound needs 1 <= n <= n_max");
  double fact_n = 1.0;
  for (int j = 2; j <= n; ++j) fact_n *= j;
  double bound = 0.0;
  double fact_k = fact_n;
  for (int k = n + 1; k <= n_max; ++k) {
    fact_k *= k;
    const double term = 2.0 * std::numbers::pi * fact_n / fact_k;
    bound += term * term;
  }
  return bound;
}

double edelstein_almost_fixed(int m, int trunc) {
  if (m < 1 || trunc < m) throw PreconditionError("almost-fixed check needs 1 <= m <= trunc");
  double fact = 1.0;
  for (int j = 2; j <= m; ++j) fact *= j;
  double s = 0.0;
  for (int n = m + 1; n <= trunc; ++n) {
    fact *= n;
    const double sn = std::sin(std::numbers::pi / fact);
    s += 4.0 * sn * sn;
  }
  return std::sqrt(s);
}

GrowthProfile edelstein_profile(int n_max, long m_max) {
  GrowthProfile p;
  p.labels.reserve(static_cast<std::size_t>(m_max));
  p.norms.reserve(static_cast<std::size_t>(m_max));
  for (long m = 1; m <= m_max; ++m) {
    p.labels.push_back(std::to_string(m));
    p.norms.push_back(std::sqrt(edelstein_orbit_norm_sq(m, n_max)));
  }
  return p;
}

GrowthProfile atomic_orbit_profile(const AtomicMeasure& mu, long m_max) {
  GrowthProfile p;
  p.labels.reserve(static_cast<std::size_t>(m_max));
  p.norms.reserve(static_cast<std::size_t>(m_max));
  std::vector<double> c = atomic_growth_sequence(mu, m_max);
  for (long m = 1; m <= m_max; ++m) {
    p.labels.push_back(std::to_string(m));
    p.norms.push_back(std::sqrt(c[static_cast<std::size_t>(m - 1)]));
  }
  return p;
}

}  // namespace cocyclelab
