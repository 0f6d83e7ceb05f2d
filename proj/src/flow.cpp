#include "cocyclelab/flow.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

constexpr double kTaylorCut = 1e-4;

std::string label_for(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

}  // namespace

double wrap_angle(double x) {
  if (!std::isfinite(x)) throw PreconditionError("angle must be finite");
  double r = std::remainder(x, 2.0 * std::numbers::pi);
  if (r >= std::numbers::pi) r = -std::numbers::pi;
  return r;
}

double angle_from_circle(double frac) {
  if (!std::isfinite(frac)) throw PreconditionError("circle parameter must be finite");
  frac -= std::floor(frac);
  double x = 2.0 * std::numbers::pi * frac;
  if (frac >= 0.5) x -= 2.0 * std::numbers::pi;
  return x;
}

Complex flow_average(double u) {
  if (!std::isfinite(u)) throw PreconditionError("argument must be finite");
  if (std::abs(u) < kTaylorCut) {
    const double u2 = u * u;
    return Complex(1.0 - u2 / 6.0 + u2 * u2 / 120.0, u / 2.0 - u2 * u / 24.0);
  }
  const Complex iu(0.0, u);
  return (std::exp(iu) - 1.0) / iu;
}

Complex flow_multiplier(double x) {
  if (!std::isfinite(x)) throw PreconditionError("argument must be finite");
  if (std::abs(x) < kTaylorCut) {
    const double x2 = x * x;
    return Complex(1.0 - x2 / 12.0 - x2 * x2 / 720.0, -x / 2.0);
  }
  const Complex ix(0.0, x);
  return ix / (std::exp(ix) - 1.0);
}

DiagonalUnitary::DiagonalUnitary(Eigen::VectorXd a) : angles(std::move(a)) {
  for (Eigen::Index j = 0; j < angles.size(); ++j) angles[j] = wrap_angle(angles[j]);
}

Eigen::VectorXcd one_param(const DiagonalUnitary& u, double s) {
  if (!std::isfinite(s)) throw PreconditionError("flow parameter must be finite");
  Eigen::VectorXcd out(u.dimension());
  for (Eigen::Index j = 0; j < out.size(); ++j)
    out[j] = std::polar(1.0, s * u.angles[j]);
  return out;
}

FlowSpec solve_flow(const DiagonalUnitary& u, const Eigen::VectorXcd& b) {
  if (b.size() != u.dimension()) throw PreconditionError("dimension mismatch in flow solve");
  Eigen::VectorXcd xi(b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) xi[j] = flow_multiplier(u.angles[j]) * b[j];
  return FlowSpec{u, b, std::move(xi)};
}

Eigen::VectorXcd apply_average(const DiagonalUnitary& u, double t, const Eigen::VectorXcd& v) {
  if (!std::isfinite(t)) throw PreconditionError("flow parameter must be finite");
  if (v.size() != u.dimension()) throw PreconditionError("dimension mismatch in flow average");
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j)
    out[j] = v[j] * t * flow_average(t * u.angles[j]);
  return out;
}

Eigen::VectorXcd flow_cocycle(const FlowSpec& spec, double t) {
  return apply_average(spec.unitary, t, spec.xi);
}

double flow_identity_residual(const FlowSpec& spec, double t, double u) {
  const Eigen::VectorXcd lhs = flow_cocycle(spec, t + u);
  const Eigen::VectorXcd rhs =
      flow_cocycle(spec, t) + one_param(spec.unitary, t).cwiseProduct(flow_cocycle(spec, u));
  return (lhs - rhs).norm();
}

GrowthProfile extend_z_action(const DiagonalUnitary& u, const Eigen::VectorXcd& b,
                              const std::vector<double>& t_grid) {
  const FlowSpec spec = solve_flow(u, b);
  GrowthProfile p;
  p.labels.reserve(t_grid.size());
  p.norms.reserve(t_grid.size());
  for (double t : t_grid) {
    p.labels.push_back(label_for(t));
    p.norms.push_back(flow_cocycle(spec, t).norm());
  }
  return p;
}

}  // namespace cocyclelab
