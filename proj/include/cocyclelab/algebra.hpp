#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "cocyclelab/freegroup.hpp"

namespace cocyclelab {

using Complex = std::complex<double>;

// Finitely supported element of the group algebra C[F_k], also used as a
// finitely supported vector in l^2(F_k). Terms are kept in shortlex order
// and coefficients that become exactly zero are dropped, so integer-valued
// inputs cancel exactly.
class AlgebraElement {
 public:
  explicit AlgebraElement(int rank) : rank_(rank) {}

  static AlgebraElement delta(const ReducedWord& w, Complex c = 1.0);

  int rank() const { return rank_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ReducedWord, Complex>& terms() const { return terms_; }

  Complex coeff(const ReducedWord& w) const;
  void add_term(const ReducedWord& w, Complex c);

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex scalar);
  friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) {
    return lhs += rhs;
  }
  friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) {
    return lhs -= rhs;
  }
  friend AlgebraElement operator*(Complex scalar, AlgebraElement rhs) { return rhs *= scalar; }

  // Convolution (f*g)(x) = sum_h f(h) g(h^-1 x).
  AlgebraElement operator*(const AlgebraElement& rhs) const;

  // Involution f^*(x) = conj(f(x^-1)).
  AlgebraElement star() const;

  // l^2 norm of the coefficients.
  double norm() const;

  // Longest word in the support, 0 for the zero element.
  std::size_t max_length() const;

  std::string str() const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  int rank_;
  std::map<ReducedWord, Complex> terms_;
};

// "coef*word" terms joined by commas, e.g. "1*e,-1*stS" or "s,-t". Real
// coefficients only.
AlgebraElement parse_algebra_element(int rank, std::string_view text);

// Dense coefficient vector over an enumerated ball.
struct TruncatedVector {
  std::shared_ptr<const Ball> ball;
  Eigen::VectorXcd coeffs;

  double norm() const { return coeffs.norm(); }

  // Drops entries with |c| <= drop_tol.
  AlgebraElement to_sparse(double drop_tol = 0.0) const;
};

TruncatedVector to_truncated(const AlgebraElement& f, std::shared_ptr<const Ball> ball);

// Left regular representation lambda(f) applied to a dense vector. The output
// ball must be large enough for the full support of the product; there is no
// silent clipping.
TruncatedVector apply_regular(const AlgebraElement& f, const TruncatedVector& v,
                              std::shared_ptr<const Ball> out_ball);

// Matrix of lambda(f) from l^2(in_ball) to l^2(out_ball). Same support
// requirement as apply_regular: out radius >= max support length + in radius.
Eigen::SparseMatrix<Complex> truncated_matrix(const AlgebraElement& f, const Ball& in_ball,
                                              const Ball& out_ball);

}  // namespace cocyclelab
