#include "cocyclelab/algebra.hpp"

#include <cmath>
#include <sstream>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

AlgebraElement AlgebraElement::delta(const ReducedWord& w, Complex c) {
  AlgebraElement out(w.rank());
  out.add_term(w, c);
  return out;
}

Complex AlgebraElement::coeff(const ReducedWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void AlgebraElement::add_term(const ReducedWord& w, Complex c) {
  if (w.rank() != rank_) throw PreconditionError("rank mismatch in algebra term");
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  } else if (c == Complex(0.0)) {
    terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  if (rhs.rank_ != rank_) throw PreconditionError("rank mismatch in algebra sum");
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  if (rhs.rank_ != rank_) throw PreconditionError("rank mismatch in algebra difference");
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
  if (scalar == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& rhs) const {
  if (rhs.rank_ != rank_) throw PreconditionError("rank mismatch in convolution");
  AlgebraElement out(rank_);
  for (const auto& [h, a] : terms_)
    for (const auto& [u, b] : rhs.terms_) out.add_term(h * u, a * b);
  return out;
}

AlgebraElement AlgebraElement::star() const {
  AlgebraElement out(rank_);
  for (const auto& [w, c] : terms_) out.add_term(w.inverse(), std::conj(c));
  return out;
}

double AlgebraElement::norm() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

std::size_t AlgebraElement::max_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.length());
  return m;
}

std::string AlgebraElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    os << ")*" << w.str();
  }
  return os.str();
}

AlgebraElement parse_algebra_element(int rank, std::string_view text) {
  AlgebraElement out(rank);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view term =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!term.empty()) {
      double coef = 1.0;
      std::string_view wordpart = term;
      if (std::size_t starp = term.find('*'); starp != std::string_view::npos) {
        std::string num(term.substr(0, starp));
        std::size_t used = 0;
        try {
          coef = std::stod(num, &used);
        } catch (const std::exception&) {
          throw PreconditionError("bad coefficient '" + num + "' in algebra element");
        }
        if (used != num.size())
          throw PreconditionError("bad coefficient '" + num + "' in algebra element");
        wordpart = term.substr(starp + 1);
      } else if (term.front() == '-') {
        coef = -1.0;
        wordpart = term.substr(1);
      }
      out.add_term(ReducedWord::parse(rank, wordpart), coef);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

AlgebraElement TruncatedVector::to_sparse(double drop_tol) const {
  AlgebraElement out(ball->rank());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    if (std::abs(coeffs[i]) > drop_tol)
      out.add_term(ball->word(static_cast<std::size_t>(i)), coeffs[i]);
  return out;
}

TruncatedVector to_truncated(const AlgebraElement& f, std::shared_ptr<const Ball> ball) {
  if (f.rank() != ball->rank()) throw PreconditionError("rank mismatch in truncation");
  TruncatedVector v{ball, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ball->size()))};
  for (const auto& [w, c] : f.terms()) {
    auto idx = ball->index_of(w);
    if (!idx)
      throw PreconditionError("support of element reaches length " + std::to_string(w.length()) +
                              ", outside ball of radius " + std::to_string(ball->radius()));
    v.coeffs[static_cast<Eigen::Index>(*idx)] = c;
  }
  return v;
}

TruncatedVector apply_regular(const AlgebraElement& f, const TruncatedVector& v,
                              std::shared_ptr<const Ball> out_ball) {
  if (f.rank() != v.ball->rank() || f.rank() != out_ball->rank())
    throw PreconditionError("rank mismatch in apply_regular");
  if (out_ball->radius() < v.ball->radius() + static_cast<int>(f.max_length()))
    throw PreconditionError("output ball radius " + std::to_string(out_ball->radius()) +
                            " too small: need input radius + max support length = " +
                            std::to_string(v.ball->radius() + f.max_length()));
  TruncatedVector out{out_ball,
                      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out_ball->size()))};
  for (const auto& [w, c] : f.terms()) {
    for (std::size_t j = 0; j < v.ball->size(); ++j) {
      Complex x = v.coeffs[static_cast<Eigen::Index>(j)];
      if (x == Complex(0.0)) continue;
      auto idx = out_ball->index_of(w * v.ball->word(j));
      out.coeffs[static_cast<Eigen::Index>(*idx)] += c * x;
    }
  }
  return out;
}

Eigen::SparseMatrix<Complex> truncated_matrix(const AlgebraElement& f, const Ball& in_ball,
                                              const Ball& out_ball) {
  if (f.rank() != in_ball.rank() || f.rank() != out_ball.rank())
    throw PreconditionError("rank mismatch in truncated_matrix");
  if (out_ball.radius() < in_ball.radius() + static_cast<int>(f.max_length()))
    throw PreconditionError("output ball radius " + std::to_string(out_ball.radius()) +
                            " too small: need input radius + max support length = " +
                            std::to_string(in_ball.radius() + f.max_length()));
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(f.term_count() * in_ball.size());
  for (const auto& [w, c] : f.terms())
    for (std::size_t j = 0; j < in_ball.size(); ++j) {
      auto idx = out_ball.index_of(w * in_ball.word(j));
      trips.emplace_back(static_cast<int>(*idx), static_cast<int>(j), c);
    }
  Eigen::SparseMatrix<Complex> m(static_cast<int>(out_ball.size()),
                                 static_cast<int>(in_ball.size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace cocyclelab
