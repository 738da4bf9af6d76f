#include "momentkernel/exact_linalg.hpp"

#include <stdexcept>

namespace momentkernel {

namespace {

Integer lcm(const Integer& a, const Integer& b) { return a / bmp::gcd(a, b) * b; }

Matrix<Integer> clear_denominators(const Matrix<Rational>& a) {
  Matrix<Integer> out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Integer scale = 1;
    for (Eigen::Index j = 0; j < a.cols(); ++j) scale = lcm(scale, bmp::denominator(a(i, j)));
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out(i, j) = bmp::numerator(a(i, j)) * (scale / bmp::denominator(a(i, j)));
    }
  }
  return out;
}

Vector<Rational> primitive(const Vector<Rational>& v) {
  Integer den = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) den = lcm(den, bmp::denominator(v(i)));
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = bmp::gcd(g, bmp::numerator(v(i) * den));
  Vector<Rational> out = v;
  if (g == 0) return out;
  int sign = 1;
  for (Eigen::Index i = v.size(); i-- > 0;) {
    if (v(i) != 0) {
      sign = v(i) < 0 ? -1 : 1;
      break;
    }
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) * den / g * sign;
  return out;
}

}  // namespace

RankKernel rank_and_kernel(const Matrix<Rational>& a) {
  Matrix<Integer> m = clear_denominators(a);
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<Eigen::Index> pivot_cols;
  Integer previous = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        Integer numer = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        Integer q, rem;
        bmp::divide_qr(numer, previous, q, rem);
        if (rem != 0) throw std::logic_error("fraction-free elimination produced an inexact division");
        m(i, j) = std::move(q);
      }
      m(i, c) = 0;
    }
    previous = m(r, c);
    pivot_cols.push_back(c);
    ++r;
  }

  RankKernel result;
  result.rank = static_cast<int>(r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector<Rational> x = Vector<Rational>::Zero(cols);
    x(free) = 1;
    for (Eigen::Index k = r; k-- > 0;) {
      const Eigen::Index p = pivot_cols[static_cast<std::size_t>(k)];
      Rational sum = 0;
      for (Eigen::Index j = p + 1; j < cols; ++j) {
        if (x(j) != 0) sum += Rational(m(k, j)) * x(j);
      }
      x(p) = -sum / Rational(m(k, p));
    }
    result.kernel.push_back(primitive(x));
  }
  return result;
}

std::optional<ExactLdl> ldl_positive_definite(const Matrix<Rational>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("ldl: matrix must be square");
  const Eigen::Index n = a.rows();
  ExactLdl f;
  f.unit_lower = Matrix<Rational>::Identity(n, n);
  f.diagonal = Vector<Rational>::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Rational dj = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) dj -= f.unit_lower(j, k) * f.unit_lower(j, k) * f.diagonal(k);
    if (dj <= 0) return std::nullopt;
    f.diagonal(j) = dj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Rational v = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= f.unit_lower(i, k) * f.unit_lower(j, k) * f.diagonal(k);
      f.unit_lower(i, j) = v / dj;
    }
  }
  f.inverse_lower = Matrix<Rational>::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      Rational v = 0;
      for (Eigen::Index k = j; k < i; ++k) v -= f.unit_lower(i, k) * f.inverse_lower(k, j);
      f.inverse_lower(i, j) = v;
    }
  }
  return f;
}

}  // namespace momentkernel
