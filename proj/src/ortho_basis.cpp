#include "momentkernel/ortho_basis.hpp"

#include <string>

#include "momentkernel/precision.hpp"

namespace momentkernel {

namespace {

Real max_gram_deviation(const Matrix<Real>& c, const Matrix<Real>& h) {
  const Matrix<Real> g = c * h * c.transpose();
  Real worst = 0 * g(0, 0);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      Real dev = i == j ? Real(abs(g(i, j) - 1)) : Real(abs(g(i, j)));
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

void check_point(const OrthoBasis& basis, std::size_t dims) {
  if (static_cast<int>(dims) != basis.order.dimension()) {
    throw MomentError("point has " + std::to_string(dims) + " coordinates, basis is " +
                      std::to_string(basis.order.dimension()) + "-dimensional");
  }
}

template <class Scalar>
Vector<Scalar> coefficient_vector(const OrthoBasis& basis, const Polynomial<Scalar>& p, const Scalar& zero) {
  Vector<Scalar> v(basis.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = zero;
  for (const auto& [alpha, c] : p) {
    if (alpha.dimension() != basis.order.dimension()) {
      throw MomentError("polynomial dimension does not match the basis");
    }
    if (c == 0) continue;
    if (alpha.degree() > basis.degree) {
      throw MomentError("polynomial degree " + std::to_string(alpha.degree()) + " exceeds the basis degree " +
                        std::to_string(basis.degree));
    }
    v(static_cast<Eigen::Index>(basis.order.rank(alpha))) += c;
  }
  return v;
}

}  // namespace

Real gram_tolerance(unsigned bits) {
  PrecisionScope scope(bits);
  return exp(Real(-0.24) * Real(bits) * log(Real(10)));
}

OrthoBasis build_basis(const SourcePtr& source, const Rational& radius, int degree, const BasisOptions& options) {
  if (!source) throw MomentError("build_basis: null source");
  OrthoBasis basis;
  basis.source = source;
  basis.radius = radius;
  basis.degree = degree;
  basis.precision_bits = options.precision_bits;
  basis.order = IndexOrder::enumerate(source->dimension(), degree);

  if (source->is_exact()) {
    const HankelTruncation h = assemble(source, radius, degree, options.precision_bits);
    auto ldl = ldl_positive_definite(*h.exact_entries);
    if (!ldl) {
      const RankKernel rk = rank_and_kernel(h);
      throw DegenerateBasisError("H_{R,N} of " + source->description() + " is singular at degree " +
                                     std::to_string(degree) + " (rank " + std::to_string(rk.rank) + " of " +
                                     std::to_string(h.size()) + ")",
                                 rk.kernel.empty() ? std::nullopt : std::optional(rk.kernel.front()));
    }
    PrecisionScope scope(options.precision_bits);
    const Eigen::Index n = h.size();
    basis.coefficients.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Real scale = 1 / sqrt(Real(ldl->diagonal(i)));
      for (Eigen::Index j = 0; j < n; ++j) {
        basis.coefficients(i, j) = j <= i ? Real(Real(ldl->inverse_lower(i, j)) * scale) : Real(0);
      }
    }
    basis.working_bits = options.precision_bits;
    basis.gram = h.entries;
    basis.exact_gram = *h.exact_entries;
    basis.exact = std::move(*ldl);
    basis.gram_residual = max_gram_deviation(basis.coefficients, basis.gram);
    return basis;
  }

  const Real tolerance = gram_tolerance(options.precision_bits);
  bool factored_once = false;
  for (unsigned bits = 2 * options.precision_bits; bits <= options.precision_ceiling; bits *= 2) {
    const HankelTruncation h = assemble(source, radius, degree, bits);
    PrecisionScope scope(bits);
    Eigen::LLT<Matrix<Real>> llt(h.entries);
    if (llt.info() != Eigen::Success) continue;
    factored_once = true;
    const Eigen::Index n = h.size();
    Matrix<Real> c = Matrix<Real>::Identity(n, n);
    llt.matrixL().solveInPlace(c);
    const Real residual = max_gram_deviation(c, h.entries);
    if (residual > tolerance) continue;
    basis.working_bits = bits;
    basis.coefficients = std::move(c);
    basis.gram = h.entries;
    basis.gram_residual = residual;
    return basis;
  }
  if (!factored_once) {
    throw DegenerateBasisError("H_{R,N} of " + source->description() + " is not numerically positive definite at degree " +
                                   std::to_string(degree) + " below the precision ceiling",
                               std::nullopt);
  }
  throw PrecisionError("orthonormal basis of degree " + std::to_string(degree) +
                       " does not meet the Gram tolerance below the precision ceiling of " +
                       std::to_string(options.precision_ceiling) + " bits");
}

namespace {

Complex parse_complex_pair(std::string_view text, unsigned bits) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return Complex(parse_real(text, bits), to_real(0, bits));
  return Complex(parse_real(text.substr(0, comma), bits), parse_real(text.substr(comma + 1), bits));
}

}  // namespace

std::vector<Complex> parse_point(std::string_view text, unsigned bits) {
  std::vector<Complex> point;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (piece.empty()) throw MomentError("empty coordinate in point '" + std::string(text) + "'");
    point.push_back(parse_complex_pair(piece, bits));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return point;
}

std::vector<Complex> monomials(const IndexOrder& order, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != order.dimension()) throw MomentError("point dimension mismatch");
  std::vector<Complex> out;
  out.reserve(order.size());
  const Real one = z.empty() ? Real(1) : Real(z[0].real() * 0 + 1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const MultiIndex& gamma = order[k];
    if (gamma.degree() == 0) {
      out.emplace_back(one, one * 0);
      continue;
    }
    int slot = 0;
    while (gamma[slot] == 0) ++slot;
    std::vector<int> prev(gamma.exponents().begin(), gamma.exponents().end());
    --prev[static_cast<std::size_t>(slot)];
    out.push_back(out[order.rank(MultiIndex(std::move(prev)))] * z[static_cast<std::size_t>(slot)]);
  }
  return out;
}

std::vector<Complex> evaluate(const OrthoBasis& basis, std::span<const Complex> z) {
  check_point(basis, z.size());
  PrecisionScope scope(basis.working_bits);
  std::vector<Complex> lifted;
  for (const auto& c : z) lifted.emplace_back(Real(c.real()) + Real(0), Real(c.imag()) + Real(0));
  const std::vector<Complex> mono = monomials(basis.order, lifted);
  std::vector<Complex> values;
  values.reserve(mono.size());
  for (Eigen::Index a = 0; a < basis.size(); ++a) {
    Complex acc(Real(0), Real(0));
    for (Eigen::Index g = 0; g <= a; ++g) {
      const Real& c = basis.coefficients(a, g);
      if (c == 0) continue;
      acc += mono[static_cast<std::size_t>(g)] * c;
    }
    values.push_back(acc);
  }
  return values;
}

int kernel_max_index(const OrthoBasis& basis, KernelShape shape) {
  return shape == KernelShape::total_degree ? basis.degree : basis.degree / basis.order.dimension();
}

KernelEvaluation kernel_sum(const OrthoBasis& basis, std::span<const Complex> z, KernelShape shape) {
  const std::vector<Complex> values = evaluate(basis, z);
  PrecisionScope scope(basis.working_bits);
  KernelEvaluation out;
  out.point.assign(z.begin(), z.end());
  out.shape = shape;
  const int n_max = kernel_max_index(basis, shape);
  out.partial_sums.assign(static_cast<std::size_t>(n_max + 1), Real(0));
  for (std::size_t k = 0; k < values.size(); ++k) {
    const MultiIndex& alpha = basis.order[k];
    const int level = shape == KernelShape::total_degree ? alpha.degree() : alpha.max_exponent();
    if (level > n_max) continue;
    const Real sq = values[k].real() * values[k].real() + values[k].imag() * values[k].imag();
    out.partial_sums[static_cast<std::size_t>(level)] += sq;
  }
  for (std::size_t n = 1; n < out.partial_sums.size(); ++n) out.partial_sums[n] += out.partial_sums[n - 1];
  return out;
}

Complex truncated_kernel_apply(const OrthoBasis& basis, const Polynomial<Real>& p, std::span<const Complex> y) {
  check_point(basis, y.size());
  PrecisionScope scope(basis.working_bits);
  const Vector<Real> pv = coefficient_vector<Real>(basis, p, Real(0));
  const Vector<Real> inner = basis.coefficients * (basis.gram * pv);
  const std::vector<Complex> values = evaluate(basis, y);
  Complex acc(Real(0), Real(0));
  for (Eigen::Index a = 0; a < basis.size(); ++a) acc += values[static_cast<std::size_t>(a)] * inner(a);
  return acc;
}

Rational truncated_kernel_apply(const OrthoBasis& basis, const Polynomial<Rational>& p, std::span<const Rational> y) {
  if (!basis.exact || !basis.exact_gram) {
    throw MomentError("exact kernel application needs a basis built from an exact source");
  }
  check_point(basis, y.size());
  const Vector<Rational> pv = coefficient_vector<Rational>(basis, p, Rational(0));
  const Matrix<Rational>& m = basis.exact->inverse_lower;
  const Vector<Rational> hp = *basis.exact_gram * pv;
  const Eigen::Index n = basis.size();

  std::vector<Rational> mono(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Rational v = 1;
    const MultiIndex& gamma = basis.order[static_cast<std::size_t>(k)];
    for (int j = 0; j < gamma.dimension(); ++j) v *= pow_int(y[static_cast<std::size_t>(j)], static_cast<unsigned>(gamma[j]));
    mono[static_cast<std::size_t>(k)] = v;
  }
  Rational acc = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    Rational inner = 0;
    Rational value = 0;
    for (Eigen::Index g = 0; g <= a; ++g) {
      if (m(a, g) == 0) continue;
      inner += m(a, g) * hp(g);
      value += m(a, g) * mono[static_cast<std::size_t>(g)];
    }
    if (inner != 0) acc += inner * value / basis.exact->diagonal(a);
  }
  return acc;
}

}  // namespace momentkernel
