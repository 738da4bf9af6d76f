#ifndef MOMENTKERNEL_TESTS_ORACLES_HPP
#define MOMENTKERNEL_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls the
// library's factorizations or eigensolver.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "momentkernel/precision.hpp"
#include "momentkernel/types.hpp"

namespace oracle {

using momentkernel::Rational;
using momentkernel::Real;

// Probabilists' Hermite polynomials He_n by the three-term recurrence,
// as exact integer coefficient vectors (index = power).
inline std::vector<std::vector<Rational>> hermite(int n_max) {
  std::vector<std::vector<Rational>> he{{Rational(1)}, {Rational(0), Rational(1)}};
  for (int n = 1; n < n_max; ++n) {
    std::vector<Rational> next(static_cast<std::size_t>(n + 2), Rational(0));
    for (std::size_t k = 0; k < he[n].size(); ++k) next[k + 1] += he[n][k];
    for (std::size_t k = 0; k < he[n - 1].size(); ++k) next[k] -= Rational(n) * he[n - 1][k];
    he.push_back(next);
  }
  he.resize(static_cast<std::size_t>(n_max + 1));
  return he;
}

// Composite trapezoid over [-L, L] of f(x) * standard normal density.
template <class F>
double gaussian_expectation(F f, double half_width = 14.0, int nodes = 200001) {
  const double h = 2 * half_width / (nodes - 1);
  double acc = 0;
  for (int k = 0; k < nodes; ++k) {
    const double x = -half_width + k * h;
    const double w = (k == 0 || k == nodes - 1) ? 0.5 : 1.0;
    acc += w * f(x) * std::exp(-x * x / 2);
  }
  return acc * h / std::sqrt(2 * M_PI);
}

// Torus integral over [0, 2pi)^1 with the periodic trapezoid rule.
template <class F>
std::complex<double> torus_average(F f, int nodes = 1 << 12) {
  std::complex<double> acc = 0;
  for (int k = 0; k < nodes; ++k) acc += f(std::polar(1.0, 2 * M_PI * k / nodes));
  return acc / static_cast<double>(nodes);
}

// tr(A^k) for k = 1..n, exactly.
inline std::vector<Rational> power_traces(const momentkernel::Matrix<Rational>& a) {
  std::vector<Rational> out;
  momentkernel::Matrix<Rational> p = a;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    Rational t = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) t += p(i, i);
    out.push_back(t);
    p = (p * a).eval();
  }
  return out;
}

// Determinant by cofactor expansion (tiny matrices only).
inline Rational det(const momentkernel::Matrix<Rational>& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return a(0, 0);
  Rational acc = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    momentkernel::Matrix<Rational> m(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        m(r - 1, cc++) = a(r, c);
      }
    }
    const Rational term = a(0, j) * det(m);
    acc += (j % 2 == 0) ? term : Rational(-term);
  }
  return acc;
}

inline Rational random_rational(std::mt19937_64& rng, int span, int max_den) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  const int a = num(rng);
  const int b = den(rng);
  return Rational(a, b);
}

}  // namespace oracle

#endif  // MOMENTKERNEL_TESTS_ORACLES_HPP
