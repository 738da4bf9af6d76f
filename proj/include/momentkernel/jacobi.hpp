#ifndef MOMENTKERNEL_JACOBI_HPP
#define MOMENTKERNEL_JACOBI_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "momentkernel/types.hpp"

namespace momentkernel {

template <class Scalar>
struct SymmetricEigen {
  Vector<Scalar> values;   // ascending
  Matrix<Scalar> vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

/// Cyclic two-sided Jacobi for a real symmetric matrix.
///
/// Sweeps visit the strict upper triangle row by row. A pair (p, q) is
/// rotated unless |a_pq| <= tolerance * sqrt(|a_pp a_qq|) (or falls below
/// tolerance^2 * ||a||_F), which keeps small eigenvalues of graded positive
/// definite matrices accurate relative to their own size. Converged when a
/// whole sweep performs no rotation.
template <class Scalar>
SymmetricEigen<Scalar> jacobi_eigen(Matrix<Scalar> a, const Scalar& tolerance, int max_sweeps = 80) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = a.rows();
  SymmetricEigen<Scalar> out;
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar floor = tolerance * tolerance * a.norm();

  bool converged = n <= 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == 0) continue;
        const Scalar mag = abs(apq);
        if (mag <= floor || mag <= tolerance * sqrt(abs(a(p, p) * a(q, q)))) continue;
        rotated = true;

        const Scalar theta = (a(q, q) - a(p, p)) / (2 * apq);
        Scalar t = 1 / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        const Scalar c = 1 / sqrt(t * t + 1);
        const Scalar s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0;
        a(q, p) = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(p, k) = a(k, p);
          a(k, q) = s * akp + c * akq;
          a(q, k) = a(k, q);
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    ++out.sweeps;
    converged = !rotated;
  }
  if (!converged) throw ConvergenceError("Jacobi eigensolver did not converge within the sweep budget");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// Largest certified residual over all eigenpairs: for each pair,
/// ||A v - lambda v|| / ||v|| plus a rounding allowance
/// (n + 2) u (||A||_F + |lambda|). By the symmetric residual theorem every
/// computed eigenvalue lies within this distance of a true one.
template <class Scalar>
Scalar certified_residual(const Matrix<Scalar>& a, const SymmetricEigen<Scalar>& e, const Scalar& unit_roundoff) {
  using std::abs;
  const Eigen::Index n = a.rows();
  const Scalar norm_a = a.norm();
  Scalar worst = 0 * norm_a;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vector<Scalar> v = e.vectors.col(k);
    const Vector<Scalar> r = a * v - e.values(k) * v;
    const Scalar bound = r.norm() / v.norm() + Scalar(n + 2) * unit_roundoff * (norm_a + abs(e.values(k)));
    if (bound > worst) worst = bound;
  }
  return worst;
}

}  // namespace momentkernel

#endif  // MOMENTKERNEL_JACOBI_HPP
