#ifndef MOMENTKERNEL_MOMENT_SOURCE_HPP
#define MOMENTKERNEL_MOMENT_SOURCE_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "momentkernel/multi_index.hpp"
#include "momentkernel/types.hpp"

namespace momentkernel {

enum class SourceKind { builtin_1d, atomic, file_table, product, scaled };
enum class ScalarMode { exact_rational, high_precision_float };

std::string to_string(SourceKind kind);

class MomentSource;
using SourcePtr = std::shared_ptr<const MomentSource>;

/// A normalized moment multisequence alpha -> s_alpha.
///
/// Values are memoized per (alpha, precision). The caches are guarded so
/// concurrent readers see the same values they would under serialized
/// queries.
class MomentSource {
 public:
  virtual ~MomentSource() = default;
  MomentSource(const MomentSource&) = delete;
  MomentSource& operator=(const MomentSource&) = delete;

  int dimension() const noexcept { return dimension_; }
  SourceKind kind() const noexcept { return kind_; }
  ScalarMode mode() const noexcept { return mode_; }
  bool is_exact() const noexcept { return mode_ == ScalarMode::exact_rational; }
  const std::string& description() const noexcept { return description_; }

  /// Exact s_alpha; throws MomentError in float mode.
  Rational exact_moment(const MultiIndex& alpha) const;
  /// s_alpha at `bits` of precision (rounded once from the exact value in
  /// rational mode).
  Real moment(const MultiIndex& alpha, unsigned bits) const;

  /// One-dimensional factors when s_alpha = prod_j s_{j, alpha_j} holds by
  /// construction; empty otherwise.
  virtual std::vector<SourcePtr> factors() const { return {}; }

  /// Largest total degree the source can answer, if bounded.
  virtual std::optional<int> max_total_degree() const { return std::nullopt; }

 protected:
  MomentSource(int dimension, SourceKind kind, ScalarMode mode, std::string description);

  virtual Rational compute_exact(const MultiIndex& alpha) const;
  virtual Real compute_float(const MultiIndex& alpha, unsigned bits) const;

  void check_index(const MultiIndex& alpha) const;

 private:
  int dimension_;
  SourceKind kind_;
  ScalarMode mode_;
  std::string description_;

  mutable std::mutex cache_mutex_;
  mutable std::map<MultiIndex, Rational> exact_cache_;
  mutable std::map<std::pair<MultiIndex, unsigned>, Real> float_cache_;
};

struct Atom {
  Rational location;
  Rational weight;
};

/// Finite sum of point masses on the line; weights positive and summing to 1.
struct AtomicMeasure1D {
  std::vector<Atom> atoms;
};

/// Standard normal: s_{2k} = (2k-1)!!, odd moments zero. Exact.
SourcePtr gaussian_moments();

/// Log-normal with parameter sigma: s_n = exp(n^2 sigma^2 / 2). Float mode.
SourcePtr lognormal_moments(const Rational& sigma);

/// s_n = sum_i w_i a_i^n. Exact.
SourcePtr atomic_moments(const AtomicMeasure1D& measure);

/// s_alpha = prod_j s_{j, alpha_j}; exact iff every factor is exact.
SourcePtr product(std::vector<SourcePtr> factors);

/// R-scaling s_alpha / R^|alpha|.
SourcePtr scale(SourcePtr source, const Rational& radius);

/// Loads a JSON moment table. `dimension` and `degree` are checked against
/// the file when given; every s_alpha with |alpha| <= 2 * degree must be
/// present (degree defaults to floor(max_total_degree / 2)).
SourcePtr load_table(const std::filesystem::path& path, std::optional<int> dimension = std::nullopt,
                     std::optional<int> degree = std::nullopt);

/// Builds a table source from parsed entries (value strings as in the file
/// format); used by load_table and by tests.
SourcePtr table_from_entries(int dimension, int max_total_degree,
                             const std::vector<std::pair<MultiIndex, std::string>>& entries,
                             std::optional<int> degree = std::nullopt, std::string description = "table");

/// Polynomial as a finitely supported coefficient map alpha -> c_alpha.
template <class Scalar>
using Polynomial = std::map<MultiIndex, Scalar>;

template <class Scalar>
int polynomial_degree(const Polynomial<Scalar>& p) {
  int degree = 0;
  for (const auto& [alpha, c] : p) {
    if (c != 0 && alpha.degree() > degree) degree = alpha.degree();
  }
  return degree;
}

template <class Scalar>
Polynomial<Scalar> multiply(const Polynomial<Scalar>& p, const Polynomial<Scalar>& q) {
  Polynomial<Scalar> out;
  for (const auto& [a, ca] : p) {
    for (const auto& [b, cb] : q) {
      auto [it, inserted] = out.try_emplace(a + b, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return out;
}

/// p(y) for a point of matching dimension; `one` fixes the value type and
/// its precision.
template <class Scalar, class Value>
Value evaluate_polynomial(const Polynomial<Scalar>& p, std::span<const Value> y, const Value& one) {
  Value acc = one * Scalar(0);
  for (const auto& [alpha, c] : p) {
    if (alpha.dimension() != static_cast<int>(y.size())) throw MomentError("point dimension mismatch");
    Value term = one * c;
    for (int j = 0; j < alpha.dimension(); ++j) {
      for (int k = 0; k < alpha[j]; ++k) term *= y[static_cast<std::size_t>(j)];
    }
    acc += term;
  }
  return acc;
}

/// L(p) = sum_alpha c_alpha s_alpha, exactly. Throws on dimension mismatch
/// or when the source is float-only.
Rational apply_functional(const MomentSource& source, const Polynomial<Rational>& p);
/// L(p) at `bits` of precision.
Real apply_functional(const MomentSource& source, const Polynomial<Real>& p, unsigned bits);

/// L(p * conj(p)) for real-coefficient p.
Rational hermitian_square(const MomentSource& source, const Polynomial<Rational>& p);
Real hermitian_square(const MomentSource& source, const Polynomial<Real>& p, unsigned bits);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_MOMENT_SOURCE_HPP
