#ifndef MOMENTKERNEL_MULTI_INDEX_HPP
#define MOMENTKERNEL_MULTI_INDEX_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace momentkernel {

/// Exponent tuple alpha in N_0^d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(int dimension);
  /// alpha with `degree` in slot `coordinate` (0-based) and zeros elsewhere.
  static MultiIndex axis(int dimension, int coordinate, int degree);

  int dimension() const noexcept { return static_cast<int>(exponents_.size()); }
  int degree() const noexcept { return degree_; }
  int operator[](int slot) const { return exponents_[static_cast<std::size_t>(slot)]; }
  std::span<const int> exponents() const noexcept { return exponents_; }
  int max_exponent() const noexcept;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Graded-lex: total degree first, then the tuple left to right.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Componentwise sum; throws std::invalid_argument on dimension mismatch.
MultiIndex add(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

/// All alpha with |alpha| <= N in graded-lex order. enumerate(d, N) is a
/// prefix of enumerate(d, N + 1).
class IndexOrder {
 public:
  static IndexOrder enumerate(int dimension, int max_degree);

  int dimension() const noexcept { return dimension_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t k) const { return indices_[k]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  /// Position of alpha; throws std::out_of_range when |alpha| > N.
  std::size_t rank(const MultiIndex& alpha) const;
  bool contains(const MultiIndex& alpha) const noexcept;

  /// Number of indices with total degree <= n (a prefix length).
  std::size_t prefix_size(int n) const;

 private:
  IndexOrder(int dimension, int max_degree, std::vector<MultiIndex> indices);

  int dimension_ = 0;
  int max_degree_ = 0;
  std::vector<MultiIndex> indices_;
};

/// binomial(n, k) in 64-bit arithmetic.
std::size_t binomial(int n, int k);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_MULTI_INDEX_HPP
