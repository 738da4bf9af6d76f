#include "momentkernel/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace momentkernel {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw std::invalid_argument("multi-index needs dimension >= 1");
  for (int e : exponents_) {
    if (e < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
  }
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zero(int dimension) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

MultiIndex MultiIndex::axis(int dimension, int coordinate, int degree) {
  if (coordinate < 0 || coordinate >= dimension) throw std::out_of_range("coordinate out of range");
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  e[static_cast<std::size_t>(coordinate)] = degree;
  return MultiIndex(std::move(e));
}

int MultiIndex::max_exponent() const noexcept {
  return exponents_.empty() ? 0 : *std::max_element(exponents_.begin(), exponents_.end());
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(exponents_[i]);
  }
  return out + ")";
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  return a.exponents_ <=> b.exponents_;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("multi-index dimension mismatch");
  std::vector<int> sum(a.exponents().begin(), a.exponents().end());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.exponents()[i];
  return MultiIndex(std::move(sum));
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) { return add(a, b); }

namespace {

// Appends every tuple of the given total degree over `slots` free slots, in
// ascending lexicographic order.
void append_degree(int slots, int degree, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (slots == 1) {
    prefix.push_back(degree);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 0; first <= degree; ++first) {
    prefix.push_back(first);
    append_degree(slots - 1, degree - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

IndexOrder::IndexOrder(int dimension, int max_degree, std::vector<MultiIndex> indices)
    : dimension_(dimension), max_degree_(max_degree), indices_(std::move(indices)) {}

IndexOrder IndexOrder::enumerate(int dimension, int max_degree) {
  if (dimension < 1) throw std::invalid_argument("enumerate: dimension must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("enumerate: degree bound must be >= 0");
  std::vector<MultiIndex> indices;
  indices.reserve(binomial(max_degree + dimension, dimension));
  std::vector<int> prefix;
  for (int t = 0; t <= max_degree; ++t) append_degree(dimension, t, prefix, indices);
  return IndexOrder(dimension, max_degree, std::move(indices));
}

bool IndexOrder::contains(const MultiIndex& alpha) const noexcept {
  return alpha.dimension() == dimension_ && alpha.degree() <= max_degree_;
}

std::size_t IndexOrder::rank(const MultiIndex& alpha) const {
  if (!contains(alpha)) {
    throw std::out_of_range("multi-index " + alpha.to_string() + " outside the order (d=" +
                            std::to_string(dimension_) + ", N=" + std::to_string(max_degree_) + ")");
  }
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), alpha);
  return static_cast<std::size_t>(it - indices_.begin());
}

std::size_t IndexOrder::prefix_size(int n) const {
  if (n < 0) return 0;
  if (n >= max_degree_) return indices_.size();
  return binomial(n + dimension_, dimension_);
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return result;
}

}  // namespace momentkernel
