#include "momentkernel/moment_source.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "momentkernel/precision.hpp"

namespace momentkernel {

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::builtin_1d: return "builtin-1d";
    case SourceKind::atomic: return "atomic";
    case SourceKind::file_table: return "file-table";
    case SourceKind::product: return "product";
    case SourceKind::scaled: return "scaled";
  }
  return "unknown";
}

MomentSource::MomentSource(int dimension, SourceKind kind, ScalarMode mode, std::string description)
    : dimension_(dimension), kind_(kind), mode_(mode), description_(std::move(description)) {
  if (dimension_ < 1) throw MomentError("moment source dimension must be >= 1");
}

void MomentSource::check_index(const MultiIndex& alpha) const {
  if (alpha.dimension() != dimension_) {
    throw MomentError("moment query " + alpha.to_string() + " has dimension " +
                      std::to_string(alpha.dimension()) + ", source has " + std::to_string(dimension_));
  }
  if (auto bound = max_total_degree(); bound && alpha.degree() > *bound) {
    throw MomentError("moment " + alpha.to_string() + " beyond the available total degree " +
                      std::to_string(*bound) + " of " + description_);
  }
}

Rational MomentSource::exact_moment(const MultiIndex& alpha) const {
  if (!is_exact()) throw MomentError("source '" + description_ + "' has no exact moments");
  check_index(alpha);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = exact_cache_.find(alpha); it != exact_cache_.end()) return it->second;
  }
  Rational value = compute_exact(alpha);
  std::lock_guard lock(cache_mutex_);
  return exact_cache_.try_emplace(alpha, std::move(value)).first->second;
}

Real MomentSource::moment(const MultiIndex& alpha, unsigned bits) const {
  check_index(alpha);
  const auto key = std::make_pair(alpha, bits);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = float_cache_.find(key); it != float_cache_.end()) return it->second;
  }
  Real value = compute_float(alpha, bits);
  std::lock_guard lock(cache_mutex_);
  return float_cache_.try_emplace(key, std::move(value)).first->second;
}

Rational MomentSource::compute_exact(const MultiIndex&) const {
  throw MomentError("source '" + description_ + "' has no exact moments");
}

Real MomentSource::compute_float(const MultiIndex& alpha, unsigned bits) const {
  return to_real(exact_moment(alpha), bits);
}

namespace {

class GaussianSource final : public MomentSource {
 public:
  GaussianSource() : MomentSource(1, SourceKind::builtin_1d, ScalarMode::exact_rational, "gaussian") {}

 protected:
  Rational compute_exact(const MultiIndex& alpha) const override {
    const int n = alpha[0];
    if (n % 2 != 0) return Rational(0);
    Integer value = 1;
    for (int k = n - 1; k > 1; k -= 2) value *= k;
    return Rational(value);
  }
};

class LognormalSource final : public MomentSource {
 public:
  explicit LognormalSource(Rational sigma)
      : MomentSource(1, SourceKind::builtin_1d, ScalarMode::high_precision_float,
                     "lognormal(sigma=" + to_fraction(sigma) + ")"),
        sigma_(std::move(sigma)) {}

 protected:
  Real compute_float(const MultiIndex& alpha, unsigned bits) const override {
    const int n = alpha[0];
    if (n == 0) return to_real(1, bits);
    const Rational exponent = Rational(static_cast<long long>(n) * n) * sigma_ * sigma_ / 2;
    PrecisionScope scope(bits);
    return exp(Real(exponent));
  }

 private:
  Rational sigma_;
};

std::string describe_atoms(const AtomicMeasure1D& measure) {
  std::string out = "atomic(";
  for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
    if (i) out += ",";
    out += to_fraction(measure.atoms[i].weight) + "@" + to_fraction(measure.atoms[i].location);
  }
  return out + ")";
}

class AtomicSource final : public MomentSource {
 public:
  explicit AtomicSource(AtomicMeasure1D measure)
      : MomentSource(1, SourceKind::atomic, ScalarMode::exact_rational, describe_atoms(measure)),
        measure_(std::move(measure)) {}

 protected:
  Rational compute_exact(const MultiIndex& alpha) const override {
    const auto n = static_cast<unsigned>(alpha[0]);
    Rational sum = 0;
    for (const auto& atom : measure_.atoms) sum += atom.weight * pow_int(atom.location, n);
    return sum;
  }

 private:
  AtomicMeasure1D measure_;
};

std::string describe_factors(const std::vector<SourcePtr>& factors) {
  std::string out = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ",";
    out += factors[i]->description();
  }
  return out + ")";
}

ScalarMode combined_mode(const std::vector<SourcePtr>& factors) {
  for (const auto& f : factors) {
    if (!f->is_exact()) return ScalarMode::high_precision_float;
  }
  return ScalarMode::exact_rational;
}

class ProductSource final : public MomentSource {
 public:
  explicit ProductSource(std::vector<SourcePtr> factors)
      : MomentSource(static_cast<int>(factors.size()), SourceKind::product, combined_mode(factors),
                     describe_factors(factors)),
        factors_(std::move(factors)) {}

  std::vector<SourcePtr> factors() const override { return factors_; }

 protected:
  Rational compute_exact(const MultiIndex& alpha) const override {
    Rational value = 1;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      value *= factors_[j]->exact_moment(MultiIndex{alpha[static_cast<int>(j)]});
      if (value == 0) break;
    }
    return value;
  }

  Real compute_float(const MultiIndex& alpha, unsigned bits) const override {
    if (is_exact()) return to_real(exact_moment(alpha), bits);
    Real value = to_real(1, bits);
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      value *= factors_[j]->moment(MultiIndex{alpha[static_cast<int>(j)]}, bits);
    }
    return value;
  }

 private:
  std::vector<SourcePtr> factors_;
};

class ScaledSource final : public MomentSource {
 public:
  ScaledSource(SourcePtr inner, Rational radius)
      : MomentSource(inner->dimension(), SourceKind::scaled, inner->mode(),
                     "scaled(R=" + to_fraction(radius) + "," + inner->description() + ")"),
        inner_(std::move(inner)),
        radius_(std::move(radius)) {
    for (const auto& f : inner_->factors()) scaled_factors_.push_back(scale(f, radius_));
  }

  std::vector<SourcePtr> factors() const override { return scaled_factors_; }
  std::optional<int> max_total_degree() const override { return inner_->max_total_degree(); }

 protected:
  Rational compute_exact(const MultiIndex& alpha) const override {
    return inner_->exact_moment(alpha) / pow_int(radius_, static_cast<unsigned>(alpha.degree()));
  }

  Real compute_float(const MultiIndex& alpha, unsigned bits) const override {
    if (is_exact()) return to_real(exact_moment(alpha), bits);
    const Real r = to_real(pow_int(radius_, static_cast<unsigned>(alpha.degree())), bits);
    return inner_->moment(alpha, bits) / r;
  }

 private:
  SourcePtr inner_;
  Rational radius_;
  std::vector<SourcePtr> scaled_factors_;
};

// Accepts "a", "a+bi", "a-bi", "bi"; returns the real part and rejects a
// nonzero imaginary part.
std::string real_part_of(const std::string& text, const MultiIndex& alpha) {
  if (text.empty()) throw MomentError("empty moment value at " + alpha.to_string());
  const char last = text.back();
  if (last != 'i' && last != 'j') return text;
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size() - 1; k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string real = split == std::string::npos ? "0" : text.substr(0, split);
  std::string imag = split == std::string::npos ? text.substr(0, text.size() - 1)
                                                : text.substr(split, text.size() - 1 - split);
  if (imag == "+" || imag == "-" || imag.empty()) imag += "1";
  if (parse_rational(imag) != 0) {
    throw MomentError("moment " + alpha.to_string() + " = " + text +
                      " is not real; a positive multisequence has real moments");
  }
  return real;
}

class TableSource final : public MomentSource {
 public:
  TableSource(int dimension, int max_total_degree, std::map<MultiIndex, std::string> values, ScalarMode mode,
              std::string description)
      : MomentSource(dimension, SourceKind::file_table, mode, std::move(description)),
        max_total_degree_(max_total_degree),
        values_(std::move(values)) {}

  std::optional<int> max_total_degree() const override { return max_total_degree_; }

 protected:
  Rational compute_exact(const MultiIndex& alpha) const override { return parse_rational(lookup(alpha)); }
  Real compute_float(const MultiIndex& alpha, unsigned bits) const override {
    return parse_real(lookup(alpha), bits);
  }

 private:
  const std::string& lookup(const MultiIndex& alpha) const {
    auto it = values_.find(alpha);
    if (it == values_.end()) {
      throw MomentError("moment " + alpha.to_string() + " missing from " + description());
    }
    return it->second;
  }

  int max_total_degree_;
  std::map<MultiIndex, std::string> values_;
};

}  // namespace

SourcePtr gaussian_moments() { return std::make_shared<GaussianSource>(); }

SourcePtr lognormal_moments(const Rational& sigma) {
  if (sigma <= 0) throw MomentError("lognormal: sigma must be positive");
  return std::make_shared<LognormalSource>(sigma);
}

SourcePtr atomic_moments(const AtomicMeasure1D& measure) {
  if (measure.atoms.empty()) throw MomentError("atomic measure needs at least one atom");
  Rational total = 0;
  std::set<Rational> seen;
  for (const auto& atom : measure.atoms) {
    if (atom.weight <= 0) throw MomentError("atomic measure weights must be positive");
    if (!seen.insert(atom.location).second) {
      throw MomentError("atomic measure locations must be distinct (repeated " + to_fraction(atom.location) + ")");
    }
    total += atom.weight;
  }
  if (total != 1) throw MomentError("atomic measure weights sum to " + to_fraction(total) + ", expected 1");
  return std::make_shared<AtomicSource>(measure);
}

SourcePtr product(std::vector<SourcePtr> factors) {
  if (factors.empty()) throw MomentError("product needs at least one factor");
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (!factors[j]) throw MomentError("product factor is null");
    if (factors[j]->dimension() != 1) {
      throw MomentError("product factor " + std::to_string(j + 1) + " is " +
                        std::to_string(factors[j]->dimension()) + "-dimensional; factors must be 1D");
    }
  }
  return std::make_shared<ProductSource>(std::move(factors));
}

SourcePtr scale(SourcePtr source, const Rational& radius) {
  if (!source) throw MomentError("scale: null source");
  if (radius <= 0) throw MomentError("scale: radius must be positive");
  return std::make_shared<ScaledSource>(std::move(source), radius);
}

SourcePtr table_from_entries(int dimension, int max_total_degree,
                             const std::vector<std::pair<MultiIndex, std::string>>& entries,
                             std::optional<int> degree, std::string description) {
  if (dimension < 1) throw MomentError("table: dimension must be >= 1");
  if (max_total_degree < 0) throw MomentError("table: max_total_degree must be >= 0");
  const int hankel_degree = degree.value_or(max_total_degree / 2);
  if (hankel_degree < 0) throw MomentError("table: requested degree must be >= 0");
  if (2 * hankel_degree > max_total_degree) {
    throw MomentError("table: degree " + std::to_string(hankel_degree) + " needs moments to total degree " +
                      std::to_string(2 * hankel_degree) + " but the table stops at " +
                      std::to_string(max_total_degree));
  }
  std::map<MultiIndex, std::string> values;
  bool exact = true;
  for (const auto& [alpha, text] : entries) {
    if (alpha.dimension() != dimension) {
      throw MomentError("table entry " + alpha.to_string() + " does not have dimension " + std::to_string(dimension));
    }
    if (alpha.degree() > max_total_degree) {
      throw MomentError("table entry " + alpha.to_string() + " exceeds max_total_degree");
    }
    std::string real = real_part_of(text, alpha);
    parse_rational(real);  // validates the literal
    if (!is_rational_literal(real)) exact = false;
    if (!values.emplace(alpha, std::move(real)).second) {
      throw MomentError("duplicate table entry " + alpha.to_string());
    }
  }
  std::vector<std::string> missing;
  for (const auto& alpha : IndexOrder::enumerate(dimension, 2 * hankel_degree)) {
    if (!values.count(alpha)) missing.push_back(alpha.to_string());
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 8; ++i) list += (i ? " " : "") + missing[i];
    if (missing.size() > 8) list += " ...";
    throw MomentError("table is missing " + std::to_string(missing.size()) + " moment(s): " + list);
  }
  if (parse_rational(values.at(MultiIndex::zero(dimension))) != 1) {
    throw MomentError("table violates normalization: s_0 = " + values.at(MultiIndex::zero(dimension)) +
                      ", expected 1");
  }
  return std::make_shared<TableSource>(dimension, max_total_degree, std::move(values),
                                       exact ? ScalarMode::exact_rational : ScalarMode::high_precision_float,
                                       std::move(description));
}

SourcePtr load_table(const std::filesystem::path& path, std::optional<int> dimension, std::optional<int> degree) {
  std::ifstream in(path);
  if (!in) throw MomentError("cannot open moment table " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw MomentError("malformed moment table " + path.string() + ": " + e.what());
  }
  try {
    const int d = doc.at("d").get<int>();
    if (dimension && *dimension != d) {
      throw MomentError("moment table " + path.string() + " has d=" + std::to_string(d) + ", expected " +
                        std::to_string(*dimension));
    }
    const int max_total_degree = doc.at("max_total_degree").get<int>();
    std::vector<std::pair<MultiIndex, std::string>> entries;
    for (const auto& entry : doc.at("entries")) {
      std::vector<int> alpha = entry.at("alpha").get<std::vector<int>>();
      const auto& value = entry.at("value");
      if (!value.is_string()) throw MomentError("moment table values must be strings");
      entries.emplace_back(MultiIndex(std::move(alpha)), value.get<std::string>());
    }
    return table_from_entries(d, max_total_degree, entries, degree, "table(" + path.filename().string() + ")");
  } catch (const nlohmann::json::exception& e) {
    throw MomentError("malformed moment table " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw MomentError("malformed moment table " + path.string() + ": " + e.what());
  }
}

namespace {

void check_dimensions(const MomentSource& source, const MultiIndex& alpha) {
  if (alpha.dimension() != source.dimension()) {
    throw MomentError("polynomial dimension " + std::to_string(alpha.dimension()) +
                      " does not match source dimension " + std::to_string(source.dimension()));
  }
}

}  // namespace

Rational apply_functional(const MomentSource& source, const Polynomial<Rational>& p) {
  Rational sum = 0;
  for (const auto& [alpha, c] : p) {
    check_dimensions(source, alpha);
    if (c != 0) sum += c * source.exact_moment(alpha);
  }
  return sum;
}

Real apply_functional(const MomentSource& source, const Polynomial<Real>& p, unsigned bits) {
  Real sum = to_real(0, bits);
  for (const auto& [alpha, c] : p) {
    check_dimensions(source, alpha);
    if (c != 0) sum += c * source.moment(alpha, bits);
  }
  return sum;
}

Rational hermitian_square(const MomentSource& source, const Polynomial<Rational>& p) {
  return apply_functional(source, multiply(p, p));
}

Real hermitian_square(const MomentSource& source, const Polynomial<Real>& p, unsigned bits) {
  return apply_functional(source, multiply(p, p), bits);
}

}  // namespace momentkernel
