#include "momentkernel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "momentkernel/precision.hpp"

namespace momentkernel {

namespace {

double to_double(const Real& x) { return x.convert_to<double>(); }

// Raw figures of a sequence; the label is left to the caller.
TrendSummary summarize(const std::vector<EigenSequenceEntry>& seq, const TrendThresholds& t) {
  TrendSummary s;
  s.last_degree = seq.back().degree;
  s.last_value = seq.back().spectrum.lambda_min;
  for (const auto& e : seq) {
    if (e.spectrum.lambda_min_is_exact_zero()) {
      s.exact_zero_degree = e.degree;
      return s;
    }
  }
  const int n = s.last_degree;
  s.half_ratio = Real(s.last_value / seq[static_cast<std::size_t>(n / 2)].spectrum.lambda_min);

  // least squares of ln(lambda_k) on k over the last half
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int k = n / 2; k <= n; ++k) {
    const double y = to_double(Real(log(seq[static_cast<std::size_t>(k)].spectrum.lambda_min)));
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
    ++count;
  }
  const double denom = count * sxx - sx * sx;
  if (count >= 2 && denom != 0) s.decay_exponent = (count * sxy - sx * sy) / denom;

  if (n >= t.window) {
    double worst = 0;
    for (int k = n - t.window + 1; k <= n; ++k) {
      const Real& prev = seq[static_cast<std::size_t>(k - 1)].spectrum.lambda_min;
      const Real& cur = seq[static_cast<std::size_t>(k)].spectrum.lambda_min;
      worst = std::max(worst, std::abs(to_double(Real(cur / prev)) - 1));
    }
    s.max_relative_change = worst;
  }
  return s;
}

TrendLabel label_of(const TrendSummary& s, const Real& lambda0, const TrendThresholds& t) {
  if (s.exact_zero_degree) return TrendLabel::decaying_finite_rank;
  if (s.last_value < lambda0 * t.decay && s.decay_exponent && *s.decay_exponent < -t.slope_tolerance) {
    return TrendLabel::decaying;
  }
  if (s.max_relative_change && *s.max_relative_change < t.flat) return TrendLabel::stabilizing;
  return TrendLabel::inconclusive;
}

std::optional<double> max_relative_step(const std::vector<Real>& values, int window) {
  const int n = static_cast<int>(values.size()) - 1;
  if (n < window) return std::nullopt;
  double worst = 0;
  for (int k = n - window + 1; k <= n; ++k) {
    const Real& prev = values[static_cast<std::size_t>(k - 1)];
    if (prev == 0) return std::nullopt;
    worst = std::max(worst, std::abs(to_double(Real(values[static_cast<std::size_t>(k)] / prev)) - 1));
  }
  return worst;
}

Real residual_of(const SpectrumResult& s) { return s.absolute_residual; }

// lambda_{N+1} <= lambda_N within the two certified residuals.
bool nonincreasing(const std::vector<EigenSequenceEntry>& column) {
  for (std::size_t k = 1; k < column.size(); ++k) {
    const auto& a = column[k - 1].spectrum;
    const auto& b = column[k].spectrum;
    if (b.lambda_min_is_exact_zero()) continue;
    if (b.lambda_min > a.lambda_min + residual_of(a) + residual_of(b)) return false;
  }
  return true;
}

std::vector<EigenSequenceEntry> marginal_sequence(const SourcePtr& source, int coordinate, int max_degree,
                                                  unsigned bits, const SpectrumOptions& options) {
  std::vector<EigenSequenceEntry> out;
  for (int n = 0; n <= max_degree; ++n) {
    EigenSequenceEntry e;
    e.degree = n;
    const HankelTruncation j = assemble_marginal(source, coordinate, n, Rational(1), bits);
    e.matrix_size = j.size();
    e.spectrum = spectrum(j, options);
    bits = std::max(bits, e.spectrum.precision_bits);
    out.push_back(std::move(e));
  }
  return out;
}

std::string label_list(const std::vector<Rational>& radii, const std::vector<TrendSummary>& summaries) {
  std::ostringstream out;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (k) out << ", ";
    out << "R=" << to_fraction(radii[k]) << ": " << to_string(summaries[k].label);
  }
  return out.str();
}

std::vector<std::vector<Complex>> compact_sample(int dimension, const DiagnosticsOptions& options, unsigned bits) {
  PrecisionScope scope(bits);
  const Real pi = boost::math::constants::pi<Real>();
  std::vector<Complex> shell_unit;
  for (int k = 0; k < options.shell_points; ++k) {
    // offset keeps every sample off the real axis
    const Real theta = 2 * pi * k / options.shell_points + pi / 10;
    shell_unit.emplace_back(cos(theta), sin(theta));
  }
  std::vector<std::vector<Complex>> points;
  for (const Rational& r : options.shell_radii) {
    const Real radius = to_real(r, bits);
    std::vector<std::size_t> digit(static_cast<std::size_t>(dimension), 0);
    for (;;) {
      std::vector<Complex> z;
      for (std::size_t j = 0; j < digit.size(); ++j) z.push_back(shell_unit[digit[j]] * radius);
      points.push_back(std::move(z));
      std::size_t j = 0;
      while (j < digit.size() && ++digit[j] == shell_unit.size()) digit[j++] = 0;
      if (j == digit.size()) break;
    }
  }
  return points;
}

std::string point_text(const std::vector<Complex>& z) {
  std::ostringstream out;
  out << "(";
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j) out << ", ";
    out << z[j].real().str(6) << (z[j].imag() < 0 ? "-" : "+") << Real(abs(z[j].imag())).str(6) << "i";
  }
  out << ")";
  return out.str();
}

DiagnosticsReport build_report(const SourcePtr& source, const std::vector<Rational>& radii, int max_degree,
                               const std::vector<std::vector<Complex>>& points, const DiagnosticsOptions& options,
                               bool product_structure) {
  const TrendThresholds& t = options.thresholds;
  const unsigned bits = options.precision_bits;
  const int d = source->dimension();
  for (const auto& z : points) {
    if (static_cast<int>(z.size()) != d) {
      throw MomentError("sample point " + point_text(z) + " does not have " + std::to_string(d) + " coordinates");
    }
  }

  DiagnosticsReport r;
  r.source_description = source->description();
  r.dimension = d;
  r.max_degree = max_degree;
  r.precision_bits = bits;
  r.product_source = product_structure;
  r.thresholds = t;
  r.sweep = sweep(source, radii, max_degree, bits, options.spectrum, t);
  for (const auto& column : r.sweep.columns) {
    for (const auto& e : column) r.exact_zero = r.exact_zero || e.spectrum.lambda_min_is_exact_zero();
  }

  // (c1): the R = 1 column.
  std::vector<EigenSequenceEntry> unit_column;
  TrendSummary unit_summary;
  const auto unit = std::find(radii.begin(), radii.end(), Rational(1));
  if (unit != radii.end()) {
    const auto k = static_cast<std::size_t>(unit - radii.begin());
    unit_column = r.sweep.columns[k];
    unit_summary = r.sweep.summaries[k];
  } else {
    unit_column = eigen_sequence(source, Rational(1), max_degree, bits, options.spectrum);
    unit_summary = summarize(unit_column, t);
    if (max_degree >= kMinTrendDegree) unit_summary.label = label_of(unit_summary, unit_column[0].spectrum.lambda_min, t);
  }
  r.c1.positive = unit_summary.label == TrendLabel::stabilizing;
  r.c1.note = "lambda_{1," + std::to_string(unit_summary.last_degree) + "} = " + unit_summary.last_value.str(8) +
              " (" + to_string(unit_summary.label) + ")";

  // (c2): every sampled radius.
  r.c2.positive = !radii.empty() && std::all_of(r.sweep.summaries.begin(), r.sweep.summaries.end(),
                                               [](const TrendSummary& s) { return s.label == TrendLabel::stabilizing; });
  r.c2.note = label_list(radii, r.sweep.summaries);

  // Kernel channels run on the largest nonsingular truncation at R = 1.
  r.kernel_degree = max_degree;
  for (const auto& e : unit_column) {
    if (e.spectrum.lambda_min_is_exact_zero()) {
      r.kernel_degree = e.degree - 1;
      break;
    }
  }
  const OrthoBasis basis =
      build_basis(source, Rational(1), r.kernel_degree, BasisOptions{bits, options.spectrum.precision_ceiling});

  // (c3): sup of the partial sums over the sampled polydisk.
  {
    std::vector<Real> sup;
    for (const auto& z : compact_sample(d, options, bits)) {
      const KernelEvaluation k = kernel_sum(basis, z);
      if (sup.empty()) {
        sup = k.partial_sums;
        continue;
      }
      for (std::size_t n = 0; n < sup.size(); ++n) {
        if (k.partial_sums[n] > sup[n]) sup[n] = k.partial_sums[n];
      }
    }
    r.c3_max_partial_sums = sup;
    const auto step = max_relative_step(sup, t.window);
    r.c3.positive = step && *step < t.flat;
    std::ostringstream note;
    note << "max over " << options.shell_radii.size() << " shells x " << options.shell_points << "^" << d
         << " points: " << sup.back().str(8) << " at n=" << r.kernel_degree;
    if (step) {
      note << ", last-window relative step " << *step;
    } else {
      note << ", too few degrees to test stabilization";
    }
    r.c3.note = note.str();
  }

  // (c4): pointwise partial sums at the requested nonreal points.
  {
    bool all_stable = !points.empty();
    std::ostringstream note;
    for (const auto& z : points) {
      KernelChannel c;
      c.point = z;
      c.partial_sums = kernel_sum(basis, z).partial_sums;
      c.max_relative_change = max_relative_step(c.partial_sums, t.window);
      all_stable = all_stable && c.max_relative_change && *c.max_relative_change < t.flat;
      if (!r.c4_points.empty()) note << "; ";
      note << point_text(z) << ": " << c.partial_sums.back().str(8);
      r.c4_points.push_back(std::move(c));
    }
    r.c4.positive = all_stable;
    r.c4.note = note.str();
  }

  if (!product_structure) {
    r.verdict = "inconclusive";
    r.rationale =
        "no product structure: the marginal criterion does not apply and finite-N floors of lambda_{R,N} do not decide "
        "the moment problem";
    return r;
  }

  const std::vector<SourcePtr> factors = d == 1 ? std::vector<SourcePtr>{source} : source->factors();

  // Box kernel sum of the product against the product of marginal sums.
  if (d > 1) {
    const int box = kernel_max_index(basis, KernelShape::box);
    std::vector<OrthoBasis> marginal_bases;
    for (const auto& f : factors) {
      marginal_bases.push_back(build_basis(f, Rational(1), box, BasisOptions{bits, options.spectrum.precision_ceiling}));
    }
    const Real tolerance = exp(Real(-0.2) * to_real(static_cast<long long>(bits), bits) * log(to_real(10, bits)));
    for (const auto& z : points) {
      FactorizationCheck f;
      f.point = z;
      f.box_degree = box;
      const KernelEvaluation joint = kernel_sum(basis, z, KernelShape::box);
      PrecisionScope scope(basis.working_bits);
      f.relative_error = Real(0);
      for (int n = 0; n <= box; ++n) {
        Real prod = 1;
        for (std::size_t j = 0; j < factors.size(); ++j) {
          const std::vector<Complex> zj{z[j]};
          prod *= kernel_sum(marginal_bases[j], zj).partial_sums[static_cast<std::size_t>(n)];
        }
        const Real& lhs = joint.partial_sums[static_cast<std::size_t>(n)];
        const Real err = abs(lhs - prod) / abs(prod);
        if (err > f.relative_error) f.relative_error = err;
        if (n == box) {
          f.product_sum = lhs;
          f.marginal_product = prod;
        }
      }
      f.holds = f.relative_error <= tolerance;
      r.factorization.push_back(std::move(f));
    }
  }

  const int marginal_degree = std::max(max_degree, t.marginal_degree);
  for (const auto& f : factors) {
    r.marginals.push_back({f->description(), bci_trend(f, marginal_degree, bits, options.spectrum, t).summary});
  }

  const bool any_stabilizing = std::any_of(r.marginals.begin(), r.marginals.end(),
                                           [](const MarginalVerdict& m) { return m.trend.label == TrendLabel::stabilizing; });
  const bool all_decaying = std::all_of(r.marginals.begin(), r.marginals.end(), [](const MarginalVerdict& m) {
    return m.trend.label == TrendLabel::decaying || m.trend.label == TrendLabel::decaying_finite_rank;
  });
  const std::string heuristic = " (finite-N heuristic with decay threshold " + std::to_string(t.decay) +
                                " and flatness threshold " + std::to_string(t.flat) + ")";
  if (any_stabilizing) {
    if (r.c2.positive) {
      r.verdict = "indeterminate-like";
      r.rationale = "a marginal eigenvalue sequence stabilizes and lambda_{R,N} stabilizes at every sampled radius" + heuristic;
    } else if (d > 1) {
      r.verdict = "indeterminate-like (by Petersen (b))";
      r.rationale =
          "a marginal eigenvalue sequence stabilizes, so the product is indeterminate by Petersen (b), although "
          "lambda_{R,N} of the product does not stabilize at every sampled radius" +
          heuristic;
    } else {
      r.verdict = "inconclusive";
      r.rationale = "lambda_N stabilizes at R=1 but not at every sampled radius" + heuristic;
    }
  } else if (all_decaying) {
    r.verdict = "determinate-like";
    r.rationale = d > 1 ? "every marginal eigenvalue sequence decays, so the product is determinate by Petersen (a)" + heuristic
                        : "lambda_N decays" + heuristic;
  } else {
    r.verdict = "inconclusive";
    r.rationale = "marginal eigenvalue sequences neither decay nor stabilize clearly" + heuristic;
  }
  return r;
}

}  // namespace

std::string to_string(TrendLabel label) {
  switch (label) {
    case TrendLabel::decaying:
      return "decaying";
    case TrendLabel::decaying_finite_rank:
      return "decaying (finite rank)";
    case TrendLabel::stabilizing:
      return "stabilizing";
    case TrendLabel::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

TrendSummary classify(const std::vector<EigenSequenceEntry>& sequence, const TrendThresholds& thresholds) {
  if (sequence.empty() || sequence.back().degree < kMinTrendDegree) {
    throw MomentError("trend classification needs N_max >= " + std::to_string(kMinTrendDegree));
  }
  TrendSummary s = summarize(sequence, thresholds);
  s.label = label_of(s, sequence.front().spectrum.lambda_min, thresholds);
  return s;
}

ScalingSweep sweep(const SourcePtr& source, const std::vector<Rational>& radii, int max_degree, unsigned bits,
                   const SpectrumOptions& options, const TrendThresholds& thresholds) {
  if (!source) throw MomentError("sweep: null source");
  if (radii.empty()) throw MomentError("sweep: no radii");
  for (const auto& r : radii) {
    if (r <= 0) throw MomentError("sweep: radius " + to_fraction(r) + " is not positive");
  }
  ScalingSweep s;
  s.source = source;
  s.radii = radii;
  s.max_degree = max_degree;
  for (const auto& r : radii) {
    s.columns.push_back(eigen_sequence(source, r, max_degree, bits, options));
    const auto& column = s.columns.back();
    TrendSummary summary = summarize(column, thresholds);
    if (max_degree >= kMinTrendDegree) summary.label = label_of(summary, column.front().spectrum.lambda_min, thresholds);
    s.summaries.push_back(std::move(summary));
    s.interlacing_holds = s.interlacing_holds && nonincreasing(column);
    s.floor_positive.push_back(!column.back().spectrum.lambda_min_is_exact_zero() &&
                               column.back().spectrum.lambda_min > column.front().spectrum.lambda_min * thresholds.decay);
  }

  std::vector<std::size_t> by_radius(radii.size());
  std::iota(by_radius.begin(), by_radius.end(), 0);
  std::stable_sort(by_radius.begin(), by_radius.end(), [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });
  for (std::size_t i = 0; i + 1 < by_radius.size(); ++i) {
    const auto& small = s.columns[by_radius[i]];
    const auto& large = s.columns[by_radius[i + 1]];
    for (std::size_t n = 0; n < small.size(); ++n) {
      const auto& a = small[n].spectrum;
      const auto& b = large[n].spectrum;
      if (b.lambda_min_is_exact_zero()) continue;
      if (a.lambda_min_is_exact_zero() || a.lambda_min < b.lambda_min - residual_of(a) - residual_of(b)) {
        s.radius_monotone = false;
      }
    }
  }
  // A positive floor at R forces one at every S < R.
  for (std::size_t i = 0; i < by_radius.size(); ++i) {
    if (!s.floor_positive[by_radius[i]]) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (!s.floor_positive[by_radius[j]]) s.floor_monotone = false;
    }
  }
  return s;
}

BciTrend bci_trend(const SourcePtr& source, int max_degree, unsigned bits, const SpectrumOptions& options,
                   const TrendThresholds& thresholds) {
  if (!source) throw MomentError("bci_trend: null source");
  if (source->dimension() != 1) throw MomentError("bci_trend needs a one-dimensional source");
  if (max_degree < kMinTrendDegree) {
    throw MomentError("bci_trend: N_max = " + std::to_string(max_degree) + " is too short to classify (need >= " +
                      std::to_string(kMinTrendDegree) + ")");
  }
  BciTrend out;
  out.source = source;
  out.sequence = eigen_sequence(source, Rational(1), max_degree, bits, options);
  out.summary = classify(out.sequence, thresholds);
  return out;
}

ProductExample product_example(const SourcePtr& first, const SourcePtr& second, int max_degree, unsigned bits,
                               const SpectrumOptions& options, const TrendThresholds& thresholds) {
  if (!first || !second) throw MomentError("product_example: null source");
  if (first->dimension() != 1 || second->dimension() != 1) {
    throw MomentError("product_example needs two one-dimensional sources");
  }
  ProductExample out;
  out.source = product({first, second});
  const auto joint = eigen_sequence(out.source, Rational(1), max_degree, bits, options);
  const auto eta1 = marginal_sequence(out.source, 1, max_degree, bits, options);
  const auto eta2 = marginal_sequence(out.source, 2, max_degree, bits, options);
  for (int n = 0; n <= max_degree; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const SpectrumResult& h = joint[k].spectrum;
    ProductExampleRow row;
    row.degree = n;
    row.lambda = h.lambda_min;
    row.eta_first = eta1[k].spectrum.lambda_min;
    row.eta_second = eta2[k].spectrum.lambda_min;
    if (h.lambda_min_is_exact_zero()) {
      row.residual = Real(0);
      row.compression_holds = true;
    } else {
      const SpectrumResult& e1 = eta1[k].spectrum;
      const SpectrumResult& e2 = eta2[k].spectrum;
      row.residual = h.absolute_residual + std::max(e1.absolute_residual, e2.absolute_residual);
      row.compression_holds = !e1.lambda_min_is_exact_zero() && !e2.lambda_min_is_exact_zero() &&
                              h.lambda_min <= e1.lambda_min + h.absolute_residual + e1.absolute_residual &&
                              h.lambda_min <= e2.lambda_min + h.absolute_residual + e2.absolute_residual;
    }
    out.compression_holds = out.compression_holds && row.compression_holds;
    out.rows.push_back(std::move(row));
  }
  const Real& lambda0 = joint.front().spectrum.lambda_min;
  out.product_decays =
      joint.back().spectrum.lambda_min_is_exact_zero() || joint.back().spectrum.lambda_min < lambda0 * thresholds.decay;
  if (max_degree >= kMinTrendDegree) {
    out.product_trend = classify(joint, thresholds);
    out.second_marginal_trend = classify(eta2, thresholds);
  }
  return out;
}

DiagnosticsReport r2_condition_suite(const SourcePtr& source, const std::vector<Rational>& radii, int max_degree,
                                     const std::vector<std::vector<Complex>>& points, const DiagnosticsOptions& options) {
  if (!source) throw MomentError("r2_condition_suite: null source");
  if (source->factors().empty()) {
    throw MomentError("r2_condition_suite needs a product source; '" + source->description() +
                      "' has no factorized moments");
  }
  return build_report(source, radii, max_degree, points, options, true);
}

DiagnosticsReport diagnose(const SourcePtr& source, const std::vector<Rational>& radii, int max_degree,
                           const std::vector<std::vector<Complex>>& points, const DiagnosticsOptions& options) {
  if (!source) throw MomentError("diagnose: null source");
  const bool product_structure = source->dimension() == 1 || !source->factors().empty();
  return build_report(source, radii, max_degree, points, options, product_structure);
}

std::vector<Complex> imaginary_unit_point(int dimension, unsigned bits) {
  PrecisionScope scope(bits);
  return std::vector<Complex>(static_cast<std::size_t>(dimension), Complex(Real(0), Real(1)));
}

}  // namespace momentkernel
