#ifndef MOMENTKERNEL_DIAGNOSTICS_HPP
#define MOMENTKERNEL_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "momentkernel/hankel_spectrum.hpp"
#include "momentkernel/ortho_basis.hpp"

namespace momentkernel {

/// Finite-N decision rules. None of them decides determinacy; they label
/// the shape of a finite eigenvalue sequence.
struct TrendThresholds {
  /// "decaying" needs lambda_{N_max} < decay * lambda_0 ...
  double decay = 1e-2;
  /// ... and a least-squares slope of ln(lambda) over the last half below -slope_tolerance.
  double slope_tolerance = 1e-3;
  /// "stabilizing" needs every relative step over the last `window` values below flat.
  double flat = 0.1;
  int window = 4;
  /// Degree used for the 1D marginal trends of a product source (at least N_max).
  int marginal_degree = 20;
};

enum class TrendLabel { decaying, decaying_finite_rank, stabilizing, inconclusive };

std::string to_string(TrendLabel label);

/// Summary of one finite sequence lambda_0..lambda_{N_max}.
struct TrendSummary {
  TrendLabel label = TrendLabel::inconclusive;
  int last_degree = 0;
  Real last_value;
  /// lambda_{N_max} / lambda_{N_max/2}; absent after an exact zero.
  std::optional<Real> half_ratio;
  /// Slope of ln(lambda_N) against N over the last half.
  std::optional<double> decay_exponent;
  /// Largest |lambda_{N+1} / lambda_N - 1| over the last window.
  std::optional<double> max_relative_change;
  /// First degree whose smallest eigenvalue is exactly zero.
  std::optional<int> exact_zero_degree;
};

/// Shortest sequence the classifier accepts.
inline constexpr int kMinTrendDegree = 6;

/// Classifies a sequence produced by eigen_sequence. Needs N_max >= 6.
TrendSummary classify(const std::vector<EigenSequenceEntry>& sequence, const TrendThresholds& thresholds = {});

struct ScalingSweep {
  SourcePtr source;
  std::vector<Rational> radii;
  int max_degree = 0;
  /// columns[k] holds lambda_{R_k, N} for N = 0..max_degree.
  std::vector<std::vector<EigenSequenceEntry>> columns;
  std::vector<TrendSummary> summaries;
  /// Every column nonincreasing in N up to its certified residuals.
  bool interlacing_holds = true;
  /// lambda_{S,N} >= lambda_{R,N} for S < R at every N, up to residuals.
  bool radius_monotone = true;
  /// Per radius: last value above thresholds.decay. If it holds at R it
  /// must hold at every smaller radius.
  std::vector<bool> floor_positive;
  bool floor_monotone = true;
};

ScalingSweep sweep(const SourcePtr& source, const std::vector<Rational>& radii, int max_degree,
                   unsigned bits = kDefaultPrecisionBits, const SpectrumOptions& options = {},
                   const TrendThresholds& thresholds = {});

struct BciTrend {
  SourcePtr source;
  std::vector<EigenSequenceEntry> sequence;
  TrendSummary summary;
};

/// lambda_N of a one-dimensional source at R = 1, classified.
BciTrend bci_trend(const SourcePtr& source, int max_degree, unsigned bits = kDefaultPrecisionBits,
                   const SpectrumOptions& options = {}, const TrendThresholds& thresholds = {});

struct ProductExampleRow {
  int degree = 0;
  Real lambda;
  /// Smallest eigenvalue of the marginal compressions J_N^1, J_N^2.
  Real eta_first;
  Real eta_second;
  Real residual;
  bool compression_holds = false;
};

struct ProductExample {
  SourcePtr source;
  std::vector<ProductExampleRow> rows;
  bool compression_holds = true;
  /// lambda_{N_max} < thresholds.decay * lambda_0 for the product.
  bool product_decays = false;
  /// Present when max_degree >= 6.
  std::optional<TrendSummary> product_trend;
  std::optional<TrendSummary> second_marginal_trend;
};

/// The product of a determinate and an indeterminate 1D source: the 2D
/// sequence is squeezed by the determinate marginal while the other
/// marginal keeps a positive floor.
ProductExample product_example(const SourcePtr& first, const SourcePtr& second, int max_degree,
                               unsigned bits = kDefaultPrecisionBits, const SpectrumOptions& options = {},
                               const TrendThresholds& thresholds = {});

struct ChannelEvidence {
  bool positive = false;
  std::string note;
};

struct KernelChannel {
  std::vector<Complex> point;
  std::vector<Real> partial_sums;
  std::optional<double> max_relative_change;
};

struct FactorizationCheck {
  std::vector<Complex> point;
  int box_degree = 0;
  Real product_sum;
  Real marginal_product;
  Real relative_error;
  bool holds = false;
};

struct MarginalVerdict {
  std::string description;
  TrendSummary trend;
};

struct DiagnosticsOptions {
  unsigned precision_bits = kDefaultPrecisionBits;
  SpectrumOptions spectrum;
  TrendThresholds thresholds;
  /// Torus shells of the sampled compact set for (c3).
  std::vector<Rational> shell_radii{Rational(1, 2), Rational(1), Rational(3, 2)};
  int shell_points = 5;
};

struct DiagnosticsReport {
  std::string source_description;
  int dimension = 1;
  int max_degree = 0;
  unsigned precision_bits = kDefaultPrecisionBits;
  bool product_source = false;
  TrendThresholds thresholds;
  ScalingSweep sweep;
  /// Degree of the kernel-sum channels: the largest N <= N_max with a
  /// nonsingular H_{1,N}.
  int kernel_degree = 0;
  bool exact_zero = false;

  ChannelEvidence c1;
  ChannelEvidence c2;
  ChannelEvidence c3;
  ChannelEvidence c4;
  /// max over the sampled compact set of the partial sums, per n.
  std::vector<Real> c3_max_partial_sums;
  std::vector<KernelChannel> c4_points;
  std::vector<FactorizationCheck> factorization;
  std::vector<MarginalVerdict> marginals;

  std::string verdict;
  std::string rationale;
  bool finite_N_only = true;
};

/// Evidence for (c1)-(c4) and a Petersen verdict for a product source.
/// Refuses sources without a product structure.
DiagnosticsReport r2_condition_suite(const SourcePtr& source, const std::vector<Rational>& radii, int max_degree,
                                     const std::vector<std::vector<Complex>>& points,
                                     const DiagnosticsOptions& options = {});

/// Same report for any source: one-dimensional sources are their own
/// marginal; other sources without product structure get channel evidence
/// but an "inconclusive" verdict.
DiagnosticsReport diagnose(const SourcePtr& source, const std::vector<Rational>& radii, int max_degree,
                           const std::vector<std::vector<Complex>>& points, const DiagnosticsOptions& options = {});

/// (i, ..., i) at the given precision.
std::vector<Complex> imaginary_unit_point(int dimension, unsigned bits);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_DIAGNOSTICS_HPP
