#include "momentkernel/torus_duality.hpp"

#include "momentkernel/precision.hpp"

namespace momentkernel {

namespace {

void check_matching(const HankelTruncation& h, const TorusGram& k) {
  if (h.marginal) throw MomentError("duality needs the full truncation, not a marginal compression");
  const bool same_source = h.source == k.source || h.source->description() == k.source->description();
  if (!same_source || h.radius != k.radius || h.degree != k.degree) {
    throw MomentError("Hankel truncation and torus Gram matrix come from different (source, R, N)");
  }
}

}  // namespace

TorusGram build_torus_gram(const OrthoBasis& basis) {
  TorusGram k;
  k.source = basis.source;
  k.radius = basis.radius;
  k.degree = basis.degree;
  k.precision_bits = basis.working_bits;
  PrecisionScope scope(basis.working_bits);
  k.entries = basis.coefficients * basis.coefficients.transpose();
  for (Eigen::Index a = 0; a < basis.size(); ++a) k.coefficient_norms.push_back(basis.coefficients.row(a).squaredNorm());
  return k;
}

DualityReport duality_check(const HankelTruncation& h, const TorusGram& k, const SpectrumOptions& options) {
  check_matching(h, k);
  DualityReport out;
  out.hankel_spectrum = spectrum(h, options);
  if (out.hankel_spectrum.lambda_min_is_exact_zero() || out.hankel_spectrum.lambda_min <= 0) {
    throw MomentError("duality needs a positive definite truncation");
  }
  out.torus_spectrum = symmetric_spectrum(k.entries, k.precision_bits);
  const unsigned bits = std::max(out.hankel_spectrum.precision_bits, k.precision_bits);
  PrecisionScope scope(bits);
  out.lambda_min = out.hankel_spectrum.lambda_min;
  out.lambda_max_k = out.torus_spectrum.eigenvalues.back();
  out.product = out.lambda_min * out.lambda_max_k;
  out.deviation = abs(out.product - 1);
  out.residual_bound = out.hankel_spectrum.absolute_residual / out.lambda_min +
                       out.torus_spectrum.absolute_residual / out.lambda_max_k;
  out.trace_k = k.entries.trace();
  return out;
}

TraceBound trace_bound_check(const TorusGram& k, const HankelTruncation& h, const SpectrumOptions& options) {
  check_matching(h, k);
  const SpectrumResult sh = spectrum(h, options);
  if (sh.lambda_min_is_exact_zero() || sh.lambda_min <= sh.absolute_residual) {
    throw MomentError("trace bound needs a positive definite truncation");
  }
  const SpectrumResult sk = symmetric_spectrum(k.entries, k.precision_bits);
  PrecisionScope scope(std::max(sh.precision_bits, k.precision_bits));
  TraceBound out;
  out.trace = k.entries.trace();
  out.coefficient_norm_sum = Real(0);
  for (const auto& v : k.coefficient_norms) out.coefficient_norm_sum += v;
  out.lambda_max = sk.eigenvalues.back();
  out.inverse_lambda_min = 1 / sh.lambda_min;
  // |1/lambda - 1/lambda_hat| <= delta / (lambda_hat (lambda_hat - delta)).
  out.residual = sh.absolute_residual / (sh.lambda_min * (sh.lambda_min - sh.absolute_residual)) +
                 sk.absolute_residual;
  out.holds = out.inverse_lambda_min <= out.lambda_max + out.residual && out.lambda_max <= out.trace + out.residual;
  return out;
}

}  // namespace momentkernel
