#include "momentkernel/hankel_spectrum.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "momentkernel/jacobi.hpp"
#include "momentkernel/precision.hpp"

namespace momentkernel {

namespace {

Rational radius_power(const Rational& radius, int k) { return pow_int(radius, static_cast<unsigned>(k)); }

void fill_entries(HankelTruncation& h, const std::vector<MultiIndex>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const MomentSource& src = *h.source;
  PrecisionScope scope(h.precision_bits);
  h.entries.resize(n, n);
  if (src.is_exact()) {
    Matrix<Rational> exact(n, n);
    std::map<MultiIndex, Rational> memo;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const MultiIndex sum = rows[static_cast<std::size_t>(i)] + rows[static_cast<std::size_t>(j)];
        auto it = memo.find(sum);
        if (it == memo.end()) {
          Rational v = src.exact_moment(sum);
          if (h.radius != 1) v /= radius_power(h.radius, sum.degree());
          it = memo.emplace(sum, std::move(v)).first;
        }
        exact(i, j) = it->second;
        exact(j, i) = it->second;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        h.entries(i, j) = Real(exact(i, j));
        h.entries(j, i) = h.entries(i, j);
      }
    }
    h.exact_entries = std::move(exact);
  } else {
    std::map<MultiIndex, Real> memo;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const MultiIndex sum = rows[static_cast<std::size_t>(i)] + rows[static_cast<std::size_t>(j)];
        auto it = memo.find(sum);
        if (it == memo.end()) {
          Real v = src.moment(sum, h.precision_bits);
          if (h.radius != 1) v /= Real(radius_power(h.radius, sum.degree()));
          it = memo.emplace(sum, std::move(v)).first;
        }
        h.entries(i, j) = it->second;
        h.entries(j, i) = it->second;
      }
    }
    h.exact_entries.reset();
  }
}

std::vector<MultiIndex> marginal_rows(int dimension, int coordinate, int degree) {
  std::vector<MultiIndex> rows;
  for (int k = 0; k <= degree; ++k) rows.push_back(MultiIndex::axis(dimension, coordinate - 1, k));
  return rows;
}

void check_radius(const Rational& radius) {
  if (radius <= 0) throw MomentError("Hankel assembly: radius must be positive");
}

// Leading principal block for a smaller degree; the graded-lex order is
// prefix-stable, so this equals assembling at that degree.
HankelTruncation truncate(const HankelTruncation& h, int degree) {
  HankelTruncation out;
  out.source = h.source;
  out.radius = h.radius;
  out.degree = degree;
  out.marginal = h.marginal;
  out.precision_bits = h.precision_bits;
  out.order = h.marginal ? IndexOrder::enumerate(1, degree) : IndexOrder::enumerate(h.source->dimension(), degree);
  const auto n = static_cast<Eigen::Index>(out.order.size());
  out.entries = h.entries.topLeftCorner(n, n);
  if (h.exact_entries) out.exact_entries = h.exact_entries->topLeftCorner(n, n);
  return out;
}

}  // namespace

HankelTruncation assemble(const SourcePtr& source, const Rational& radius, int degree, unsigned bits) {
  if (!source) throw MomentError("assemble: null source");
  check_radius(radius);
  if (degree < 0) throw MomentError("assemble: degree must be >= 0");
  HankelTruncation h;
  h.source = source;
  h.radius = radius;
  h.degree = degree;
  h.precision_bits = bits;
  h.order = IndexOrder::enumerate(source->dimension(), degree);
  fill_entries(h, h.order.indices());
  return h;
}

HankelTruncation assemble_marginal(const SourcePtr& source, int coordinate, int degree, const Rational& radius,
                                   unsigned bits) {
  if (!source) throw MomentError("assemble_marginal: null source");
  check_radius(radius);
  if (coordinate < 1 || coordinate > source->dimension()) {
    throw MomentError("assemble_marginal: coordinate " + std::to_string(coordinate) + " outside 1.." +
                      std::to_string(source->dimension()));
  }
  if (degree < 0) throw MomentError("assemble_marginal: degree must be >= 0");
  HankelTruncation h;
  h.source = source;
  h.radius = radius;
  h.degree = degree;
  h.marginal = coordinate;
  h.precision_bits = bits;
  h.order = IndexOrder::enumerate(1, degree);
  fill_entries(h, marginal_rows(source->dimension(), coordinate, degree));
  return h;
}

HankelTruncation reassemble(const HankelTruncation& h, unsigned bits) {
  if (h.marginal) return assemble_marginal(h.source, *h.marginal, h.degree, h.radius, bits);
  return assemble(h.source, h.radius, h.degree, bits);
}

SpectrumResult symmetric_spectrum(const Matrix<Real>& a, unsigned bits) {
  PrecisionScope scope(bits);
  const Real u = unit_roundoff(bits);
  const Real tolerance = u * Real(std::max<Eigen::Index>(a.rows(), 1));
  const auto eig = jacobi_eigen<Real>(a, tolerance);
  SpectrumResult out;
  out.precision_bits = bits;
  out.sweeps = eig.sweeps;
  out.eigenvalues.assign(eig.values.data(), eig.values.data() + eig.values.size());
  out.lambda_min = out.eigenvalues.empty() ? Real(0) : out.eigenvalues.front();
  out.absolute_residual = certified_residual<Real>(a, eig, u);
  const Real norm = a.norm();
  out.residual_bound = norm > 0 ? Real(out.absolute_residual / norm) : out.absolute_residual;
  return out;
}

namespace {

int nullity(const SourcePtr& factor, const Rational& radius, int degree) {
  const HankelTruncation j = assemble(factor, radius, degree, kDefaultPrecisionBits);
  return static_cast<int>(j.size()) - rank_and_kernel(*j.exact_entries).rank;
}

// Zero eigenvalues of a float-mode product truncation that follow from an
// exact factor: J_N^j is a principal submatrix of the PSD matrix H, so each
// null vector of J_N^j, padded with zeros, is a null vector of H.
int zeros_from_exact_factors(const HankelTruncation& h) {
  const auto factors = h.source->factors();
  int zeros = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (!factors[j]->is_exact()) continue;
    if (h.marginal && *h.marginal != static_cast<int>(j) + 1) continue;
    zeros = std::max(zeros, nullity(factors[j], h.radius, h.degree));
  }
  return zeros;
}

}  // namespace

SpectrumResult spectrum(const HankelTruncation& h, const SpectrumOptions& options) {
  HankelTruncation current = h;
  std::optional<RankKernel> exact;
  int known_zeros = 0;
  if (h.is_exact()) {
    exact = rank_and_kernel(*h.exact_entries);
    known_zeros = static_cast<int>(h.size()) - exact->rank;
  } else {
    known_zeros = zeros_from_exact_factors(h);
  }
  for (;;) {
    SpectrumResult result;
    bool solved = true;
    try {
      result = symmetric_spectrum(current.entries, current.precision_bits);
    } catch (const ConvergenceError&) {
      solved = false;
    }
    if (solved) {
      if (exact) result.exact_rank = exact->rank;
      if (known_zeros > 0) {
        result.exact_zero_count = known_zeros;
        PrecisionScope scope(current.precision_bits);
        for (int k = 0; k < known_zeros; ++k) result.eigenvalues[static_cast<std::size_t>(k)] = Real(0);
        result.lambda_min = Real(0);
        return result;
      }
      if (result.lambda_min > options.trust_factor * result.absolute_residual) return result;
    }
    const unsigned next = current.precision_bits * 2;
    if (next > options.precision_ceiling) {
      throw PrecisionError("smallest eigenvalue of the degree-" + std::to_string(h.degree) +
                           " truncation not resolved below the precision ceiling of " +
                           std::to_string(options.precision_ceiling) + " bits");
    }
    current = reassemble(current, next);
  }
}

std::vector<EigenSequenceEntry> eigen_sequence(const SourcePtr& source, const Rational& radius, int max_degree,
                                               unsigned bits, const SpectrumOptions& options) {
  if (max_degree < 0) throw MomentError("eigen_sequence: max degree must be >= 0");
  std::vector<EigenSequenceEntry> out;
  HankelTruncation full = assemble(source, radius, max_degree, bits);
  for (int n = 0; n <= max_degree; ++n) {
    EigenSequenceEntry entry;
    entry.degree = n;
    const HankelTruncation h = truncate(full, n);
    entry.matrix_size = h.size();
    entry.spectrum = spectrum(h, options);
    // Later truncations start from the precision this one needed.
    if (entry.spectrum.precision_bits > bits) {
      bits = entry.spectrum.precision_bits;
      full = reassemble(full, bits);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

RankKernel rank_and_kernel(const HankelTruncation& h) {
  if (!h.is_exact()) {
    throw MomentError("rank_and_kernel needs exact-rational entries; '" + h.source->description() +
                      "' is a float-mode source");
  }
  return rank_and_kernel(*h.exact_entries);
}

}  // namespace momentkernel
