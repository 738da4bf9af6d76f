#ifndef MOMENTKERNEL_REPORT_IO_HPP
#define MOMENTKERNEL_REPORT_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "momentkernel/diagnostics.hpp"
#include "momentkernel/hankel_spectrum.hpp"
#include "momentkernel/ortho_basis.hpp"
#include "momentkernel/torus_duality.hpp"

namespace momentkernel {

// All numbers are written as decimal strings carrying `bits` of precision,
// so identical inputs give byte-identical files.

/// N,matrix_size,lambda_min,residual_bound,precision_bits_used
std::string eigenseq_csv(const std::vector<EigenSequenceEntry>& sequence, unsigned bits);

/// n,partial_sum
std::string kernelsum_csv(const KernelEvaluation& evaluation, unsigned bits);

std::string duality_json(const DualityReport& duality, const TraceBound& trace, const std::string& source,
                         const Rational& radius, int max_degree, unsigned bits);

std::string diagnostics_json(const DiagnosticsReport& report, const std::string& source);

/// Moment table in the loader's file format, every |alpha| <= max_degree.
/// Exact sources are written as fractions.
std::string moments_json(const MomentSource& source, int max_degree, unsigned bits);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// Appends a timestamped line to `path` + ".log". Data files never carry
/// timestamps.
void append_log(const std::filesystem::path& path, const std::string& line);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_REPORT_IO_HPP
