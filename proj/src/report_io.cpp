#include "momentkernel/report_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "momentkernel/precision.hpp"

namespace momentkernel {

namespace {

using ojson = nlohmann::ordered_json;

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

template <class T>
ojson optional_value(const std::optional<T>& v, unsigned bits) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Real>) {
    return to_decimal(*v, bits);
  } else if constexpr (std::is_same_v<T, double>) {
    return number(*v);
  } else {
    return *v;
  }
}

ojson trend_json(const TrendSummary& s, unsigned bits) {
  ojson j;
  j["label"] = to_string(s.label);
  j["last_degree"] = s.last_degree;
  j["last_value"] = to_decimal(s.last_value, bits);
  j["half_ratio"] = optional_value(s.half_ratio, bits);
  j["decay_exponent"] = optional_value(s.decay_exponent, bits);
  j["max_relative_change"] = optional_value(s.max_relative_change, bits);
  j["exact_zero_degree"] = optional_value(s.exact_zero_degree, bits);
  return j;
}

ojson point_json(const std::vector<Complex>& z, unsigned bits) {
  ojson j = ojson::array();
  for (const auto& c : z) j.push_back(ojson::array({to_decimal(c.real(), bits), to_decimal(c.imag(), bits)}));
  return j;
}

ojson reals_json(const std::vector<Real>& values, unsigned bits) {
  ojson j = ojson::array();
  for (const auto& v : values) j.push_back(to_decimal(v, bits));
  return j;
}

ojson channel_json(const ChannelEvidence& c) { return ojson{{"positive", c.positive}, {"note", c.note}}; }

ojson source_json(const std::string& source) {
  try {
    return ojson::parse(source);
  } catch (const nlohmann::json::exception&) {
    return source;
  }
}

}  // namespace

std::string eigenseq_csv(const std::vector<EigenSequenceEntry>& sequence, unsigned bits) {
  std::ostringstream out;
  out << "N,matrix_size,lambda_min,residual_bound,precision_bits_used\n";
  for (const auto& e : sequence) {
    out << e.degree << ',' << e.matrix_size << ',' << to_decimal(e.spectrum.lambda_min, bits) << ','
        << to_decimal(e.spectrum.residual_bound, bits) << ',' << e.spectrum.precision_bits << '\n';
  }
  return out.str();
}

std::string kernelsum_csv(const KernelEvaluation& evaluation, unsigned bits) {
  std::ostringstream out;
  out << "n,partial_sum\n";
  for (std::size_t n = 0; n < evaluation.partial_sums.size(); ++n) {
    out << n << ',' << to_decimal(evaluation.partial_sums[n], bits) << '\n';
  }
  return out.str();
}

std::string duality_json(const DualityReport& d, const TraceBound& t, const std::string& source, const Rational& radius,
                         int max_degree, unsigned bits) {
  ojson j;
  j["source"] = source_json(source);
  j["radius"] = to_fraction(radius);
  j["max_degree"] = max_degree;
  j["precision_bits"] = bits;
  j["lambda_min"] = to_decimal(d.lambda_min, bits);
  j["lambda_max_K"] = to_decimal(d.lambda_max_k, bits);
  j["product"] = to_decimal(d.product, bits);
  j["deviation"] = to_decimal(d.deviation, bits);
  j["residual_bound"] = to_decimal(d.residual_bound, bits);
  j["trace_K"] = to_decimal(d.trace_k, bits);
  j["duality_holds"] = d.holds();
  j["trace_bound_holds"] = t.holds;
  j["precision_bits_used"] = {{"hankel", d.hankel_spectrum.precision_bits}, {"torus", d.torus_spectrum.precision_bits}};
  return j.dump(2) + "\n";
}

std::string diagnostics_json(const DiagnosticsReport& r, const std::string& source) {
  const unsigned bits = r.precision_bits;
  ojson j;
  j["schema"] = "momentkernel.diagnostics/1";
  j["source"] = source_json(source);
  j["source_description"] = r.source_description;
  j["dimension"] = r.dimension;
  j["max_degree"] = r.max_degree;
  j["precision_bits"] = bits;
  j["product_source"] = r.product_source;
  j["finite_N_only"] = r.finite_N_only;
  j["thresholds"] = {{"decay", number(r.thresholds.decay)},
                     {"slope_tolerance", number(r.thresholds.slope_tolerance)},
                     {"flat", number(r.thresholds.flat)},
                     {"window", r.thresholds.window},
                     {"marginal_degree", r.thresholds.marginal_degree}};

  ojson columns = ojson::array();
  for (std::size_t k = 0; k < r.sweep.radii.size(); ++k) {
    ojson rows = ojson::array();
    for (const auto& e : r.sweep.columns[k]) {
      rows.push_back({{"N", e.degree},
                      {"lambda_min", to_decimal(e.spectrum.lambda_min, bits)},
                      {"residual_bound", to_decimal(e.spectrum.residual_bound, bits)},
                      {"exact_zero", e.spectrum.lambda_min_is_exact_zero()},
                      {"precision_bits_used", e.spectrum.precision_bits}});
    }
    columns.push_back({{"radius", to_fraction(r.sweep.radii[k])},
                       {"lambda", rows},
                       {"trend", trend_json(r.sweep.summaries[k], bits)},
                       {"floor_positive", static_cast<bool>(r.sweep.floor_positive[k])}});
  }
  j["sweep"] = {{"columns", columns},
                {"interlacing_holds", r.sweep.interlacing_holds},
                {"radius_monotone", r.sweep.radius_monotone},
                {"floor_monotone", r.sweep.floor_monotone}};
  j["exact_zero"] = r.exact_zero;
  j["kernel_degree"] = r.kernel_degree;

  ojson c3 = channel_json(r.c3);
  c3["max_partial_sums"] = reals_json(r.c3_max_partial_sums, bits);
  ojson c4 = channel_json(r.c4);
  c4["points"] = ojson::array();
  for (const auto& p : r.c4_points) {
    c4["points"].push_back({{"point", point_json(p.point, bits)},
                            {"partial_sums", reals_json(p.partial_sums, bits)},
                            {"max_relative_change", optional_value(p.max_relative_change, bits)}});
  }
  j["conditions"] = {{"c1", channel_json(r.c1)}, {"c2", channel_json(r.c2)}, {"c3", c3}, {"c4", c4}};
  j["implications"] = {
      {"c2_implies_c1", "proved"},
      {"c2_iff_c3", "proved"},
      {"c3_implies_c4", "proved"},
      {"c1_implies_c2", r.product_source ? "proved for product sources" : "open for this source"},
      {"c4_implies_c3", r.product_source ? "proved for product sources" : "open for this source"}};

  ojson fact = ojson::array();
  for (const auto& f : r.factorization) {
    fact.push_back({{"point", point_json(f.point, bits)},
                    {"box_degree", f.box_degree},
                    {"product_sum", to_decimal(f.product_sum, bits)},
                    {"marginal_product", to_decimal(f.marginal_product, bits)},
                    {"relative_error", to_decimal(f.relative_error, bits)},
                    {"holds", f.holds}});
  }
  j["factorization"] = fact;
  ojson marginals = ojson::array();
  for (const auto& m : r.marginals) marginals.push_back({{"description", m.description}, {"trend", trend_json(m.trend, bits)}});
  j["marginals"] = marginals;
  j["verdict"] = r.verdict;
  j["rationale"] = r.rationale;
  return j.dump(2) + "\n";
}

std::string moments_json(const MomentSource& source, int max_degree, unsigned bits) {
  ojson j;
  j["d"] = source.dimension();
  j["max_total_degree"] = max_degree;
  j["entries"] = ojson::array();
  for (const MultiIndex& alpha : IndexOrder::enumerate(source.dimension(), max_degree)) {
    ojson a = ojson::array();
    for (int e : alpha.exponents()) a.push_back(e);
    const std::string value =
        source.is_exact() ? to_fraction(source.exact_moment(alpha)) : to_decimal(source.moment(alpha, bits), bits);
    j["entries"].push_back({{"alpha", a}, {"value", value}});
  }
  return j.dump(2) + "\n";
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

void append_log(const std::filesystem::path& path, const std::string& line) {
  std::filesystem::path log = path;
  log += ".log";
  std::ofstream out(log, std::ios::app);
  if (!out) return;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << stamp << ' ' << line << '\n';
}

}  // namespace momentkernel
