#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "check_suite.hpp"
#include "momentkernel/diagnostics.hpp"
#include "momentkernel/precision.hpp"
#include "momentkernel/report_io.hpp"
#include "momentkernel/source_spec.hpp"
#include "momentkernel/torus_duality.hpp"

using namespace momentkernel;

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kPrecisionFailure = 3, kIoError = 4, kCheckFailed = 5 };

struct Options {
  std::string source;
  std::string radius = "1";
  std::string radii = "0.5,1,2";
  int max_degree = -1;
  std::optional<unsigned> precision_bits;
  unsigned precision_ceiling = kDefaultPrecisionCeiling;
  std::string point;
  std::string points;
  std::string shape = "total";
  std::string out;
  std::uint64_t seed = RunConfig{}.seed;
};

RunConfig make_config(const Options& o, bool uses_radii) {
  RunConfig c;
  c.precision_bits = o.precision_bits ? *o.precision_bits : default_precision_bits();
  c.precision_ceiling = o.precision_ceiling;
  c.max_degree = o.max_degree;
  c.radii = uses_radii ? parse_radii(o.radii) : parse_radii(o.radius);
  c.out = o.out;
  c.seed = o.seed;
  c.validate();
  return c;
}

void emit(const RunConfig& c, const std::string& command, const std::string& content, const std::string& summary) {
  if (c.out.empty()) {
    std::cout << content;
    return;
  }
  write_atomically(c.out, content);
  append_log(c.out, command + ": " + summary);
  std::cout << summary << " -> " << c.out.string() << '\n';
}

SpectrumOptions spectrum_options(const RunConfig& c) {
  SpectrumOptions s;
  s.precision_ceiling = c.precision_ceiling;
  return s;
}

void add_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--source", o.source, "Source spec: JSON, shorthand such as gaussian*lognormal:1, or @file")
      ->required();
}

void add_precision(CLI::App* cmd, Options& o) {
  cmd->add_option("--precision-bits", o.precision_bits, "Working precision in bits (default 256 or $" +
                                                            std::string(kPrecisionEnvironmentVariable) + ")");
  cmd->add_option("--precision-ceiling", o.precision_ceiling, "Largest precision escalation may reach")
      ->capture_default_str();
}

void add_out(CLI::App* cmd, Options& o) { cmd->add_option("--out", o.out, "Output file (stdout when omitted)"); }

int run_moments(const Options& o) {
  const RunConfig c = make_config(o, false);
  const SourceSpec spec = parse_source_spec(o.source);
  const SourcePtr source = build_source(spec);
  const std::string table = moments_json(*source, c.max_degree, c.precision_bits);
  emit(c, "moments",
       table, "moments of " + source->description() + " to total degree " + std::to_string(c.max_degree));
  return kOk;
}

int run_eigenseq(const Options& o) {
  const RunConfig c = make_config(o, false);
  const SourcePtr source = build_source(parse_source_spec(o.source));
  const auto seq = eigen_sequence(source, c.radii.front(), c.max_degree, c.precision_bits, spectrum_options(c));
  emit(c, "eigenseq", eigenseq_csv(seq, c.precision_bits),
       "lambda_{R," + std::to_string(c.max_degree) + "} = " + seq.back().spectrum.lambda_min.str(12));
  return kOk;
}

int run_kernelsum(const Options& o) {
  const RunConfig c = make_config(o, false);
  const SourcePtr source = build_source(parse_source_spec(o.source));
  if (o.shape != "total" && o.shape != "box") throw SpecError({"--shape must be 'box' or 'total'"});
  const KernelShape shape = o.shape == "box" ? KernelShape::box : KernelShape::total_degree;
  const std::vector<Complex> z =
      o.point.empty() ? imaginary_unit_point(source->dimension(), c.precision_bits) : parse_point(o.point, c.precision_bits);
  const int degree = shape == KernelShape::box ? source->dimension() * c.max_degree : c.max_degree;
  const OrthoBasis basis = build_basis(source, c.radii.front(), degree, BasisOptions{c.precision_bits, c.precision_ceiling});
  const KernelEvaluation k = kernel_sum(basis, z, shape);
  emit(c, "kernelsum", kernelsum_csv(k, c.precision_bits),
       o.shape + " kernel sum at n=" + std::to_string(c.max_degree) + ": " + k.partial_sums.back().str(12));
  return kOk;
}

int run_duality(const Options& o) {
  const RunConfig c = make_config(o, false);
  const SourceSpec spec = parse_source_spec(o.source);
  const SourcePtr source = build_source(spec);
  const Rational& r = c.radii.front();
  const OrthoBasis basis = build_basis(source, r, c.max_degree, BasisOptions{c.precision_bits, c.precision_ceiling});
  const TorusGram k = build_torus_gram(basis);
  const HankelTruncation h = assemble(source, r, c.max_degree, c.precision_bits);
  const DualityReport d = duality_check(h, k, spectrum_options(c));
  const TraceBound t = trace_bound_check(k, h, spectrum_options(c));
  emit(c, "duality", duality_json(d, t, to_json_text(spec), r, c.max_degree, c.precision_bits),
       "lambda_min * lambda_max(K) = " + d.product.str(20) + (d.holds() ? " (holds)" : " (VIOLATED)"));
  return kOk;
}

int run_diagnose(const Options& o) {
  const RunConfig c = make_config(o, true);
  const SourceSpec spec = parse_source_spec(o.source);
  const SourcePtr source = build_source(spec);
  const auto points = o.points.empty() ? std::vector<std::vector<Complex>>{imaginary_unit_point(source->dimension(), c.precision_bits)}
                                       : parse_points(o.points, c.precision_bits);
  DiagnosticsOptions opts;
  opts.precision_bits = c.precision_bits;
  opts.spectrum = spectrum_options(c);
  const DiagnosticsReport r = diagnose(source, c.radii, c.max_degree, points, opts);
  emit(c, "diagnose", diagnostics_json(r, to_json_text(spec)), "verdict: " + r.verdict);
  return kOk;
}

int run_check(Options o) {
  o.max_degree = 0;
  RunConfig c = make_config(o, false);
  if (c.out.empty()) c.out = "check_out";
  const auto outcomes = run_check_suite(c.out, c.precision_bits, c.precision_ceiling, c.seed);
  int failed = 0;
  for (const auto& r : outcomes) {
    std::cout << (r.holds ? "ok    " : "FAIL  ") << r.name << " (" << r.detail << ")\n";
    if (!r.holds) ++failed;
  }
  std::ostringstream summary;
  summary << outcomes.size() - static_cast<std::size_t>(failed) << "/" << outcomes.size() << " invariants hold";
  append_log(c.out / "check", summary.str());
  std::cout << summary.str() << " -> " << c.out.string() << '\n';
  return failed == 0 ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hankel spectra, orthonormal bases and reproducing-kernel diagnostics for moment sequences"};
  app.require_subcommand(1);
  Options o;

  auto* moments = app.add_subcommand("moments", "Write the moment table of a source to a total degree");
  add_source(moments, o);
  moments->add_option("--max-degree", o.max_degree, "Largest total degree")->required();
  add_precision(moments, o);
  add_out(moments, o);

  auto* eigenseq = app.add_subcommand("eigenseq", "Smallest eigenvalue of H_{R,N} for N = 0..max-degree (CSV)");
  add_source(eigenseq, o);
  eigenseq->add_option("--radius", o.radius, "Scaling radius R")->capture_default_str();
  eigenseq->add_option("--max-degree", o.max_degree, "Largest truncation degree N")->required();
  add_precision(eigenseq, o);
  add_out(eigenseq, o);

  auto* kernelsum = app.add_subcommand("kernelsum", "Partial kernel sums at a point (CSV)");
  add_source(kernelsum, o);
  kernelsum->add_option("--radius", o.radius, "Scaling radius R")->capture_default_str();
  kernelsum->add_option("--max-degree", o.max_degree, "Largest index n of the partial sums")->required();
  kernelsum->add_option("--point", o.point, "Point as \"re,im;re,im\" (default i in every coordinate)");
  kernelsum->add_option("--shape", o.shape, "box or total")->capture_default_str();
  add_precision(kernelsum, o);
  add_out(kernelsum, o);

  auto* duality = app.add_subcommand("duality", "Check lambda_min(H) * lambda_max(K) = 1 (JSON)");
  add_source(duality, o);
  duality->add_option("--radius", o.radius, "Scaling radius R")->capture_default_str();
  duality->add_option("--max-degree", o.max_degree, "Truncation degree N")->required();
  add_precision(duality, o);
  add_out(duality, o);

  auto* diagnose_cmd = app.add_subcommand("diagnose", "Finite-N evidence for conditions (c1)-(c4) and a verdict (JSON)");
  add_source(diagnose_cmd, o);
  diagnose_cmd->add_option("--radii", o.radii, "Comma-separated radii")->capture_default_str();
  diagnose_cmd->add_option("--max-degree", o.max_degree, "Largest truncation degree N")->required();
  diagnose_cmd->add_option("--points", o.points, "Points such as \"i,i\" or \"i,i;1+i,2\" (default i in every coordinate)");
  add_precision(diagnose_cmd, o);
  add_out(diagnose_cmd, o);

  auto* check = app.add_subcommand("check", "Run the invariant suite on builtin sources");
  add_precision(check, o);
  check->add_option("--out", o.out, "Artifact directory (default check_out)");
  check->add_option("--seed", o.seed, "Seed of the random samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*moments) return run_moments(o);
    if (*eigenseq) return run_eigenseq(o);
    if (*kernelsum) return run_kernelsum(o);
    if (*duality) return run_duality(o);
    if (*diagnose_cmd) return run_diagnose(o);
    if (*check) return run_check(o);
  } catch (const PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << '\n';
    return kPrecisionFailure;
  } catch (const MomentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "I/O failure: " << e.what() << '\n';
    return kIoError;
  }
  return kInputError;
}
