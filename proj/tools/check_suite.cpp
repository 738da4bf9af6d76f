#include "check_suite.hpp"

#include <random>
#include <sstream>

#include <json.hpp>

#include "momentkernel/diagnostics.hpp"
#include "momentkernel/precision.hpp"
#include "momentkernel/report_io.hpp"
#include "momentkernel/torus_duality.hpp"

namespace momentkernel {

namespace {

struct Case {
  std::string name;
  SourcePtr source;
  Rational radius;
  int degree;
};

class Suite {
 public:
  Suite(std::filesystem::path dir, unsigned bits, unsigned ceiling, std::uint64_t seed)
      : dir_(std::move(dir)), bits_(bits), ceiling_(ceiling), rng_(seed) {
    options_.precision_ceiling = ceiling;
  }

  std::vector<CheckOutcome> run() {
    closed_form();
    sweeps();
    duality();
    compression();
    factorization();
    reproducing_exact();
    reproducing_float();
    scaling();
    trends();
    diagnostics();
    return outcomes_;
  }

 private:
  void record(std::string name, bool holds, std::string detail) {
    outcomes_.push_back({std::move(name), holds, std::move(detail)});
  }

  void write(const std::string& name, const std::string& content) { write_atomically(dir_ / name, content); }

  Rational random_rational(int span, int max_den) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, max_den);
    const int a = num(rng_);
    const int b = den(rng_);
    return Rational(a, b);
  }

  Polynomial<Rational> random_polynomial(int dimension, int degree) {
    Polynomial<Rational> p;
    for (const auto& alpha : IndexOrder::enumerate(dimension, degree)) p[alpha] = random_rational(6, 3);
    return p;
  }

  Real tolerance() const { return exp(-Real(0.24) * to_real(static_cast<long long>(bits_), bits_) * log(to_real(10, bits_))); }

  void closed_form() {
    PrecisionScope scope(bits_);
    const SpectrumResult s = spectrum(assemble(gaussian_moments(), Rational(1), 2, bits_), options_);
    const Real r2 = sqrt(to_real(2, bits_));
    const Real expected[3] = {2 - r2, to_real(1, bits_), 2 + r2};
    Real worst = 0;
    for (int k = 0; k < 3; ++k) worst = std::max<Real>(worst, Real(abs(s.eigenvalues[static_cast<std::size_t>(k)] - expected[k])));
    record("gaussian H_2 spectrum = {2-sqrt2, 1, 2+sqrt2}", worst <= tolerance(), "max error " + worst.str(3));
  }

  void sweeps() {
    const std::vector<Rational> radii{Rational(1, 2), Rational(1), Rational(2)};
    const std::vector<std::pair<std::string, std::pair<SourcePtr, int>>> runs{
        {"gaussian", {gaussian_moments(), 12}}, {"lognormal", {lognormal_moments(Rational(1)), 8}}};
    for (const auto& [name, run] : runs) {
      const ScalingSweep s = sweep(run.first, radii, run.second, bits_, options_);
      for (std::size_t k = 0; k < radii.size(); ++k) {
        std::string r = to_fraction(radii[k]);
        for (auto& c : r) c = c == '/' ? '_' : c;
        write("eigenseq_" + name + "_R" + r + ".csv", eigenseq_csv(s.columns[k], bits_));
      }
      record(name + ": lambda_{R,N} nonincreasing in N", s.interlacing_holds, "radii 1/2, 1, 2; N <= " + std::to_string(run.second));
      record(name + ": lambda_{R,N} nonincreasing in R", s.radius_monotone && s.floor_monotone, "radii 1/2, 1, 2");
    }
  }

  void duality() {
    const SourcePtr g = gaussian_moments();
    const SourcePtr l = lognormal_moments(Rational(1));
    const std::vector<Case> cases{{"gaussian_N8_R1", g, Rational(1), 8},
                                  {"gaussian_N8_R2", g, Rational(2), 8},
                                  {"lognormal_N6_R1", l, Rational(1), 6},
                                  {"gaussian_lognormal_N4_R1_2", product({g, l}), Rational(1, 2), 4}};
    for (const auto& c : cases) {
      const OrthoBasis basis = build_basis(c.source, c.radius, c.degree, BasisOptions{bits_, ceiling_});
      const TorusGram k = build_torus_gram(basis);
      const HankelTruncation h = assemble(c.source, c.radius, c.degree, bits_);
      const DualityReport d = duality_check(h, k, options_);
      const TraceBound t = trace_bound_check(k, h, options_);
      write("duality_" + c.name + ".json", duality_json(d, t, c.source->description(), c.radius, c.degree, bits_));
      record(c.name + ": lambda_min(H) lambda_max(K) = 1", d.holds(),
             "deviation " + d.deviation.str(3) + ", bound " + d.residual_bound.str(3));
      PrecisionScope scope(k.precision_bits);
      const bool trace_identity = abs(t.trace - t.coefficient_norm_sum) <= tolerance() * t.trace;
      record(c.name + ": 1/lambda_min <= lambda_max(K) <= trace(K)", t.holds && trace_identity,
             "trace " + t.trace.str(8) + ", lambda_max " + t.lambda_max.str(8));
      record(c.name + ": K positive definite", d.torus_spectrum.lambda_min > d.torus_spectrum.absolute_residual,
             "lambda_min(K) " + d.torus_spectrum.lambda_min.str(8));
    }
  }

  void compression() {
    const ProductExample e = product_example(gaussian_moments(), lognormal_moments(Rational(1)), 6, bits_, options_);
    std::ostringstream csv;
    csv << "N,lambda,eta_1,eta_2\n";
    for (const auto& r : e.rows) {
      csv << r.degree << ',' << to_decimal(r.lambda, bits_) << ',' << to_decimal(r.eta_first, bits_) << ','
          << to_decimal(r.eta_second, bits_) << '\n';
    }
    write("compression_gaussian_lognormal.csv", csv.str());
    record("gaussian x lognormal: lambda_N <= min_j eta_N^j", e.compression_holds, "N <= 6");
  }

  void factorization() {
    const SourcePtr g = gaussian_moments();
    const int n = 3;
    const OrthoBasis joint = build_basis(product({g, g}), Rational(1), 2 * n, BasisOptions{bits_, ceiling_});
    const OrthoBasis single = build_basis(g, Rational(1), n, BasisOptions{bits_, ceiling_});
    const std::vector<Complex> z = imaginary_unit_point(2, bits_);
    const KernelEvaluation box = kernel_sum(joint, z, KernelShape::box);
    const std::vector<Complex> zi{z[0]};
    const KernelEvaluation one = kernel_sum(single, zi);
    write("kernelsum_gaussian2_box_i_i.csv", kernelsum_csv(box, bits_));
    PrecisionScope scope(joint.working_bits);
    Real worst = 0;
    for (int k = 0; k <= n; ++k) {
      const Real& a = box.partial_sums[static_cast<std::size_t>(k)];
      const Real b = one.partial_sums[static_cast<std::size_t>(k)] * one.partial_sums[static_cast<std::size_t>(k)];
      worst = std::max<Real>(worst, Real(abs(a - b) / b));
    }
    record("gaussian x gaussian: box kernel sum = squared 1D sum at (i,i)", worst <= tolerance(),
           "max relative error " + worst.str(3));
  }

  void reproducing_exact() {
    const OrthoBasis basis = build_basis(product({gaussian_moments(), gaussian_moments()}), Rational(1), 3,
                                         BasisOptions{bits_, ceiling_});
    int failures = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const Polynomial<Rational> p = random_polynomial(2, 3);
      const std::vector<Rational> y{random_rational(4, 3), random_rational(4, 3)};
      const Rational got = truncated_kernel_apply(basis, p, std::span<const Rational>(y));
      if (got != evaluate_polynomial<Rational, Rational>(p, y, Rational(1))) ++failures;
    }
    record("gaussian x gaussian: kernel reproduces degree-3 polynomials exactly", failures == 0,
           std::to_string(failures) + " of 10 mismatched");
  }

  void reproducing_float() {
    const OrthoBasis basis = build_basis(lognormal_moments(Rational(1)), Rational(1), 5, BasisOptions{bits_, ceiling_});
    Real worst = to_real(0, bits_);
    for (int trial = 0; trial < 10; ++trial) {
      const Polynomial<Rational> exact = random_polynomial(1, 5);
      PrecisionScope scope(basis.working_bits);
      Polynomial<Real> p;
      for (const auto& [alpha, c] : exact) p[alpha] = Real(c);
      const std::vector<Complex> y{Complex(Real(random_rational(4, 3)), Real(random_rational(4, 3)))};
      const Complex got = truncated_kernel_apply(basis, p, y);
      const Complex want = evaluate_polynomial<Real, Complex>(p, y, Complex(Real(1), Real(0)));
      const Real err = abs(got - want) / std::max<Real>(Real(1), Real(abs(want)));
      worst = std::max<Real>(worst, err);
    }
    record("lognormal: kernel reproduces degree-5 polynomials", worst <= tolerance(), "max relative error " + worst.str(3));
  }

  void scaling() {
    const SourcePtr g = gaussian_moments();
    const OrthoBasis unit = build_basis(g, Rational(1), 6, BasisOptions{bits_, ceiling_});
    Real worst = to_real(0, bits_);
    for (const Rational r : {Rational(1, 2), Rational(2)}) {
      const OrthoBasis scaled = build_basis(g, r, 6, BasisOptions{bits_, ceiling_});
      for (int trial = 0; trial < 5; ++trial) {
        PrecisionScope scope(bits_);
        const Complex z(Real(random_rational(8, 8)), Real(random_rational(8, 8)));
        const std::vector<Complex> zs{z};
        const std::vector<Complex> rz{z * Real(r)};
        const auto a = evaluate(scaled, zs);
        const auto b = evaluate(unit, rz);
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max<Real>(worst, Real(abs(a[k] - b[k])));
      }
    }
    record("gaussian: P_{R,alpha}(z) = P_{1,alpha}(Rz)", worst <= tolerance(), "max error " + worst.str(3));
  }

  void trends() {
    const BciTrend g = bci_trend(gaussian_moments(), 20, bits_, options_);
    const BciTrend l = bci_trend(lognormal_moments(Rational(1)), 12, bits_, options_);
    const BciTrend a = bci_trend(
        atomic_moments(AtomicMeasure1D{{{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}}}), 6, bits_,
        options_);
    record("gaussian trend decaying at N_max = 20", g.summary.label == TrendLabel::decaying, to_string(g.summary.label));
    record("lognormal trend stabilizing at N_max = 12", l.summary.label == TrendLabel::stabilizing,
           to_string(l.summary.label));
    record("two atoms: exact zero at N = 2", a.summary.exact_zero_degree == 2,
           a.summary.exact_zero_degree ? "first zero at N = " + std::to_string(*a.summary.exact_zero_degree) : "no zero");
  }

  void diagnostics() {
    const std::vector<Rational> radii{Rational(1, 2), Rational(1), Rational(2)};
    DiagnosticsOptions opts;
    opts.precision_bits = bits_;
    opts.spectrum = options_;
    const SourcePtr l = lognormal_moments(Rational(1));
    const DiagnosticsReport r = diagnose(l, radii, 12, {imaginary_unit_point(1, bits_)}, opts);
    write("diagnose_lognormal.json", diagnostics_json(r, R"({"kind":"lognormal","sigma":"1"})"));
    const bool consistent = r.verdict != "determinate-like" && r.finite_N_only;
    record("lognormal diagnostics: verdict consistent with stabilizing marginal", consistent, r.verdict);

    const SourcePtr delta = atomic_moments(AtomicMeasure1D{{{Rational(1), Rational(1)}}});
    const DiagnosticsReport z = diagnose(delta, radii, 6, {imaginary_unit_point(1, bits_)}, opts);
    write("diagnose_delta1.json", diagnostics_json(z, R"({"kind":"atomic","atoms":[{"location":"1","weight":"1"}]})"));
    record("delta_1 diagnostics: exact zero flagged", z.exact_zero, z.verdict);
  }

  std::filesystem::path dir_;
  unsigned bits_;
  unsigned ceiling_;
  std::mt19937_64 rng_;
  SpectrumOptions options_;
  std::vector<CheckOutcome> outcomes_;
};

}  // namespace

std::vector<CheckOutcome> run_check_suite(const std::filesystem::path& dir, unsigned bits, unsigned ceiling,
                                          std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<CheckOutcome> outcomes = Suite(dir, bits, ceiling, seed).run();
  nlohmann::ordered_json summary;
  summary["precision_bits"] = bits;
  summary["precision_ceiling"] = ceiling;
  summary["seed"] = seed;
  summary["checks"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& o : outcomes) {
    summary["checks"].push_back({{"name", o.name}, {"holds", o.holds}, {"detail", o.detail}});
    all = all && o.holds;
  }
  summary["all_hold"] = all;
  write_atomically(dir / "check_summary.json", summary.dump(2) + "\n");
  return outcomes;
}

}  // namespace momentkernel
