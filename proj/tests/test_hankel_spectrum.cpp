#include <gtest/gtest.h>

#include <random>

#include "momentkernel/hankel_spectrum.hpp"
#include "momentkernel/precision.hpp"
#include "oracles.hpp"

using namespace momentkernel;

namespace {

SourcePtr delta(int at) { return atomic_moments(AtomicMeasure1D{{{Rational(at), Rational(1)}}}); }

SourcePtr two_point() {
  return atomic_moments(AtomicMeasure1D{{{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}}});
}

SourcePtr three_point() {
  return atomic_moments(AtomicMeasure1D{
      {{Rational(-2), Rational(1, 4)}, {Rational(1, 3), Rational(1, 2)}, {Rational(3), Rational(1, 4)}}});
}

Matrix<Rational> rational_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix<Rational> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Real distance(const Real& a, const Real& b) { return abs(a - b); }

}  // namespace

TEST(Assemble, Examples) {
  const auto g = gaussian_moments();
  EXPECT_EQ(*assemble(g, Rational(1), 1).exact_entries, rational_matrix({{1, 0}, {0, 1}}));
  EXPECT_EQ(*assemble(g, Rational(1), 2).exact_entries, rational_matrix({{1, 0, 1}, {0, 1, 0}, {1, 0, 3}}));
  EXPECT_EQ(*assemble(delta(1), Rational(1), 2).exact_entries, rational_matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  EXPECT_THROW(assemble(g, Rational(0), 2), MomentError);
  EXPECT_THROW(assemble(g, Rational(-1), 2), MomentError);
}

TEST(Assemble, FloatModeHasNoExactEntries) {
  const auto h = assemble(lognormal_moments(Rational(1)), Rational(1), 2, 128);
  EXPECT_FALSE(h.is_exact());
  EXPECT_EQ(h.size(), 3);
  EXPECT_EQ(h.entries(0, 0), 1);
}

TEST(Assemble, ScaledEntries) {
  const auto h = assemble(gaussian_moments(), Rational(2), 2);
  EXPECT_EQ((*h.exact_entries)(2, 2), Rational(3, 16));
  EXPECT_EQ((*h.exact_entries)(0, 2), Rational(1, 4));
}

TEST(Marginal, Examples) {
  const auto g = gaussian_moments();
  const auto gl = product({g, lognormal_moments(Rational(1))});
  const auto j1 = assemble_marginal(gl, 1, 2, Rational(1), 256);
  const Matrix<Real> want = rational_matrix({{1, 0, 1}, {0, 1, 0}, {1, 0, 3}}).cast<Real>();
  EXPECT_EQ(j1.entries, want);
  PrecisionScope scope(256);
  const auto j2 = assemble_marginal(gl, 2, 1, Rational(1), 256);
  ASSERT_EQ(j2.size(), 2);
  EXPECT_LT(distance(j2.entries(0, 1), exp(Real(1) / 2)), Real("1e-70"));
  EXPECT_LT(distance(j2.entries(1, 1), exp(Real(2))), Real("1e-70"));
  EXPECT_THROW(assemble_marginal(gl, 3, 2), MomentError);
  EXPECT_THROW(assemble_marginal(gl, 0, 2), MomentError);
}

TEST(Marginal, IsPrincipalSubmatrix) {
  const auto src = product({gaussian_moments(), three_point(), two_point()});
  const int n = 3;
  const auto full = assemble(src, Rational(1), n);
  for (int j = 1; j <= 3; ++j) {
    const auto m = assemble_marginal(src, j, n);
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        const auto ra = static_cast<Eigen::Index>(full.order.rank(MultiIndex::axis(3, j - 1, a)));
        const auto rb = static_cast<Eigen::Index>(full.order.rank(MultiIndex::axis(3, j - 1, b)));
        EXPECT_EQ((*m.exact_entries)(a, b), (*full.exact_entries)(ra, rb));
      }
    }
  }
}

TEST(Spectrum, Examples) {
  const auto g = gaussian_moments();
  const auto s1 = spectrum(assemble(g, Rational(1), 1));
  ASSERT_EQ(s1.eigenvalues.size(), 2u);
  EXPECT_LT(distance(s1.eigenvalues[0], Real(1)), Real("1e-70"));
  EXPECT_LT(distance(s1.eigenvalues[1], Real(1)), Real("1e-70"));

  PrecisionScope scope(256);
  const auto s2 = spectrum(assemble(g, Rational(1), 2));
  const Real r2 = sqrt(Real(2));
  EXPECT_LT(distance(s2.lambda_min, 2 - r2), Real("1e-70"));
  EXPECT_LT(distance(s2.eigenvalues[1], Real(1)), Real("1e-70"));
  EXPECT_LT(distance(s2.eigenvalues[2], 2 + r2), Real("1e-70"));

  const auto s3 = spectrum(assemble(delta(1), Rational(1), 2));
  EXPECT_EQ(s3.lambda_min, 0);
  EXPECT_EQ(s3.eigenvalues[1], 0);
  EXPECT_LT(distance(s3.eigenvalues[2], Real(3)), Real("1e-70"));
  EXPECT_EQ(s3.exact_zero_count, 2);
  EXPECT_EQ(s3.exact_rank, 1);
}

// Newton's identities turn exact power traces into the characteristic
// polynomial; its value at each computed eigenvalue must vanish.
TEST(Spectrum, MatchesCharacteristicPolynomialOracle) {
  const std::vector<SourcePtr> sources{gaussian_moments(), two_point(), three_point(),
                                       product({gaussian_moments(), two_point()})};
  PrecisionScope scope(256);
  for (const auto& src : sources) {
    for (const Rational& r : {Rational(1, 2), Rational(1), Rational(2)}) {
      for (int n = 0; n <= 3; ++n) {
        const auto h = assemble(src, r, n);
        if (h.size() > 4) continue;
        const Matrix<Rational>& a = *h.exact_entries;
        const auto p = oracle::power_traces(a);
        const auto m = static_cast<std::size_t>(a.rows());
        // e_k from p_k; char poly t^m - e1 t^{m-1} + e2 t^{m-2} - ...
        std::vector<Rational> e(m + 1, Rational(0));
        e[0] = 1;
        for (std::size_t k = 1; k <= m; ++k) {
          Rational acc = 0;
          for (std::size_t i = 1; i <= k; ++i) {
            const Rational term = e[k - i] * p[i - 1];
            acc += (i % 2 == 1) ? term : Rational(-term);
          }
          e[k] = acc / Rational(static_cast<long>(k));
        }
        EXPECT_EQ(e[m], oracle::det(a));
        const auto s = spectrum(h);
        Real trace = 0;
        for (const auto& ev : s.eigenvalues) trace += ev;
        EXPECT_LT(distance(trace, Real(p[0])), Real("1e-60"));
        for (const auto& lambda : s.eigenvalues) {
          Real value = 0;
          for (std::size_t k = 0; k <= m; ++k) {
            Real term = Real(e[k]) * pow(lambda, static_cast<int>(m - k));
            value += (k % 2 == 0) ? term : Real(-term);
          }
          Real scale = 1;
          for (std::size_t k = 0; k <= m; ++k) scale += abs(Real(e[k])) * pow(abs(lambda) + 1, static_cast<int>(m - k));
          EXPECT_LT(abs(value) / scale, Real("1e-60")) << src->description() << " N=" << n;
        }
      }
    }
  }
}

TEST(EigenSequence, Examples) {
  PrecisionScope scope(256);
  const auto g = eigen_sequence(gaussian_moments(), Rational(1), 2);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_LT(distance(g[0].spectrum.lambda_min, Real(1)), Real("1e-70"));
  EXPECT_LT(distance(g[1].spectrum.lambda_min, Real(1)), Real("1e-70"));
  EXPECT_LT(distance(g[2].spectrum.lambda_min, 2 - sqrt(Real(2))), Real("1e-70"));
  EXPECT_EQ(g[2].matrix_size, 3);

  const auto t = eigen_sequence(two_point(), Rational(1), 2);
  EXPECT_LT(distance(t[0].spectrum.lambda_min, Real(1)), Real("1e-70"));
  EXPECT_LT(distance(t[1].spectrum.lambda_min, Real(1)), Real("1e-70"));
  EXPECT_EQ(t[2].spectrum.lambda_min, 0);
  EXPECT_TRUE(t[2].spectrum.lambda_min_is_exact_zero());

  const auto d = eigen_sequence(delta(1), Rational(1), 3);
  EXPECT_EQ(d[0].spectrum.lambda_min, 1);
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(d[static_cast<std::size_t>(n)].spectrum.lambda_min_is_exact_zero());
}

TEST(EigenSequence, ZeroIsAbsorbing) {
  const auto seq = eigen_sequence(three_point(), Rational(1), 6);
  bool zero = false;
  for (const auto& e : seq) {
    if (zero) {
      EXPECT_TRUE(e.spectrum.lambda_min_is_exact_zero()) << e.degree;
    }
    zero = zero || e.spectrum.lambda_min_is_exact_zero();
  }
  EXPECT_TRUE(zero);
  EXPECT_FALSE(seq[2].spectrum.lambda_min_is_exact_zero());
  EXPECT_TRUE(seq[3].spectrum.lambda_min_is_exact_zero());
}

TEST(RankKernel, Examples) {
  const auto g = rank_and_kernel(assemble(gaussian_moments(), Rational(1), 2));
  EXPECT_EQ(g.rank, 3);
  EXPECT_TRUE(g.kernel.empty());

  const auto d = rank_and_kernel(assemble(delta(1), Rational(1), 1));
  EXPECT_EQ(d.rank, 1);
  ASSERT_EQ(d.kernel.size(), 1u);
  EXPECT_EQ(d.kernel[0], (Vector<Rational>(2) << -1, 1).finished());

  const auto t = rank_and_kernel(assemble(two_point(), Rational(1), 2));
  EXPECT_EQ(t.rank, 2);
  ASSERT_EQ(t.kernel.size(), 1u);
  EXPECT_EQ(t.kernel[0], (Vector<Rational>(3) << -1, 0, 1).finished());
}

TEST(RankKernel, KernelVectorsAnnihilateTheFunctional) {
  const auto src = product({two_point(), three_point()});
  const auto h = assemble(src, Rational(1), 3);
  const auto rk = rank_and_kernel(h);
  EXPECT_EQ(rk.rank, 6);
  ASSERT_FALSE(rk.kernel.empty());
  for (const auto& v : rk.kernel) {
    Polynomial<Rational> p;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (v(k) != 0) p[h.order[static_cast<std::size_t>(k)]] = v(k);
    }
    EXPECT_EQ(hermitian_square(*src, p), 0);
  }
}

TEST(RankKernel, RefusedInFloatMode) {
  EXPECT_THROW(rank_and_kernel(assemble(lognormal_moments(Rational(1)), Rational(1), 2, 128)), MomentError);
}

TEST(Properties, HankelStructure) {
  const std::vector<SourcePtr> sources{gaussian_moments(), three_point(), product({gaussian_moments(), three_point()}),
                                       product({two_point(), gaussian_moments()})};
  for (const auto& src : sources) {
    for (int n = 0; n <= 6; ++n) {
      const auto h = assemble(src, Rational(1), n);
      const Matrix<Rational>& a = *h.exact_entries;
      std::map<MultiIndex, Rational> seen;
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          EXPECT_EQ(a(i, j), a(j, i));
          const MultiIndex sum = h.order[static_cast<std::size_t>(i)] + h.order[static_cast<std::size_t>(j)];
          const auto [it, inserted] = seen.emplace(sum, a(i, j));
          if (!inserted) {
            EXPECT_EQ(it->second, a(i, j));
          }
        }
      }
    }
  }
}

TEST(Properties, InterlacingOneDimensional) {
  const std::vector<SourcePtr> sources{gaussian_moments(), lognormal_moments(Rational(1)), three_point()};
  for (const auto& src : sources) {
    for (const Rational& r : {Rational(1, 2), Rational(1), Rational(2)}) {
      const auto seq = eigen_sequence(src, r, 10);
      for (std::size_t n = 1; n < seq.size(); ++n) {
        const auto& prev = seq[n - 1].spectrum;
        const auto& cur = seq[n].spectrum;
        EXPECT_LE(cur.lambda_min, prev.lambda_min + prev.absolute_residual + cur.absolute_residual)
            << src->description() << " R=" << r << " N=" << n;
      }
    }
  }
}

TEST(Properties, InterlacingTwoDimensional) {
  const auto g = gaussian_moments();
  const std::vector<SourcePtr> sources{product({g, g}), product({g, lognormal_moments(Rational(1))})};
  for (const auto& src : sources) {
    for (const Rational& r : {Rational(1, 2), Rational(1), Rational(2)}) {
      const auto seq = eigen_sequence(src, r, 6);
      for (std::size_t n = 1; n < seq.size(); ++n) {
        const auto& prev = seq[n - 1].spectrum;
        const auto& cur = seq[n].spectrum;
        EXPECT_LE(cur.lambda_min, prev.lambda_min + prev.absolute_residual + cur.absolute_residual);
      }
    }
  }
}

TEST(Properties, CompressionBound) {
  const auto g = gaussian_moments();
  const auto l = lognormal_moments(Rational(1));
  for (const auto& src : {product({g, l}), product({g, g}), product({l, g})}) {
    for (int n = 1; n <= 5; ++n) {
      const auto full = spectrum(assemble(src, Rational(1), n));
      for (int j = 1; j <= 2; ++j) {
        const auto eta = spectrum(assemble_marginal(src, j, n));
        EXPECT_LE(full.lambda_min, eta.lambda_min + full.absolute_residual + eta.absolute_residual);
      }
    }
  }
}

TEST(Properties, ScalingPositivityTransfer) {
  const std::vector<SourcePtr> sources{gaussian_moments(), three_point(), two_point(),
                                       product({two_point(), gaussian_moments()})};
  const std::vector<Rational> radii{Rational(1, 2), Rational(1), Rational(2)};
  for (const auto& src : sources) {
    for (int n = 0; n <= 4; ++n) {
      std::vector<int> ranks;
      for (const auto& r : radii) ranks.push_back(rank_and_kernel(assemble(src, r, n)).rank);
      EXPECT_EQ(ranks[0], ranks[1]);
      EXPECT_EQ(ranks[1], ranks[2]);
      const bool positive = ranks[0] == static_cast<int>(assemble(src, Rational(1), n).size());
      for (const auto& r : radii) {
        const auto s = spectrum(assemble(src, r, n));
        EXPECT_EQ(s.lambda_min > 0, positive);
      }
    }
  }
}

TEST(Properties, RayleighConsistency) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  PrecisionScope scope(256);
  const auto g = gaussian_moments();
  for (const auto& src : {g, lognormal_moments(Rational(1)), product({g, g})}) {
    const auto h = assemble(src, Rational(1), 4);
    const auto s = spectrum(h);
    for (int trial = 0; trial < 100; ++trial) {
      Vector<Real> v(h.size());
      for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = normal(rng);
      v /= v.norm();
      const Real q = v.dot(h.entries * v);
      EXPECT_GE(q, s.lambda_min - s.absolute_residual);
    }
  }
}

TEST(Properties, SpectrumCertificate) {
  const auto s = spectrum(assemble(lognormal_moments(Rational(1)), Rational(1), 8));
  EXPECT_GT(s.lambda_min, 10 * s.absolute_residual);
  for (const auto& e : s.eigenvalues) EXPECT_GE(e, -s.absolute_residual);
  for (std::size_t k = 1; k < s.eigenvalues.size(); ++k) EXPECT_LE(s.eigenvalues[k - 1], s.eigenvalues[k]);
  EXPECT_EQ(s.lambda_min, s.eigenvalues.front());
}

TEST(Properties, Deterministic) {
  const auto h = assemble(lognormal_moments(Rational(1)), Rational(1), 6);
  const auto a = spectrum(h);
  const auto b = spectrum(h);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.residual_bound, b.residual_bound);
}

TEST(Escalation, RaisesPrecisionForIllConditionedMatrices) {
  const auto s = spectrum(assemble(lognormal_moments(Rational(1)), Rational(1), 12, 64));
  EXPECT_GT(s.precision_bits, 64u);
  EXPECT_GT(s.lambda_min, 10 * s.absolute_residual);
}

TEST(Escalation, CeilingRaisesPrecisionError) {
  SpectrumOptions options;
  options.precision_ceiling = 64;
  EXPECT_THROW(spectrum(assemble(lognormal_moments(Rational(1)), Rational(1), 12, 64), options), PrecisionError);
}
