#include "relframe/scans.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

using namespace relframe;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoPointHalf = 1.5 - 0.75 * std::log2(3.0);

// Central difference of the closed-form singlet probability.
double finite_difference(const RelativeParams& p, Param wrt, double h = 1e-6) {
  const Range r = param_range(wrt);
  const double x = p.get(wrt);
  const double lo = std::max(r.lo, x - h), hi = std::min(r.hi, x + h);
  return std::abs((p_singlet_closed(p.with(wrt, hi)) - p_singlet_closed(p.with(wrt, lo))) / (hi - lo));
}

}  // namespace

TEST(Sensitivity, MatchesFiniteDifferences) {
  const int n = 30;
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // Interior nodes keep the central stencil inside the ranges.
        const RelativeParams p(kPi / 4 * (i + 0.5) / n, kPi * (j + 0.5) / n, kPi * (k + 0.5) / n);
        for (Param wrt : {Param::Alpha, Param::Theta, Param::Psi}) {
          worst = std::max(worst, std::abs(sensitivity(p, wrt) - finite_difference(p, wrt)));
        }
      }
  EXPECT_LE(worst, 1e-8);
}

TEST(Sensitivity, Cases) {
  for (double t : {0.2, 1.5, 3.0})
    for (double s : {0.0, 0.7, 2.0}) EXPECT_EQ(sensitivity({0, t, s}, Param::Psi), 0.0);
  EXPECT_NEAR(sensitivity({kPi / 4, kPi / 2, 0}, Param::Theta), 0.5, 1e-15);
  EXPECT_NEAR(finite_difference({kPi / 4, kPi / 2, 0}, Param::Theta), 0.5, 1e-9);
}

TEST(Sensitivity, InducedOptimalSettings) {
  const OptimalSetting theta = sensitivity_optimum(Param::Theta);
  EXPECT_EQ(theta.params[1], Param::Psi);
  EXPECT_EQ(theta.values[1], 0.0);

  const OptimalSetting psi = sensitivity_optimum(Param::Psi);
  EXPECT_EQ(psi.params[1], Param::Theta);
  EXPECT_EQ(psi.values[1], kPi);

  const OptimalSetting alpha = sensitivity_optimum(Param::Alpha);
  EXPECT_EQ(alpha.values[0], kPi);
  EXPECT_EQ(alpha.values[1], 0.0);
  // psi0 = pi ties with psi0 = 0.
  EXPECT_NEAR(mean_sensitivity(EncodingScheme::alpha(kPi, kPi)), alpha.avg_gain, 1e-15);

  // psi0 = 0 maximises the theta sensitivity for every alpha0 > 0.
  for (double a0 : {0.1, 0.4, kPi / 4}) {
    const double at_zero = mean_sensitivity(EncodingScheme::theta(a0, 0));
    for (double s0 : {0.3, 1.0, 2.0, kPi}) EXPECT_GT(at_zero, mean_sensitivity(EncodingScheme::theta(a0, s0)));
  }
}

TEST(ScanGrid, Validation) {
  EXPECT_THROW((ScanGrid{Param::Alpha, 0, 0.5, 1}.validate()), InvalidConfiguration);
  EXPECT_THROW((ScanGrid{Param::Alpha, 0.5, 0.1, 4}.validate()), InvalidConfiguration);
  EXPECT_THROW((ScanGrid{Param::Alpha, 0, 1.0, 4}.validate()), InvalidInput);
  const auto nodes = ScanGrid::over(Param::Theta, 5).nodes();
  ASSERT_EQ(nodes.size(), 5u);
  EXPECT_EQ(nodes.front(), 0.0);
  EXPECT_EQ(nodes.back(), kPi);
}

TEST(Scan1d, RejectsMessageAxis) {
  EXPECT_THROW(scan1d(EncodingScheme::theta(0, 0), ScanGrid::over(Param::Theta, 4),
                      PriorModel::default_uniform(Param::Theta)),
               InvalidConfiguration);
}

TEST(Scan1d, ThetaEncodingGrowsWithEntanglement) {
  const ScanResult r = scan1d(EncodingScheme::theta(0, 0), ScanGrid::over(Param::Alpha, 64),
                              PriorModel::default_uniform(Param::Theta));
  ASSERT_EQ(r.axis.size(), r.avg_gain.size());
  for (std::size_t k = 1; k < r.avg_gain.size(); ++k) EXPECT_GE(r.avg_gain[k], r.avg_gain[k - 1]);
  EXPECT_NEAR(r.avg_gain.front(), 0.14116367349688053, 1e-8);
  EXPECT_NEAR(r.avg_gain.back(), 1 / std::numbers::ln2 - 1, 1e-9);
  for (double g : r.avg_gain) EXPECT_LE(g, 1 + 1e-9);
}

TEST(Scan1d, PsiEncodingStartsAtZero) {
  const ScanResult r = scan1d(EncodingScheme::psi(0, kPi), ScanGrid::over(Param::Alpha, 16),
                              PriorModel::default_uniform(Param::Psi));
  EXPECT_LE(std::abs(r.avg_gain.front()), 1e-9);
  for (std::size_t k = 1; k < r.avg_gain.size(); ++k) EXPECT_GT(r.avg_gain[k], r.avg_gain[k - 1]);
}

TEST(Scan1d, AlphaEncodingPeaksAtAntiparallel) {
  const ScanResult r = scan1d(EncodingScheme::alpha(0, 0), ScanGrid::over(Param::Theta, 33),
                              PriorModel::default_uniform(Param::Alpha));
  EXPECT_LE(std::abs(r.avg_gain.front()), 1e-9);
  EXPECT_NEAR(r.avg_gain.back(), 0.126, 5e-4);
  for (double g : r.avg_gain) EXPECT_LE(g, r.avg_gain.back() + 1e-12);
}

TEST(Scan2d, SliceReproducesScan1dExactly) {
  const PriorModel prior = PriorModel::default_uniform(Param::Theta);
  const QuadratureConfig quad{513};
  const ScanGrid alpha = ScanGrid::over(Param::Alpha, 9);
  const ScanGrid psi = ScanGrid::over(Param::Psi, 5);
  const ScanResult2D full = scan2d(EncodingScheme::theta(0, 0), alpha, psi, prior, quad);
  const ScanResult slice = scan1d(EncodingScheme::theta(0, 0), alpha, prior, quad);
  for (int i = 0; i < alpha.n; ++i) EXPECT_EQ(full.avg_gain(i, 0), slice.avg_gain[i]);
}

TEST(Scan2d, KnownNodes) {
  const ScanResult2D psi = scan2d(EncodingScheme::psi(0, 0), ScanGrid::over(Param::Alpha, 5),
                                  ScanGrid::over(Param::Theta, 5), PriorModel::default_discrete(Param::Psi));
  EXPECT_NEAR(psi.avg_gain(4, 4), 1.0, 1e-12);

  const ScanResult2D alpha = scan2d(EncodingScheme::alpha(0, 0), ScanGrid::over(Param::Theta, 5),
                                    ScanGrid::over(Param::Psi, 7), PriorModel::default_uniform(Param::Alpha), {257});
  for (int j = 0; j < 7; ++j) EXPECT_LE(std::abs(alpha.avg_gain(0, j)), 1e-9);
}

TEST(Scan2d, RejectsBadAxes) {
  const PriorModel prior = PriorModel::default_uniform(Param::Theta);
  EXPECT_THROW(scan2d(EncodingScheme::theta(0, 0), ScanGrid::over(Param::Alpha, 3), ScanGrid::over(Param::Alpha, 3), prior),
               InvalidConfiguration);
  EXPECT_THROW(scan2d(EncodingScheme::theta(0, 0), ScanGrid::over(Param::Theta, 3), ScanGrid::over(Param::Psi, 3), prior),
               InvalidConfiguration);
}

TEST(Symmetry, AlphaEncodingPsiReflection) {
  // At theta0 = pi the two settings tie; elsewhere psi0 = pi wins.
  const PriorModel discrete = PriorModel::default_discrete(Param::Alpha);
  EXPECT_NEAR(info_gain(EncodingScheme::alpha(kPi, 0), discrete).avg_gain,
              info_gain(EncodingScheme::alpha(kPi, kPi), discrete).avg_gain, 1e-12);
  for (double t0 : {0.5, 1.5, 2.5}) {
    EXPECT_LT(info_gain(EncodingScheme::alpha(t0, 0), discrete).avg_gain,
              info_gain(EncodingScheme::alpha(t0, kPi), discrete).avg_gain);
  }
  // psi0 in {0, pi} are stationary for both priors.
  const PriorModel uniform = PriorModel::default_uniform(Param::Alpha);
  const QuadratureConfig quad{1025};
  for (const PriorModel& prior : {discrete, uniform}) {
    for (double t0 : {1.0, 2.0, kPi}) {
      for (double s0 : {0.0, kPi}) {
        const double h = 1e-4;
        const double inner = s0 == 0.0 ? h : kPi - h;
        const double at = info_gain(EncodingScheme::alpha(t0, s0), prior, quad).avg_gain;
        const double off = info_gain(EncodingScheme::alpha(t0, inner), prior, quad).avg_gain;
        EXPECT_LT(std::abs(at - off) / h, 1e-3);  // one-sided slope ~ O(h)
      }
    }
  }
}

TEST(OptimizeSetting, KnownOptima) {
  const OptimalSetting theta = optimize_setting(Param::Theta, PriorModel::default_uniform(Param::Theta), {}, 16);
  EXPECT_NEAR(theta.values[0], kPi / 4, 1e-12);
  EXPECT_EQ(theta.values[1], 0.0);
  EXPECT_NEAR(theta.avg_gain, 1 / std::numbers::ln2 - 1, 1e-9);

  const OptimalSetting psi = optimize_setting(Param::Psi, PriorModel::default_discrete(Param::Psi), {}, 16);
  EXPECT_NEAR(psi.values[0], kPi / 4, 1e-12);
  EXPECT_NEAR(psi.values[1], kPi, 1e-12);
  EXPECT_NEAR(psi.avg_gain, 1.0, 1e-12);

  const OptimalSetting alpha = optimize_setting(Param::Alpha, PriorModel::default_discrete(Param::Alpha), {}, 16);
  EXPECT_NEAR(alpha.values[0], kPi, 1e-12);
  EXPECT_EQ(alpha.values[1], 0.0);  // tie with pi goes to the smaller value
  EXPECT_NEAR(alpha.avg_gain, kTwoPointHalf, 1e-12);
}

TEST(OptimizeSetting, ResolutionValidation) {
  EXPECT_THROW(optimize_setting(Param::Theta, PriorModel::default_uniform(Param::Theta), {}, 1), InvalidConfiguration);
}

TEST(TableOne, CoarseReproduction) {
  const TableOneReport t = table_one({1025}, 9);
  EXPECT_NEAR(t.at(PriorKind::Uniform, Param::Theta).best.avg_gain, 0.442, 1e-3);
  EXPECT_NEAR(t.at(PriorKind::Uniform, Param::Psi).best.avg_gain, 0.442, 1e-3);
  EXPECT_NEAR(t.at(PriorKind::Uniform, Param::Alpha).best.avg_gain, 0.126, 1e-3);
  EXPECT_NEAR(t.at(PriorKind::Discrete, Param::Theta).best.avg_gain, 1.0, 1e-12);
  EXPECT_NEAR(t.at(PriorKind::Discrete, Param::Psi).best.avg_gain, 1.0, 1e-12);
  EXPECT_NEAR(t.at(PriorKind::Discrete, Param::Alpha).best.avg_gain, kTwoPointHalf, 1e-12);
  const auto& ua = t.at(PriorKind::Uniform, Param::Alpha);
  ASSERT_TRUE(ua.reflected_psi_gain.has_value());
  EXPECT_NEAR(*ua.reflected_psi_gain, ua.best.avg_gain, 1e-9);
  EXPECT_FALSE(t.at(PriorKind::Uniform, Param::Theta).reflected_psi_gain.has_value());
}
