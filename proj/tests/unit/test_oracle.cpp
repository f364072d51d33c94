#include <gtest/gtest.h>

#include <cmath>

#include "reference_values.hpp"
#include "rigged/error.hpp"
#include "rigged/oracle.hpp"
#include "rigged/spectral.hpp"
#include "test_support.hpp"

using namespace rigged;
using rigged::testing::exp_model;

namespace {

std::vector<double> window(double lo, double hi, std::size_t n) { return uniform_grid(lo, hi, n); }

double fitted_gamma(std::size_t n_levels, double t_hi) {
  const FriedrichsModel m = exp_model(0.1);
  const std::vector<double> t = window(0.0, t_hi, 400);
  const auto a = oracle::oracle_survival(m, n_levels, 40.0, t);
  return oracle::oracle_pole_fit(t, a, 0.5 / reference::kPoleExp1Gamma, t_hi).pole.gamma;
}

}  // namespace

TEST(Oracle, DiscretizationLayout) {
  const oracle::DiscretizedModel dm = oracle::discretize(exp_model(0.1), 400, 40.0);
  EXPECT_DOUBLE_EQ(dm.spacing(), 0.1);
  EXPECT_DOUBLE_EQ(dm.grid.front(), 0.05);
  EXPECT_NEAR(dm.heisenberg_time(), 62.83185307179586, 1e-12);
  EXPECT_THROW(oracle::discretize(exp_model(0.1), 1, 40.0), InvalidArgument);
  EXPECT_THROW(oracle::discretize(exp_model(0.1), 10, 0.0), InvalidArgument);
  EXPECT_THROW(oracle::oracle_survival(exp_model(0.1), 100, 40.0, std::vector<double>{0.0}), InvalidArgument);
}

TEST(Oracle, DecoupledLevelNeverDecays) {
  const std::vector<double> t = window(0.0, 500.0, 50);
  for (cplx a : oracle::oracle_survival(exp_model(0.0), 300, 40.0, t)) EXPECT_NEAR(std::abs(a), 1.0, 1e-12);
}

TEST(Oracle, SpectrumIsOrthonormal) {
  const oracle::Spectrum s = oracle::diagonalize(oracle::discretize(exp_model(0.3), 600, 40.0), true);
  EXPECT_NEAR(s.weight_sum, 1.0, 1e-12);
  EXPECT_LT(s.orthogonality_error, 1e-12);
  EXPECT_TRUE(std::is_sorted(s.energies.begin(), s.energies.end()));
}

TEST(Oracle, SyntheticExponentialIsRecovered) {
  const std::vector<double> t = window(0.0, 100.0, 300);
  std::vector<cplx> a;
  for (double x : t) a.push_back(0.98 * std::exp(cplx(-0.02 * x, -1.3 * x)));
  const oracle::PoleFit f = oracle::oracle_pole_fit(t, a, 10.0, 90.0);
  EXPECT_NEAR(f.pole.gamma, 0.04, 1e-6 * 0.04);
  EXPECT_NEAR(f.pole.e_r, 1.3, 1e-9);
  EXPECT_NEAR(std::abs(f.pole.residue), 0.98, 1e-9);
  EXPECT_LT(f.relative_residual, 1e-9);
}

TEST(Oracle, NonExponentialSeriesIsAPoorFit) {
  const std::vector<double> t = window(0.0, 30.0, 300);
  std::vector<cplx> a;
  for (double x : t) a.push_back(std::exp(-x * x / 100.0));
  EXPECT_THROW(oracle::oracle_pole_fit(t, a, 0.0, 30.0), PoorFit);
  EXPECT_THROW(oracle::oracle_pole_fit(t, a, 40.0, 50.0), PoorFit);
}

TEST(Oracle, WidthConvergesWithLevelCount) {
  // Fit windows stay below the Heisenberg time of the coarsest grid.
  const double t_hi = 0.9 * oracle::discretize(exp_model(0.1), 500, 40.0).heisenberg_time();
  const double g500 = fitted_gamma(500, t_hi);
  const double g1000 = fitted_gamma(1000, t_hi);
  const double g2000 = fitted_gamma(2000, t_hi);
  const double exact = reference::kPoleExp1Gamma;
  EXPECT_LE(std::abs(g2000 - exact), std::abs(g500 - exact) + 1e-9);
  EXPECT_LT(std::abs(g1000 - g2000), 0.01 * exact);
  EXPECT_LT(std::abs(g2000 / exact - 1.0), 0.01);
}

TEST(Oracle, MatchesContinuumSurvivalBelowTheHeisenbergTime) {
  const rigged::testing::Prepared& s = rigged::testing::standard_state();
  const double t_h = oracle::discretize(s.model, 2000, 40.0).heisenberg_time();
  const std::vector<double> t = window(0.0, std::min(5.0 / s.pole.gamma, 0.9 * t_h), 120);
  const auto brute = oracle::oracle_survival(s.model, 2000, 40.0, t);
  const auto exact = survival_amplitude_exact(s.phi, t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_LT(std::abs(brute[i] - exact[i]), 1e-4) << t[i];

  const oracle::PoleFit f = oracle::oracle_pole_fit(t, brute, 0.5 / s.pole.gamma, 3.0 / s.pole.gamma);
  EXPECT_LT(std::abs(f.pole.gamma / s.pole.gamma - 1.0), 1e-3);
  EXPECT_LT(std::abs(f.pole.e_r / s.pole.e_r - 1.0), 1e-4);
}
