#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rigged/error.hpp"
#include "rigged/hardy.hpp"

using namespace rigged;

namespace {

EnergyWavefunction lorentzian(double sign, double lo = -200.0, double hi = 200.0, std::size_t n = 40001) {
  const std::vector<double> g = uniform_grid(lo, hi, n);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / cplx(g[i], -sign);
  return {g, std::move(v)};
}

EnergyWavefunction gaussian(double lo, double hi, std::size_t n) {
  const std::vector<double> g = uniform_grid(lo, hi, n);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-0.5 * g[i] * g[i]);
  return {g, std::move(v)};
}

double max_abs_diff(const EnergyWavefunction& a, const EnergyWavefunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST(TimeProfile, GaussianTransform) {
  const EnergyWavefunction phi = gaussian(-12.0, 12.0, 4801);
  const std::vector<double> t{-3.0, -0.5, 0.0, 1.0, 4.0};
  const TimeProfile p = time_profile(phi, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double exact = std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * t[i] * t[i]);
    EXPECT_LT(std::abs(p.values[i] - exact), 1e-4) << t[i];
  }
  const std::vector<double> coarse_window{0.0, 1000.0};
  EXPECT_THROW(time_profile(phi, coarse_window), AliasRisk);
}

TEST(TimeProfile, LorentzianSupportIsOneSided) {
  const EnergyWavefunction lower = lorentzian(+1.0);
  const std::vector<double> t{-2.0, 2.0};
  const TimeProfile p = time_profile(lower, t);
  // 1/(E - i) transforms to 2 pi i exp(-|t|) on t < 0, zero for t > 0.
  EXPECT_NEAR(std::abs(p.values[0]), 2.0 * std::numbers::pi * std::exp(-2.0), 0.02);
  EXPECT_LT(std::abs(p.values[1]), 0.02);
}

TEST(HardyScores, LorentziansAreClassifiedByTheirHalfPlane) {
  const HardyScores lower = hardy_scores(lorentzian(+1.0));
  EXPECT_GE(lower.lower_fraction, 0.99);
  EXPECT_EQ(lower.classification(), HardyClass::kStateLike);
  const HardyScores upper = hardy_scores(lorentzian(-1.0));
  EXPECT_GE(upper.upper_fraction, 0.99);
  EXPECT_EQ(upper.classification(), HardyClass::kObservableLike);
  EXPECT_NEAR(lower.lower_fraction, upper.upper_fraction, 1e-12);
  EXPECT_NEAR(lower.upper_fraction + lower.lower_fraction, 1.0, 1e-12);
}

TEST(HardyScores, RealGaussianIsMixed) {
  const HardyScores s = hardy_scores(gaussian(-10.0, 10.0, 2001));
  EXPECT_NEAR(s.upper_fraction, 0.5, 1e-9);
  EXPECT_NEAR(s.lower_fraction, 0.5, 1e-9);
  EXPECT_EQ(s.classification(), HardyClass::kMixed);
  EXPECT_EQ(to_string(s.classification()), "mixed");
}

TEST(HardyScores, RejectsDegenerateInput) {
  const std::vector<double> g = uniform_grid(0.0, 1.0, 64);
  EXPECT_THROW(hardy_scores(EnergyWavefunction(g, std::vector<cplx>(64))), InvalidArgument);
  std::vector<double> bent = g;
  bent[10] += 0.001;
  EXPECT_THROW(hardy_scores(EnergyWavefunction(bent, std::vector<cplx>(64, 1.0))), InvalidGrid);
  // A Lorentzian far narrower than the step leaks into the whole time window.
  EXPECT_THROW(hardy_split(lorentzian(+1e-3, -5.0, 5.0, 101)), AliasRisk);
}

TEST(HardySplit, PartsAddUpAndProjectionIsIdempotent) {
  // Physical support [0, 20]; a function that is smooth at threshold (a
  // sharp edge there would put slowly decaying tails into the time window).
  const std::vector<double> g = uniform_grid(0.0, 20.0, 2001);
  std::vector<cplx> v;
  for (double e : g) v.push_back(std::exp(cplx(-0.5 * (e - 6.0) * (e - 6.0), 0.3 * e)));
  const EnergyWavefunction phi(g, v);
  const EnergyWavefunction padded = pad_symmetric(phi);
  EXPECT_NEAR(padded.grid().front(), -20.0, 0.005);
  EXPECT_NEAR(padded.grid().back(), 20.0, 0.005);
  EXPECT_TRUE(padded.is_uniform());

  const HardySplit s = hardy_split(phi);
  EXPECT_EQ(s.padded_samples, padded.size() - phi.size());
  const EnergyWavefunction sum = combine(1.0, s.upper, 1.0, s.lower);
  EXPECT_LT(max_abs_diff(sum, padded), 1e-12);

  const HardySplit again = hardy_split(s.lower);
  EXPECT_EQ(again.padded_samples, 0u);
  EXPECT_LT(max_abs_diff(again.lower, s.lower), 1e-10);
  EXPECT_LT(std::sqrt(again.upper.norm_squared()), 1e-10);
}

TEST(HardySplit, SharpThresholdEdgeIsAnAliasRisk) {
  EXPECT_THROW(hardy_split(lorentzian(+1.0, 0.0, 200.0, 20001)), AliasRisk);
}

TEST(HardySplit, PaddingIsStableOnSymmetricGrids) {
  const EnergyWavefunction phi = gaussian(-10.0, 10.0, 2001);
  EXPECT_EQ(pad_symmetric(phi).size(), phi.size());
}
