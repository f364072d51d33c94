#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rigged/error.hpp"
#include "rigged/quadrature.hpp"
#include "rigged/wavefunction.hpp"

using namespace rigged;

TEST(Quadrature, PolynomialsAreExact) {
  const double v = quad::integrate_real([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
  EXPECT_NEAR(v, 9.0 - 3.0 + 3.0, 1e-14);
}

TEST(Quadrature, SmoothTranscendental) {
  EXPECT_NEAR(quad::integrate_real([](double x) { return std::exp(-x); }, 0.0, 40.0), 1.0 - std::exp(-40.0), 1e-14);
  EXPECT_NEAR(quad::integrate_real([](double x) { return std::sqrt(x); }, 0.0, 1.0), 2.0 / 3.0, 1e-12);
}

TEST(Quadrature, ComplexOscillatoryIntegrand) {
  // int_0^10 exp(i 7 x) dx
  const quad::Result r = quad::integrate([](double x) { return std::polar(1.0, 7.0 * x); }, 0.0, 10.0);
  const std::complex<double> exact = (std::polar(1.0, 70.0) - 1.0) / std::complex<double>(0.0, 7.0);
  EXPECT_LT(std::abs(r.value - exact), 1e-13);
  EXPECT_GT(r.intervals, 1u);
}

TEST(Quadrature, BreakpointsResolveNarrowFeatures) {
  // Lorentzian of width 1e-6 at 0.3: bisection alone would never see it.
  const double w = 1e-6;
  auto f = [w](double x) { return std::complex<double>(w / ((x - 0.3) * (x - 0.3) + w * w), 0.0); };
  const std::vector<double> breaks{0.3 - 10 * w, 0.3, 0.3 + 10 * w};
  const double exact = std::atan(0.7 / w) + std::atan(0.3 / w);
  EXPECT_NEAR(quad::integrate(f, 0.0, 1.0, {}, breaks).value.real(), exact, 1e-10);
}

TEST(Quadrature, RepeatedCallsAreBitIdentical) {
  auto f = [](double x) { return std::complex<double>(std::cos(30 * x) / (1 + x * x), std::sin(x)); };
  const auto a = quad::integrate(f, 0.0, 20.0).value;
  const auto b = quad::integrate(f, 0.0, 20.0).value;
  EXPECT_EQ(a, b);
}

TEST(Quadrature, ExhaustedBudgetThrows) {
  quad::Options o;
  o.max_intervals = 3;
  EXPECT_THROW(quad::integrate_real([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, o),
               QuadratureFailure);
  EXPECT_THROW(quad::integrate_real([](double) { return 1.0; }, 0.0, INFINITY), QuadratureFailure);
}

TEST(Wavefunction, RejectsBadGrids) {
  EXPECT_THROW(EnergyWavefunction({0, 1, 2}, {1, 1, 1}), InvalidGrid);
  std::vector<double> g = uniform_grid(0, 1, 10);
  std::vector<cplx> v(10, 1.0);
  g[4] = g[3];
  EXPECT_THROW(EnergyWavefunction(g, v), InvalidGrid);
  EXPECT_THROW(EnergyWavefunction(uniform_grid(0, 1, 10), std::vector<cplx>(9, 1.0)), InvalidGrid);
  v[2] = NAN;
  EXPECT_THROW(EnergyWavefunction(uniform_grid(0, 1, 10), v), InvalidGrid);
}

TEST(Wavefunction, TrapezoidNormAndUniformity) {
  std::vector<cplx> v(101, cplx(0.0, 1.0));
  const EnergyWavefunction phi(uniform_grid(0.0, 2.0, 101), v);
  EXPECT_NEAR(phi.norm_squared(), 2.0, 1e-14);
  EXPECT_TRUE(phi.is_uniform());
  EXPECT_NEAR(phi.scaled(2.0).norm_squared(), 8.0, 1e-13);
}

TEST(Wavefunction, MergeAndResample) {
  const std::vector<double> a{0.0, 1.0, 2.0};
  const std::vector<double> b{0.5, 1.0 + 1e-14, 3.0};
  EXPECT_EQ(merge_grids(a, b), (std::vector<double>{0.0, 0.5, 1.0, 2.0, 3.0}));

  std::vector<cplx> v;
  const std::vector<double> g = uniform_grid(0.0, 1.0, 11);
  for (double x : g) v.emplace_back(2 * x + 1, -x);
  const EnergyWavefunction r = resample_uniform(EnergyWavefunction(g, v), -0.5, 1.5, 21);
  EXPECT_EQ(r.values()[0], cplx{});                    // outside the support
  EXPECT_NEAR(std::abs(r.values()[8] - cplx(1.6, -0.3)), 0.0, 1e-14);  // x = 0.3, linear data reproduced
}
