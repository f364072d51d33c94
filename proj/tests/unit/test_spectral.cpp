#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rigged/error.hpp"
#include "rigged/fit.hpp"
#include "rigged/oracle.hpp"
#include "rigged/spectral.hpp"
#include "test_support.hpp"

using namespace rigged;
using rigged::testing::Prepared;
using rigged::testing::rel_diff;
using rigged::testing::standard_state;

constexpr double kPi = std::numbers::pi;

namespace {

EnergyWavefunction gaussian(double center, double width, double lo, double hi, std::size_t n) {
  const std::vector<double> g = uniform_grid(lo, hi, n);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-0.25 * std::pow((g[i] - center) / width, 2));
  EnergyWavefunction phi(g, std::move(v));
  return phi.scaled(1.0 / std::sqrt(phi.norm_squared()));
}

}  // namespace

TEST(Fourier, FilonIsExactForPiecewiseLinearDensities) {
  // Triangle on [0, 2] peaked at 1: transform 4 sin^2(t/2)/t^2 exp(-i t).
  const std::vector<double> g{0.0, 1.0, 2.0};
  const std::vector<double> d{0.0, 1.0, 0.0};
  for (double t : {0.0, 1e-4, 0.3, 7.0, 400.0}) {
    const cplx exact = t == 0.0 ? cplx(1.0) : 4.0 * std::pow(std::sin(0.5 * t), 2) / (t * t) * std::polar(1.0, -t);
    EXPECT_LT(std::abs(fourier_density(g, d, t) - exact), 1e-14) << t;
  }
}

TEST(Survival, PreconditionsAndUnitarity) {
  const Prepared& s = standard_state();
  EXPECT_LT(std::abs(survival_amplitude_exact(s.phi, 0.0) - 1.0), 1e-6);
  EXPECT_THROW(survival_amplitude_exact(s.phi, -1.0), NegativeTime);
  SurvivalOptions allow;
  allow.allow_negative_time = true;
  const cplx back = survival_amplitude_exact(s.phi, -3.0, allow);
  EXPECT_LT(std::abs(back - std::conj(survival_amplitude_exact(s.phi, 3.0))), 1e-14);
  EXPECT_THROW(survival_amplitude_exact(s.phi.scaled(1.1), 1.0), NotNormalized);
  for (double t : decay_time_grid(s.pole.gamma, 10.0 / s.pole.gamma, 60)) {
    EXPECT_LE(std::abs(survival_amplitude_exact(s.phi, t)), 1.0 + 1e-9);
  }
}

TEST(Survival, AgreesWithOracleAtTwoLifetimes) {
  const Prepared& s = standard_state();
  const std::vector<double> t{2.0 / s.pole.gamma};
  const cplx brute = oracle::oracle_survival(s.model, 2000, 40.0, t)[0];
  EXPECT_LT(rel_diff(survival_amplitude_exact(s.phi, t[0]), brute), 1e-3);
}

TEST(Survival, IntermediateTimeSlopeIsTheWidth) {
  const Prepared& s = standard_state();
  std::vector<double> t, y;
  for (double x = 0.5; x <= 3.0; x += 0.05) {
    t.push_back(x / s.pole.gamma);
    y.push_back(std::log(std::norm(survival_amplitude_exact(s.phi, t.back()))));
  }
  EXPECT_NEAR(-fit::line(t, y).slope / s.pole.gamma, 1.0, 0.02);
}

TEST(Gamow, CoefficientFromSamplesMatchesClosedForm) {
  const Prepared& s = standard_state();
  const cplx closed = discrete_state_gamow_coefficient(s.model, s.pole);
  EXPECT_LT(std::abs(closed - s.pole.residue), 1e-12);
  EXPECT_LT(std::abs(s.decomposition.gamow_coefficient - closed), 1e-5);
  EXPECT_NEAR(std::abs(s.decomposition.gamow_coefficient), 1.0, 0.05);
}

TEST(Gamow, OffResonantPreparationHasNoPoleContent) {
  const Prepared& s = standard_state();
  const EnergyWavefunction far = gaussian(3.0, 0.2, 0.0, 6.0, 6001);
  const cplx c = gamow_coefficient(s.pole, far);
  EXPECT_LT(std::abs(c), 0.05);
  const GamowDecomposition d = decompose(s.model, far);
  const auto times = decay_time_grid(s.pole.gamma, 3.0 / s.pole.gamma, 50);
  EXPECT_LT(survival_decomposed(d, far, times).reconstruction_residual(), 1e-12);
}

TEST(Gamow, UncoupledModelHasNoPole) {
  const FriedrichsModel m = rigged::testing::exp_model(0.0);
  const EnergyWavefunction g = gaussian(1.0, 0.1, 0.0, 2.0, 801);
  EXPECT_THROW(gamow_coefficient(m, g), NoPoleFound);
}

TEST(Gamow, PolePartMatchesOracleInTheExponentialWindow) {
  const Prepared& s = standard_state();
  std::vector<double> t;
  for (double x = 1.0; x <= 3.0; x += 0.25) t.push_back(x / s.pole.gamma);
  const auto brute = oracle::oracle_survival(s.model, 2000, 40.0, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_LT(rel_diff(s.decomposition.pole_part(t[i]), brute[i]), 1e-3) << t[i];
  }
}

TEST(Background, SubtractionAgreesWithRotatedContour) {
  const Prepared& s = standard_state();
  for (double tg : {0.0, 0.5, 1.0, 3.0}) {
    const double t = tg / s.pole.gamma;
    const cplx sub = background_amplitude(s.decomposition, s.phi, t);
    const cplx ray = background_amplitude_contour(s.model, s.pole, t);
    EXPECT_LT(std::abs(sub - ray), 1e-4 * std::abs(ray) + 1e-6) << t;
  }
  const cplx b0 = background_amplitude(s.decomposition, s.phi, 0.0);
  EXPECT_LT(std::abs(b0 - (1.0 - s.decomposition.gamow_coefficient)), 1e-6);
  EXPECT_LT(std::abs(b0), 0.05);
  EXPECT_THROW(background_amplitude_contour(s.model, s.pole, -1.0), NegativeTime);
}

TEST(Background, IsNotExponential) {
  const Prepared& s = standard_state();
  std::vector<double> t, lb, lp;
  for (double x = 0.5; x <= 3.0; x += 0.05) {
    t.push_back(x / s.pole.gamma);
    lb.push_back(std::log(std::abs(background_amplitude_contour(s.model, s.pole, t.back()))));
    lp.push_back(std::log(std::abs(s.decomposition.pole_part(t.back()))));
  }
  const double rb = fit::line(t, lb).rms_residual;
  const double rp = fit::line(t, lp).rms_residual;
  EXPECT_GT(rb, 10.0 * rp + 1e-3);
}

TEST(Background, PowerLawTailOvertakesThePoleAtStrongerCoupling) {
  const FriedrichsModel m = rigged::testing::exp_model(0.3);
  const ComplexPole p = find_resonance_pole(m);
  const cplx c = discrete_state_gamow_coefficient(m, p);
  const double t = 40.0 / p.gamma;
  EXPECT_GT(std::abs(background_amplitude_contour(m, p, t)), std::abs(c * std::exp(-0.5 * p.gamma * t)));
}

TEST(Decomposition, ReconstructionAndDeviationMetrics) {
  const Prepared& s = standard_state();
  const auto times = decay_time_grid(s.pole.gamma, 5.0 / s.pole.gamma, 200);
  const SurvivalSeries series = survival_decomposed(s.decomposition, s.phi, times);
  EXPECT_LT(series.reconstruction_residual(), 1e-6);
  EXPECT_LT(std::abs(series.amplitude[0] - 1.0), 1e-6);

  const DeviationReport r = deviation_metrics(series);
  EXPECT_NEAR(r.gamma_fit / s.pole.gamma, 1.0, 0.02);
  EXPECT_NEAR(r.short_time_exponent, 2.0, 0.1);
  EXPECT_NEAR(r.background_fraction, std::abs(1.0 - s.decomposition.gamow_coefficient), 1e-6);
  EXPECT_FALSE(r.crossover_time.has_value());

  const SurvivalSeries one = survival_decomposed(s.decomposition, s.phi, std::vector<double>{0.0});
  EXPECT_LT(std::abs(one.pole_part[0] + one.background_part[0] - 1.0), 1e-6);
}

TEST(Decomposition, SyntheticExponentialRecoversItsGenerator) {
  SurvivalSeries s;
  s.times = decay_time_grid(0.05, 100.0, 200);
  for (double t : s.times) {
    s.amplitude.push_back(std::exp(cplx(-0.025 * t, -t)));
    s.pole_part.push_back(s.amplitude.back());
    s.background_part.emplace_back();
  }
  const DeviationReport r = deviation_metrics(s);
  EXPECT_NEAR(r.gamma_fit, 0.05, 1e-6 * 0.05);
  EXPECT_EQ(r.background_fraction, 0.0);
  SurvivalSeries short_series = s;
  short_series.times.resize(50);
  short_series.amplitude.resize(50);
  short_series.pole_part.resize(50);
  short_series.background_part.resize(50);
  EXPECT_THROW(deviation_metrics(short_series), InsufficientSampling);
}

TEST(WeisskopfWigner, IsThePoleTerm) {
  const Prepared& s = standard_state();
  EXPECT_EQ(weisskopf_wigner_amplitude(s.decomposition, 0.0), s.decomposition.gamow_coefficient);
  const double t = 2.0 / s.pole.gamma;
  const double expected = std::norm(s.decomposition.gamow_coefficient) * std::exp(-s.pole.gamma * t);
  EXPECT_NEAR(std::norm(weisskopf_wigner_amplitude(s.decomposition, t)), expected, 1e-14);
  for (double x = 0.5; x <= 3.0; x += 0.1) {
    const double tt = x / s.pole.gamma;
    EXPECT_LT(rel_diff(weisskopf_wigner_amplitude(s.decomposition, tt), survival_amplitude_exact(s.phi, tt)), 0.02);
  }
}

TEST(BreitWigner, DensityIsLorentzianAroundThePole) {
  const Prepared& s = standard_state();
  std::vector<double> e = uniform_grid(s.pole.e_r - 10 * s.pole.gamma, s.pole.e_r + 10 * s.pole.gamma, 801);
  std::vector<double> d;
  for (double x : e) d.push_back(spectral_density(s.model, x));
  const fit::LorentzianFit f = fit::lorentzian(e, d);
  EXPECT_NEAR(f.fwhm / s.pole.gamma, 1.0, 0.02);
  EXPECT_NEAR(f.center / s.pole.e_r, 1.0, 0.005);
  EXPECT_NEAR(f.peak, 2.0 / (kPi * s.pole.gamma), 0.05 * f.peak);
}
