#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "rigged/friedrichs.hpp"
#include "rigged/wavefunction.hpp"

namespace rigged {

struct SurvivalOptions {
  /// Evolution is unitary for every t, but states are prepared at t = 0;
  /// negative times are rejected unless explicitly allowed.
  bool allow_negative_time = false;
  /// Accepted deviation of the trapezoid norm^2 from 1.
  double norm_tolerance = 1e-6;
};

/// Integral of a sampled density times exp(-i E t), treating the density as
/// piecewise linear between nodes and integrating the phase exactly on each
/// panel. Exact at t = 0 (trapezoid rule) and free of phase error at large t.
cplx fourier_density(std::span<const double> grid, std::span<const double> density, double t);
/// Same rule for complex samples.
cplx fourier_density(std::span<const double> grid, std::span<const cplx> values, double t);

/// A(t) = Int |<E|phi>|^2 exp(-i E t) dE / ||phi||^2.
///
/// Throws NotNormalized if ||phi||^2 deviates from 1 by more than the
/// tolerance, NegativeTime for t < 0 unless allowed.
cplx survival_amplitude_exact(const EnergyWavefunction& phi, double t, const SurvivalOptions& opts = {});
std::vector<cplx> survival_amplitude_exact(const EnergyWavefunction& phi, std::span<const double> times,
                                           const SurvivalOptions& opts = {});

struct ContinuationOptions {
  /// Samples within +-window_in_gamma * gamma of E_R feed the rational fit.
  double window_in_gamma = 40.0;
  std::size_t max_samples = 2000;
  double fit_tolerance = 1e-13;
};

/// Coefficient c of the pole term c * exp(-i E_R t) exp(-gamma t / 2) in the
/// survival amplitude of phi: c = -2 pi i Res_{z_R} w(z), where w is the
/// analytic continuation of the normalized density |<E|phi>|^2 obtained from
/// an AAA rational fit of the samples near the resonance.
///
/// Returns 0 when the continuation has no pole near z_R (non-resonant
/// preparation). Throws ContinuationFailure when the fit misbehaves near z_R
/// and NoPoleFound when the pole has zero width.
cplx gamow_coefficient(const ComplexPole& pole, const EnergyWavefunction& phi,
                       const ContinuationOptions& opts = {});
cplx gamow_coefficient(const FriedrichsModel& model, const EnergyWavefunction& phi,
                       const ContinuationOptions& opts = {});

/// Closed-form coefficient for the discrete-state preparation, 1 / eta_II'(z_R).
cplx discrete_state_gamow_coefficient(const FriedrichsModel& model, const ComplexPole& pole);

/// Pole term plus the residual continuum of a prepared state.
struct GamowDecomposition {
  ComplexPole pole;
  cplx gamow_coefficient{};
  /// Normalized density minus the pole density (i c / 2 pi) / (E - z_R).
  EnergyWavefunction background;

  cplx pole_part(double t) const;
};

GamowDecomposition decompose(const FriedrichsModel& model, const EnergyWavefunction& phi,
                             const ContinuationOptions& opts = {});

/// B(t) = A(t) - pole_part(t).
cplx background_amplitude(const FriedrichsModel& model, const EnergyWavefunction& phi, double t,
                          const SurvivalOptions& opts = {});
cplx background_amplitude(const GamowDecomposition& decomposition, const EnergyWavefunction& phi, double t,
                          const SurvivalOptions& opts = {});

/// Background of the discrete-state preparation from the rotated ray
/// z = r exp(-i angle), r in [0, inf): the integral of the continued density
/// lambda^2 f^2 / (eta_II eta_I) times exp(-i z t). The pole must lie inside
/// the rotated sector. Independent of the sampled route; used as a cross-check.
cplx background_amplitude_contour(const FriedrichsModel& model, const ComplexPole& pole, double t,
                                  double angle = 0.5235987755982988);

/// Survival amplitude with its pole/background split at every time.
struct SurvivalSeries {
  std::vector<double> times;
  std::vector<cplx> amplitude;
  std::vector<cplx> pole_part;
  std::vector<cplx> background_part;

  /// max_t |pole + background - amplitude|.
  double reconstruction_residual() const;
};

SurvivalSeries survival_decomposed(const FriedrichsModel& model, const EnergyWavefunction& phi,
                                   std::span<const double> times, const SurvivalOptions& opts = {},
                                   const ContinuationOptions& copts = {});
SurvivalSeries survival_decomposed(const GamowDecomposition& decomposition, const EnergyWavefunction& phi,
                                   std::span<const double> times, const SurvivalOptions& opts = {});

/// Pole-only amplitude, i.e. the survival amplitude with the background dropped.
cplx weisskopf_wigner_amplitude(const FriedrichsModel& model, const EnergyWavefunction& phi, double t);
cplx weisskopf_wigner_amplitude(const GamowDecomposition& decomposition, double t);

struct DeviationReport {
  double gamma_fit = 0.0;            ///< -slope of ln|A|^2 on [0.5/G, 3/G]
  double gamma_fit_rms = 0.0;        ///< rms residual of that fit (in ln|A|^2)
  double short_time_exponent = 0.0;  ///< p in 1 - |A|^2 ~ c t^p on (0, 0.01/G]
  double background_fraction = 0.0;  ///< |B(0) / A(0)|
  std::optional<double> crossover_time;  ///< first t > 0 with |B| > |pole part|
  double gamma_reference = 0.0;      ///< the G used to place the fit windows
};

/// Throws InsufficientSampling unless the series covers [0, 3/G] with at
/// least 100 points, 10 in the fit window and 5 in (0, 0.01/G].
DeviationReport deviation_metrics(const SurvivalSeries& series);

/// Time grid for decay studies: `cluster` log-spaced points on
/// [1e-4/G, 1e-2/G] merged with `n` uniform points on [0, t_max].
std::vector<double> decay_time_grid(double gamma, double t_max, std::size_t n, std::size_t cluster = 40);

}  // namespace rigged
