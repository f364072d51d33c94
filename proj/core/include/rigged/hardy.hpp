#pragma once

// Hardy-class diagnostics through time support. With the transform
//
//   G(t) = Int phi(E) exp(-i E t) dE,
//
// boundary values of functions analytic in the lower half-plane (e.g.
// 1/(E - i)) have G supported on t < 0, and those analytic in the upper
// half-plane on t >= 0 (Paley-Wiener). States of the preparation arrow are
// lower-class (t < 0 support), observables upper-class (t >= 0 support).

#include <span>
#include <string>
#include <vector>

#include "rigged/wavefunction.hpp"

namespace rigged {

struct TimeProfile {
  std::vector<double> times;
  std::vector<cplx> values;

  /// (1 / 2 pi) Int |G(t)|^2 dt by the trapezoid rule; equals the energy
  /// norm^2 of the source when the times cover the support of G.
  double energy() const;
};

/// G(t) at each requested time by exact-phase piecewise-linear quadrature.
/// Throws AliasRisk if some |t| exceeds the Nyquist time pi / max spacing.
TimeProfile time_profile(const EnergyWavefunction& phi, std::span<const double> times);

/// Zero-pads a uniform wavefunction so that its grid covers [-L, L]
/// (to within half a step) with L = max(|E_min|, |E_max|). Physical states live
/// on E >= 0 and the transform needs the whole line. Throws InvalidGrid for
/// non-uniform grids.
EnergyWavefunction pad_symmetric(const EnergyWavefunction& phi);

struct HardySplit {
  EnergyWavefunction upper;  ///< time profile supported on t >= 0
  EnergyWavefunction lower;  ///< time profile supported on t < 0
  std::size_t padded_samples = 0;  ///< zeros added by pad_symmetric
};

/// Projects phi onto the two time half-lines with a discrete Fourier
/// transform on the symmetrically padded grid; both parts are returned on
/// that grid, so upper + lower reproduces the padded phi and splitting
/// either part again is idempotent.
///
/// Throws InvalidGrid for non-uniform grids and AliasRisk when more than
/// 1e-4 of the time-domain energy sits in the outer quarter of the
/// resolvable time window (the grid is too coarse for the function).
HardySplit hardy_split(const EnergyWavefunction& phi);

enum class HardyClass { kStateLike, kObservableLike, kMixed };

std::string to_string(HardyClass c);

/// Shares of the time-domain energy on the two half-lines, integrated by the
/// trapezoid rule so the t = 0 sample counts half to each side.
struct HardyScores {
  double upper_fraction = 0.0;  ///< share of time-domain energy on t >= 0
  double lower_fraction = 0.0;  ///< share on t < 0
  std::size_t padded_samples = 0;

  /// state_like if lower_fraction >= threshold, observable_like if
  /// upper_fraction >= threshold, mixed otherwise.
  HardyClass classification(double threshold = kMembershipThreshold) const;

  static constexpr double kMembershipThreshold = 0.99;
};

/// Throws InvalidArgument for the zero function, plus the errors of hardy_split.
HardyScores hardy_scores(const EnergyWavefunction& phi);

}  // namespace rigged
