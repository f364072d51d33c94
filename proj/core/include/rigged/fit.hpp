#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rigged::fit {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least-squares line y = slope*x + intercept.
LineFit line(std::span<const double> x, std::span<const double> y);

/// Phase of `z` made continuous along the sequence.
std::vector<double> unwrapped_phase(std::span<const std::complex<double>> z);

struct LorentzianFit {
  double center = 0.0;
  double fwhm = 0.0;
  double peak = 0.0;
  double rms_residual = 0.0;
};

/// Levenberg-Marquardt fit of peak * (fwhm/2)^2 / ((x - center)^2 + (fwhm/2)^2).
LorentzianFit lorentzian(std::span<const double> x, std::span<const double> y);

}  // namespace rigged::fit
