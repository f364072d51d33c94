#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace rigged::quad {

using cplx = std::complex<double>;

struct Options {
  double abs_tol = 1e-15;
  double rel_tol = 1e-13;
  std::size_t max_intervals = 4000;
};

struct Result {
  cplx value;
  double error_estimate;
  std::size_t intervals;
};

/// Adaptive 15-point Gauss-Kronrod integration of a complex integrand over
/// [a, b]. Subintervals are bisected greatest-error-first; the final sum is
/// taken in left-to-right order so results are bit-reproducible.
///
/// `breakpoints` (sorted, inside (a, b)) seed the initial partition.
/// Throws QuadratureFailure if the tolerance is not met within
/// `max_intervals` subintervals.
Result integrate(const std::function<cplx(double)>& f, double a, double b,
                 const Options& opts = {}, std::span<const double> breakpoints = {});

/// Real-valued convenience overload.
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opts = {}, std::span<const double> breakpoints = {});

}  // namespace rigged::quad
