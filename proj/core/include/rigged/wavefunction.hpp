#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rigged {

using cplx = std::complex<double>;

/// Complex samples of an energy-representation function <E|phi> on a
/// strictly increasing grid.
///
/// Physical states live on E >= 0; the Hardy-class diagnostics also accept
/// grids reaching into negative energies.
class EnergyWavefunction {
 public:
  static constexpr std::size_t kMinSamples = 8;

  EnergyWavefunction() = default;
  /// Throws InvalidGrid on size mismatch, fewer than kMinSamples nodes,
  /// a non-increasing grid or non-finite entries.
  EnergyWavefunction(std::vector<double> grid, std::vector<cplx> values);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }
  bool empty() const noexcept { return grid_.empty(); }

  /// Trapezoid-rule integral of |phi|^2.
  double norm_squared() const;
  /// True if all spacings agree to `rel_tol` relative.
  bool is_uniform(double rel_tol = 1e-9) const;

  EnergyWavefunction scaled(cplx factor) const;

 private:
  std::vector<double> grid_;
  std::vector<cplx> values_;
};

/// Linear combination a*x + b*y of two wavefunctions on the same grid.
EnergyWavefunction combine(cplx a, const EnergyWavefunction& x, cplx b, const EnergyWavefunction& y);

/// Uniform grid of `n` nodes spanning [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// Merge two sorted grids, dropping nodes closer than `min_gap`.
std::vector<double> merge_grids(std::span<const double> a, std::span<const double> b,
                                double min_gap = 1e-12);

/// Resample onto a uniform grid by piecewise-linear interpolation; samples
/// outside the original support are zero.
EnergyWavefunction resample_uniform(const EnergyWavefunction& phi, double lo, double hi, std::size_t n);

}  // namespace rigged
