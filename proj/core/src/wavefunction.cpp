#include "rigged/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rigged/error.hpp"

namespace rigged {

EnergyWavefunction::EnergyWavefunction(std::vector<double> grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size()) {
    std::ostringstream msg;
    msg << "grid has " << grid_.size() << " nodes but " << values_.size() << " values";
    throw InvalidGrid(msg.str());
  }
  if (grid_.size() < kMinSamples) {
    throw InvalidGrid("at least 8 samples are required, got " + std::to_string(grid_.size()));
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i].real()) ||
        !std::isfinite(values_[i].imag())) {
      throw InvalidGrid("non-finite entry at index " + std::to_string(i));
    }
    if (i > 0 && !(grid_[i] > grid_[i - 1])) {
      throw InvalidGrid("grid not strictly increasing at index " + std::to_string(i));
    }
  }
}

double EnergyWavefunction::norm_squared() const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    sum += 0.5 * (grid_[i + 1] - grid_[i]) * (std::norm(values_[i]) + std::norm(values_[i + 1]));
  }
  return sum;
}

bool EnergyWavefunction::is_uniform(double rel_tol) const {
  if (grid_.size() < 2) return true;
  const double h = (grid_.back() - grid_.front()) / static_cast<double>(grid_.size() - 1);
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    if (std::abs((grid_[i + 1] - grid_[i]) - h) > rel_tol * h + 1e-14 * std::abs(grid_[i])) {
      return false;
    }
  }
  return true;
}

EnergyWavefunction EnergyWavefunction::scaled(cplx factor) const {
  std::vector<cplx> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [factor](cplx x) { return factor * x; });
  return {grid_, std::move(v)};
}

EnergyWavefunction combine(cplx a, const EnergyWavefunction& x, cplx b, const EnergyWavefunction& y) {
  if (x.size() != y.size() || !std::equal(x.grid().begin(), x.grid().end(), y.grid().begin())) {
    throw InvalidGrid("combine requires identical grids");
  }
  std::vector<cplx> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x.values()[i] + b * y.values()[i];
  return {std::vector<double>(x.grid().begin(), x.grid().end()), std::move(v)};
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw InvalidGrid("uniform_grid needs n >= 2 and hi > lo");
  std::vector<double> g(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + h * static_cast<double>(i);
  g.back() = hi;
  return g;
}

std::vector<double> merge_grids(std::span<const double> a, std::span<const double> b, double min_gap) {
  std::vector<double> all;
  all.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all));
  std::vector<double> out;
  out.reserve(all.size());
  for (double x : all) {
    if (out.empty() || x - out.back() > min_gap) out.push_back(x);
  }
  return out;
}

EnergyWavefunction resample_uniform(const EnergyWavefunction& phi, double lo, double hi, std::size_t n) {
  std::vector<double> g = uniform_grid(lo, hi, n);
  std::vector<cplx> v(n);
  const auto grid = phi.grid();
  const auto vals = phi.values();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g[i];
    if (x < grid.front() || x > grid.back()) continue;
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t j = (it == grid.end()) ? grid.size() - 1 : static_cast<std::size_t>(it - grid.begin());
    if (j == 0) j = 1;
    const double w = (x - grid[j - 1]) / (grid[j] - grid[j - 1]);
    v[i] = (1.0 - w) * vals[j - 1] + w * vals[j];
  }
  return {std::move(g), std::move(v)};
}

}  // namespace rigged
