#pragma once

// Brute-force reference: discretize the continuum on a uniform midpoint
// grid, diagonalize the (N+1)x(N+1) real symmetric Hamiltonian densely and
// evaluate everything from its eigen-decomposition. No analytic continuation
// is involved anywhere in this module.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rigged/friedrichs.hpp"

namespace rigged::oracle {

using cplx = std::complex<double>;

struct DiscretizedModel {
  std::size_t n_levels = 0;
  double omega_max = 0.0;
  double omega0 = 0.0;
  std::vector<double> grid;       ///< continuum energies (j + 1/2) * dw
  std::vector<double> couplings;  ///< lambda f(w_j) sqrt(dw)

  double spacing() const { return omega_max / static_cast<double>(n_levels); }
  /// 2 pi / dw; comparisons with the continuum are only meaningful below it.
  double heisenberg_time() const;
};

/// Throws InvalidArgument for n_levels < 2 or omega_max <= 0.
DiscretizedModel discretize(const FriedrichsModel& model, std::size_t n_levels, double omega_max);

struct Spectrum {
  std::vector<double> energies;
  std::vector<double> weights;  ///< |<1|E_j>|^2
  double weight_sum = 0.0;
  /// max |V^T V - I| of the tridiagonal eigenvectors, only filled when
  /// requested (costs a dense product).
  double orthogonality_error = -1.0;
};

/// Dense symmetric eigen-decomposition: Householder tridiagonalization
/// (dsytrd) followed by MRRR on the tridiagonal matrix (dstevr). Index 0 of
/// the matrix is the discrete level. Throws DiagonalizationFailure.
Spectrum diagonalize(const DiscretizedModel& dm, bool check_orthogonality = false);

/// A(t) = sum_j w_j exp(-i E_j t).
std::vector<cplx> survival(const Spectrum& spectrum, std::span<const double> times);

/// Requires n_levels >= 256.
std::vector<cplx> oracle_survival(const FriedrichsModel& model, std::size_t n_levels, double omega_max,
                                  std::span<const double> times);

/// 1 / <1|(z - H_N)^{-1}|1> from the eigen-decomposition.
cplx resolvent_eta(const Spectrum& spectrum, cplx z);

/// Richardson extrapolation of resolvent_eta over grids N and 2N assuming
/// error ~ dw^order.
cplx extrapolated_eta(const FriedrichsModel& model, std::size_t n_levels, double omega_max, cplx z,
                      int order = 2);

struct PoleFit {
  ComplexPole pole;
  double relative_residual = 0.0;
  std::size_t points = 0;
};

/// Least-squares fit of ln|A| (slope -G/2) and the unwrapped phase (slope
/// -E_R) on [t_lo, t_hi]. The residue field holds the fitted amplitude
/// extrapolated to t = 0. Throws PoorFit if the rms relative deviation of
/// |A| from the fitted exponential exceeds 5%.
PoleFit oracle_pole_fit(std::span<const double> times, std::span<const cplx> series, double t_lo, double t_hi);

}  // namespace rigged::oracle
