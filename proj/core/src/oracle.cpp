#include "rigged/oracle.hpp"

#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rigged/error.hpp"
#include "rigged/fit.hpp"

namespace rigged::oracle {

double DiscretizedModel::heisenberg_time() const { return 2.0 * std::numbers::pi / spacing(); }

DiscretizedModel discretize(const FriedrichsModel& model, std::size_t n_levels, double omega_max) {
  model.validate();
  if (n_levels < 2 || !(omega_max > 0.0)) throw InvalidArgument("discretize needs n_levels >= 2, omega_max > 0");
  DiscretizedModel dm;
  dm.n_levels = n_levels;
  dm.omega_max = omega_max;
  dm.omega0 = model.omega0;
  const double dw = dm.spacing();
  dm.grid.resize(n_levels);
  dm.couplings.resize(n_levels);
  for (std::size_t j = 0; j < n_levels; ++j) {
    const double w = (static_cast<double>(j) + 0.5) * dw;
    dm.grid[j] = w;
    dm.couplings[j] = model.lambda * std::sqrt(model.form_factor.coupling_sq(w) * dw);
  }
  return dm;
}

Spectrum diagonalize(const DiscretizedModel& dm, bool check_orthogonality) {
  const auto n = static_cast<lapack_int>(dm.n_levels + 1);
  const auto nn = static_cast<std::size_t>(n);
  // Column-major, lower triangle referenced.
  std::vector<double> a(nn * nn, 0.0);
  auto at = [&](lapack_int r, lapack_int c) -> double& {
    return a[static_cast<std::size_t>(c) * nn + static_cast<std::size_t>(r)];
  };
  at(0, 0) = dm.omega0;
  for (lapack_int j = 1; j < n; ++j) {
    at(j, j) = dm.grid[static_cast<std::size_t>(j - 1)];
    at(j, 0) = dm.couplings[static_cast<std::size_t>(j - 1)];
  }

  // H = Q T Q^T with the lower-triangle reduction leaves e_1 fixed (Q e_1 =
  // e_1), so <1|E_j> is the first component of the j-th eigenvector of T and
  // Q never has to be formed.
  std::vector<double> d(nn), e(nn > 1 ? nn - 1 : 1), tau(nn > 1 ? nn - 1 : 1);
  lapack_int info = LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', n, a.data(), n, d.data(), e.data(), tau.data());
  if (info != 0) throw DiagonalizationFailure("dsytrd returned info = " + std::to_string(info));
  a.clear();
  a.shrink_to_fit();

  std::vector<double> w(nn), z(nn * nn);
  std::vector<lapack_int> support(2 * nn);
  lapack_int found = 0;
  info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0, &found, w.data(),
                        z.data(), n, support.data());
  if (info != 0 || found != n) {
    throw DiagonalizationFailure("dstevr returned info = " + std::to_string(info) + ", " + std::to_string(found) +
                                 " of " + std::to_string(n) + " eigenpairs");
  }

  Spectrum s;
  s.energies = std::move(w);
  s.weights.resize(nn);
  for (std::size_t j = 0; j < nn; ++j) s.weights[j] = z[j * nn] * z[j * nn];
  for (double x : s.weights) s.weight_sum += x;

  if (check_orthogonality) {
    Eigen::Map<const Eigen::MatrixXd> v(z.data(), n, n);
    const Eigen::MatrixXd g = v.transpose() * v - Eigen::MatrixXd::Identity(n, n);
    s.orthogonality_error = g.cwiseAbs().maxCoeff();
  }
  return s;
}

std::vector<cplx> survival(const Spectrum& spectrum, std::span<const double> times) {
  std::vector<cplx> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    cplx sum{};
    for (std::size_t j = 0; j < spectrum.energies.size(); ++j) {
      sum += spectrum.weights[j] * std::polar(1.0, -spectrum.energies[j] * times[k]);
    }
    out[k] = sum;
  }
  return out;
}

std::vector<cplx> oracle_survival(const FriedrichsModel& model, std::size_t n_levels, double omega_max,
                                  std::span<const double> times) {
  if (n_levels < 256) throw InvalidArgument("oracle_survival needs n_levels >= 256");
  return survival(diagonalize(discretize(model, n_levels, omega_max)), times);
}

cplx resolvent_eta(const Spectrum& spectrum, cplx z) {
  cplx g{};
  for (std::size_t j = 0; j < spectrum.energies.size(); ++j) g += spectrum.weights[j] / (z - spectrum.energies[j]);
  return 1.0 / g;
}

cplx extrapolated_eta(const FriedrichsModel& model, std::size_t n_levels, double omega_max, cplx z, int order) {
  const cplx coarse = resolvent_eta(diagonalize(discretize(model, n_levels, omega_max)), z);
  const cplx fine = resolvent_eta(diagonalize(discretize(model, 2 * n_levels, omega_max)), z);
  const double factor = std::pow(2.0, order);
  return (factor * fine - coarse) / (factor - 1.0);
}

PoleFit oracle_pole_fit(std::span<const double> times, std::span<const cplx> series, double t_lo, double t_hi) {
  if (times.size() != series.size()) throw InvalidArgument("times and series differ in length");
  std::vector<double> t, log_mod;
  std::vector<cplx> a;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_lo && times[i] <= t_hi) {
      t.push_back(times[i]);
      a.push_back(series[i]);
      log_mod.push_back(std::log(std::max(std::abs(series[i]), 1e-300)));
    }
  }
  if (t.size() < 4) throw PoorFit("fewer than 4 samples in the fit window");

  const fit::LineFit modulus = fit::line(t, log_mod);
  const std::vector<double> phase = fit::unwrapped_phase(a);
  const fit::LineFit rate = fit::line(t, phase);

  double ss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double model = std::exp(modulus.intercept + modulus.slope * t[i]);
    const double rel = (std::abs(a[i]) - model) / model;
    ss += rel * rel;
  }
  PoleFit out;
  out.points = t.size();
  out.relative_residual = std::sqrt(ss / static_cast<double>(t.size()));
  out.pole.gamma = -2.0 * modulus.slope;
  out.pole.e_r = -rate.slope;
  out.pole.residue = std::polar(std::exp(modulus.intercept), rate.intercept);
  if (out.relative_residual > 0.05 || !(out.pole.gamma > 0.0)) {
    std::ostringstream msg;
    msg << "exponential fit on [" << t_lo << ", " << t_hi << "] leaves relative residual "
        << out.relative_residual << " (gamma " << out.pole.gamma << ")";
    throw PoorFit(msg.str());
  }
  return out;
}

}  // namespace rigged::oracle
