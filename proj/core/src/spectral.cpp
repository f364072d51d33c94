#include "rigged/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rigged/error.hpp"
#include "rigged/fit.hpp"
#include "rigged/quadrature.hpp"
#include "rigged/rational.hpp"

namespace rigged {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// phi0 = Int_0^1 exp(-i th u) du, phi1 = Int_0^1 u exp(-i th u) du.
void filon_weights(double theta, cplx& phi0, cplx& phi1) {
  if (std::abs(theta) < 0.5) {
    const cplx x(0.0, -theta);
    cplx power(1.0, 0.0);
    double factorial = 1.0;
    phi0 = {};
    phi1 = {};
    for (int n = 0; n < 18; ++n) {
      if (n > 0) {
        power *= x;
        factorial *= n;
      }
      phi0 += power / (factorial * (n + 1));
      phi1 += power / (factorial * (n + 2));
    }
    return;
  }
  const cplx e = std::polar(1.0, -theta);
  phi0 = (1.0 - e) / cplx(0.0, theta);
  phi1 = kI * e / theta - (1.0 - e) / (theta * theta);
}

void check_time(double t, const SurvivalOptions& opts) {
  if (t < 0.0 && !opts.allow_negative_time) {
    std::ostringstream msg;
    msg << "t = " << t << " precedes the preparation at t = 0 (pass allow_negative_time to override)";
    throw NegativeTime(msg.str());
  }
}

std::vector<double> normalized_density(const EnergyWavefunction& phi, const SurvivalOptions& opts) {
  const double n2 = phi.norm_squared();
  if (!(std::abs(n2 - 1.0) <= opts.norm_tolerance)) {
    std::ostringstream msg;
    msg << "norm^2 = " << n2 << " deviates from 1 by more than " << opts.norm_tolerance;
    throw NotNormalized(msg.str());
  }
  std::vector<double> rho(phi.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(phi.values()[i]) / n2;
  return rho;
}

}  // namespace

cplx fourier_density(std::span<const double> grid, std::span<const double> density, double t) {
  cplx sum{};
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i];
    const double h = grid[i + 1] - a;
    cplx phi0, phi1;
    filon_weights(t * h, phi0, phi1);
    sum += h * std::polar(1.0, -a * t) * (density[i] * phi0 + (density[i + 1] - density[i]) * phi1);
  }
  return sum;
}

cplx fourier_density(std::span<const double> grid, std::span<const cplx> values, double t) {
  cplx sum{};
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i];
    const double h = grid[i + 1] - a;
    cplx phi0, phi1;
    filon_weights(t * h, phi0, phi1);
    sum += h * std::polar(1.0, -a * t) * (values[i] * phi0 + (values[i + 1] - values[i]) * phi1);
  }
  return sum;
}

cplx survival_amplitude_exact(const EnergyWavefunction& phi, double t, const SurvivalOptions& opts) {
  check_time(t, opts);
  const std::vector<double> rho = normalized_density(phi, opts);
  return fourier_density(phi.grid(), rho, t);
}

std::vector<cplx> survival_amplitude_exact(const EnergyWavefunction& phi, std::span<const double> times,
                                           const SurvivalOptions& opts) {
  for (double t : times) check_time(t, opts);
  const std::vector<double> rho = normalized_density(phi, opts);
  std::vector<cplx> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) out[k] = fourier_density(phi.grid(), rho, times[k]);
  return out;
}

// ---------------------------------------------------------------------------
// Pole term

cplx gamow_coefficient(const ComplexPole& pole, const EnergyWavefunction& phi, const ContinuationOptions& opts) {
  if (!(pole.gamma > 0.0)) throw NoPoleFound("zero-width pole: no resonance to project on");
  const double n2 = phi.norm_squared();
  if (!(n2 > 0.0)) throw ContinuationFailure("zero wavefunction has no pole content");

  const double lo = pole.e_r - opts.window_in_gamma * pole.gamma;
  const double hi = pole.e_r + opts.window_in_gamma * pole.gamma;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi.grid()[i] >= lo && phi.grid()[i] <= hi) idx.push_back(i);
  }
  if (idx.size() < 16) {
    throw ContinuationFailure("only " + std::to_string(idx.size()) +
                              " samples near the resonance; refine the grid around E_R");
  }
  const std::size_t stride = (idx.size() + opts.max_samples - 1) / opts.max_samples;
  std::vector<double> x;
  std::vector<cplx> w;
  for (std::size_t k = 0; k < idx.size(); k += stride) {
    x.push_back(phi.grid()[idx[k]]);
    w.emplace_back(std::norm(phi.values()[idx[k]]) / n2, 0.0);
  }

  const AaaResult fitres = aaa_fit(x, w, opts.fit_tolerance);
  double wmax = 0.0;
  for (cplx v : w) wmax = std::max(wmax, std::abs(v));
  if (wmax == 0.0) return {};
  if (!fitres.converged && fitres.max_error > 1e-8 * wmax) {
    std::ostringstream msg;
    msg << "rational fit of the density stalled at relative error " << fitres.max_error / wmax;
    throw ContinuationFailure(msg.str());
  }

  const cplx z_r = pole.position();
  const auto p = fitres.approximant.pole_near(z_r, 0.5 * pole.gamma);
  if (!p) return {};
  if (std::abs(*p - z_r) > 1e-2 * pole.gamma) {
    std::ostringstream msg;
    msg << "continued density has a pole at " << *p << ", " << std::abs(*p - z_r) / pole.gamma
        << " widths away from z_R = " << z_r;
    throw ContinuationFailure(msg.str());
  }
  return -2.0 * kPi * kI * fitres.approximant.residue(*p);
}

cplx gamow_coefficient(const FriedrichsModel& model, const EnergyWavefunction& phi, const ContinuationOptions& opts) {
  return gamow_coefficient(find_resonance_pole(model), phi, opts);
}

cplx discrete_state_gamow_coefficient(const FriedrichsModel& model, const ComplexPole& pole) {
  if (!(pole.gamma > 0.0)) throw NoPoleFound("zero-width pole: no resonance to project on");
  return 1.0 / eta_derivative(model, pole.position(), Sheet::kSecond);
}

cplx GamowDecomposition::pole_part(double t) const {
  return gamow_coefficient * std::exp(-kI * pole.position() * t);
}

GamowDecomposition decompose(const FriedrichsModel& model, const EnergyWavefunction& phi,
                             const ContinuationOptions& opts) {
  GamowDecomposition d;
  d.pole = find_resonance_pole(model);
  d.gamow_coefficient = gamow_coefficient(d.pole, phi, opts);
  const double n2 = phi.norm_squared();
  const cplx z_r = d.pole.position();
  std::vector<cplx> bg(phi.size());
  for (std::size_t i = 0; i < bg.size(); ++i) {
    const double e = phi.grid()[i];
    bg[i] = std::norm(phi.values()[i]) / n2 - kI * d.gamow_coefficient / (2.0 * kPi) / (e - z_r);
  }
  d.background = EnergyWavefunction(std::vector<double>(phi.grid().begin(), phi.grid().end()), std::move(bg));
  return d;
}

// ---------------------------------------------------------------------------
// Background

cplx background_amplitude(const GamowDecomposition& decomposition, const EnergyWavefunction& phi, double t,
                          const SurvivalOptions& opts) {
  return survival_amplitude_exact(phi, t, opts) - decomposition.pole_part(t);
}

cplx background_amplitude(const FriedrichsModel& model, const EnergyWavefunction& phi, double t,
                          const SurvivalOptions& opts) {
  return background_amplitude(decompose(model, phi), phi, t, opts);
}

cplx background_amplitude_contour(const FriedrichsModel& model, const ComplexPole& pole, double t, double angle) {
  if (t < 0.0) throw NegativeTime("contour background is defined for t >= 0");
  if (!(angle > 0.0 && angle < 0.25 * kPi + 1e-12)) {
    throw InvalidArgument("ray angle must lie in (0, pi/4]");
  }
  if (std::abs(std::arg(pole.position())) >= angle) {
    throw ContinuationFailure("pole lies outside the rotated sector; increase the ray angle");
  }
  const cplx dir = std::polar(1.0, -angle);
  auto integrand = [&](double r) -> cplx {
    if (r == 0.0) return {};
    const cplx z = r * dir;
    return discrete_state_density_continued(model, z) * std::exp(-kI * z * t) * dir;
  };
  const double split = model.form_factor.cutoff();
  quad::Options o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-11;
  o.max_intervals = 2000;
  // |exp(-i z t)| = exp(-r t sin(angle)): at large t the integrand lives in
  // a thin layer near r = 0 that uniform bisection would never resolve.
  std::vector<double> breaks;
  if (t > 0.0) {
    const double decay = 1.0 / (t * std::sin(angle));
    for (double k = 0.25; k * decay < split && k <= 64.0; k *= 4.0) breaks.push_back(k * decay);
  }
  const cplx body = quad::integrate(integrand, 0.0, split, o, breaks).value;
  auto tail = [&](double u) -> cplx { return u > 0.0 ? integrand(split / u) * (split / (u * u)) : cplx{}; };
  return body + quad::integrate(tail, 0.0, 1.0, o).value;
}

// ---------------------------------------------------------------------------
// Series

double SurvivalSeries::reconstruction_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    worst = std::max(worst, std::abs(pole_part[i] + background_part[i] - amplitude[i]));
  }
  return worst;
}

SurvivalSeries survival_decomposed(const GamowDecomposition& decomposition, const EnergyWavefunction& phi,
                                   std::span<const double> times, const SurvivalOptions& opts) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("times must be strictly increasing");
  }
  SurvivalSeries s;
  s.times.assign(times.begin(), times.end());
  s.amplitude = survival_amplitude_exact(phi, times, opts);
  s.pole_part.resize(times.size());
  s.background_part.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    s.pole_part[i] = decomposition.pole_part(times[i]);
    s.background_part[i] = s.amplitude[i] - s.pole_part[i];
  }
  return s;
}

SurvivalSeries survival_decomposed(const FriedrichsModel& model, const EnergyWavefunction& phi,
                                   std::span<const double> times, const SurvivalOptions& opts,
                                   const ContinuationOptions& copts) {
  return survival_decomposed(decompose(model, phi, copts), phi, times, opts);
}

cplx weisskopf_wigner_amplitude(const GamowDecomposition& decomposition, double t) {
  if (t < 0.0) throw NegativeTime("pole-only amplitude is defined for t >= 0");
  return decomposition.pole_part(t);
}

cplx weisskopf_wigner_amplitude(const FriedrichsModel& model, const EnergyWavefunction& phi, double t) {
  return weisskopf_wigner_amplitude(decompose(model, phi), t);
}

// ---------------------------------------------------------------------------
// Deviation metrics

namespace {

double reference_gamma(const SurvivalSeries& s) {
  // Prefer the pole part: its modulus is exactly exponential.
  const std::size_t n = s.times.size();
  std::size_t first = n, last = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(s.pole_part[i]) > 0.0) {
      if (first == n) first = i;
      last = i;
    }
  }
  if (first != n && last > first) {
    const double g = -std::log(std::norm(s.pole_part[last]) / std::norm(s.pole_part[first])) /
                     (s.times[last] - s.times[first]);
    if (g > 0.0) return g;
  }
  // Otherwise the 1/e crossing of |A|^2.
  for (std::size_t i = 1; i < n; ++i) {
    if (std::norm(s.amplitude[i]) < std::exp(-1.0) * std::norm(s.amplitude.front())) {
      return 1.0 / s.times[i];
    }
  }
  throw InsufficientSampling("survival probability never drops below 1/e; cannot place fit windows");
}

}  // namespace

DeviationReport deviation_metrics(const SurvivalSeries& s) {
  const std::size_t n = s.times.size();
  if (n < 100 || s.amplitude.size() != n || s.pole_part.size() != n || s.background_part.size() != n) {
    throw InsufficientSampling("need at least 100 time points with all four series filled");
  }
  DeviationReport r;
  const double g = reference_gamma(s);
  r.gamma_reference = g;
  if (s.times.front() > 1e-12 / g || s.times.back() < 3.0 / g * (1.0 - 1e-9)) {
    throw InsufficientSampling("series must cover [0, 3/Gamma]");
  }

  std::vector<double> tx, ly;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = s.times[i];
    if (t >= 0.5 / g && t <= 3.0 / g) {
      tx.push_back(t);
      ly.push_back(std::log(std::norm(s.amplitude[i])));
    }
  }
  if (tx.size() < 10) throw InsufficientSampling("fewer than 10 points in [0.5/Gamma, 3/Gamma]");
  const fit::LineFit decay = fit::line(tx, ly);
  r.gamma_fit = -decay.slope;
  r.gamma_fit_rms = decay.rms_residual;

  std::vector<double> lt, ld;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = s.times[i];
    const double loss = 1.0 - std::norm(s.amplitude[i]);
    if (t > 0.0 && t <= 0.01 / g && loss > 1e-13) {
      lt.push_back(std::log(t));
      ld.push_back(std::log(loss));
    }
  }
  if (lt.size() < 5) throw InsufficientSampling("fewer than 5 resolvable points in (0, 0.01/Gamma]");
  r.short_time_exponent = fit::line(lt, ld).slope;

  const double a0 = std::abs(s.amplitude.front());
  r.background_fraction = a0 > 0.0 ? std::abs(s.background_part.front()) / a0 : 0.0;

  for (std::size_t i = 1; i < n; ++i) {
    const double b0 = std::abs(s.background_part[i - 1]), p0 = std::abs(s.pole_part[i - 1]);
    const double b1 = std::abs(s.background_part[i]), p1 = std::abs(s.pole_part[i]);
    if (b0 <= p0 && b1 > p1) {
      // Interpolate the sign change of ln|B| - ln|P|.
      const double d0 = std::log(std::max(b0, 1e-300)) - std::log(std::max(p0, 1e-300));
      const double d1 = std::log(b1) - std::log(std::max(p1, 1e-300));
      const double w = (d1 != d0) ? -d0 / (d1 - d0) : 0.0;
      r.crossover_time = s.times[i - 1] + std::clamp(w, 0.0, 1.0) * (s.times[i] - s.times[i - 1]);
      break;
    }
  }
  return r;
}

std::vector<double> decay_time_grid(double gamma, double t_max, std::size_t n, std::size_t cluster) {
  if (!(gamma > 0.0) || !(t_max > 0.0) || n < 2) throw InvalidArgument("decay_time_grid: bad arguments");
  std::vector<double> uniform = uniform_grid(0.0, t_max, n);
  std::vector<double> near;
  for (std::size_t i = 0; i < cluster; ++i) {
    const double f = cluster > 1 ? static_cast<double>(i) / static_cast<double>(cluster - 1) : 0.0;
    near.push_back(std::pow(10.0, -4.0 + 2.0 * f) / gamma);
  }
  std::sort(near.begin(), near.end());
  return merge_grids(uniform, near, 1e-12 * t_max);
}

}  // namespace rigged
