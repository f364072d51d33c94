#include "rigged/friedrichs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rigged/error.hpp"
#include "rigged/quadrature.hpp"

namespace rigged {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

quad::Options eta_quadrature() {
  quad::Options o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-12;
  o.max_intervals = 2000;
  return o;
}

// Divided difference (f2(w) - f2(z)) / (z - w), analytic in w.
cplx divided_difference(const FormFactorSpec& ff, double w, cplx z, cplx f2z) {
  const cplx d = z - w;
  if (std::abs(d) < 1e-7 * (1.0 + std::abs(z))) {
    return -ff.continued_derivative(0.5 * (z + w));
  }
  return (ff.coupling_sq(w) - f2z) / d;
}

// Integral over [split, inf) of |f|^2 / (z - w), mapped onto (0, 1] by w = split / u.
cplx tail_integral(const FormFactorSpec& ff, cplx z, double split) {
  auto integrand = [&](double u) -> cplx {
    if (u <= 0.0) return {};
    const double w = split / u;
    return ff.coupling_sq(w) / (z - w) * (split / (u * u));
  };
  return quad::integrate(integrand, 0.0, 1.0, eta_quadrature()).value;
}

// Split point separating the subtracted near-axis part from the tail.
double split_point(const FormFactorSpec& ff, double re_z) {
  return std::max(ff.cutoff(), 2.0 * re_z + ff.scale);
}

// True when z is close enough to [0, split] that singularity subtraction is needed.
bool near_cut(const FormFactorSpec& ff, cplx z, double split) {
  const double d0 = 0.5 * ff.scale;
  return std::abs(z.imag()) < d0 && z.real() > -d0 && z.real() < split + d0;
}

// First-sheet Cauchy integral F(z) = Int_0^inf |f(w)|^2 / (z - w) dw, z off the cut.
cplx cauchy_first_sheet(const FormFactorSpec& ff, cplx z) {
  const double split = split_point(ff, z.real());
  const cplx tail = tail_integral(ff, z, split);
  if (!near_cut(ff, z, split)) {
    auto direct = [&](double w) -> cplx { return ff.coupling_sq(w) / (z - w); };
    return quad::integrate(direct, 0.0, split, eta_quadrature()).value + tail;
  }
  const cplx f2z = ff.continued(z);
  auto smooth = [&](double w) { return divided_difference(ff, w, z, f2z); };
  const double bp = std::clamp(z.real(), 0.0, split);
  std::array<double, 1> breaks{bp};
  const cplx body = quad::integrate(smooth, 0.0, split, eta_quadrature(), breaks).value;
  // Int_0^split dw / (z - w) = log z - log(z - split); no cut crossing off the real axis.
  const cplx log_term = std::log(z) - std::log(z - split);
  return body + tail + f2z * log_term;
}

// Upper-rim boundary value F(E + i0) for real E >= 0.
cplx cauchy_upper_rim(const FormFactorSpec& ff, double e) {
  const double split = split_point(ff, e);
  const cplx tail = tail_integral(ff, cplx(e, 0.0), split);
  const double f2e = ff.coupling_sq(e);
  auto smooth = [&](double w) { return divided_difference(ff, w, cplx(e, 0.0), cplx(f2e, 0.0)); };
  std::array<double, 1> breaks{e};
  const cplx body = quad::integrate(smooth, 0.0, split, eta_quadrature(), breaks).value;
  if (f2e == 0.0) return body + tail;
  // log(E + i0) - log(E - split + i0) = ln(E / (split - E)) - i*pi for 0 < E < split.
  const cplx log_term(std::log(e / (split - e)), -kPi);
  return body + tail + f2e * log_term;
}

}  // namespace

// ---------------------------------------------------------------------------
// Form factor

double FormFactorSpec::coupling_sq(double w) const {
  if (w < 0.0) return 0.0;
  const double u = w / scale;
  switch (family) {
    case FormFactorFamily::kExp:
      return u * std::exp(-u);
    case FormFactorFamily::kRational: {
      const double d = 1.0 + u * u;
      return w / (d * d);
    }
  }
  return 0.0;
}

cplx FormFactorSpec::continued(cplx z) const {
  const cplx u = z / scale;
  switch (family) {
    case FormFactorFamily::kExp:
      return u * std::exp(-u);
    case FormFactorFamily::kRational: {
      const cplx d = 1.0 + u * u;
      return z / (d * d);
    }
  }
  return {};
}

cplx FormFactorSpec::continued_derivative(cplx z) const {
  const cplx u = z / scale;
  switch (family) {
    case FormFactorFamily::kExp:
      return std::exp(-u) * (1.0 - u) / scale;
    case FormFactorFamily::kRational: {
      const cplx d = 1.0 + u * u;
      return (1.0 - 3.0 * u * u) / (d * d * d);
    }
  }
  return {};
}

double FormFactorSpec::cutoff() const {
  return family == FormFactorFamily::kExp ? 40.0 * scale : 200.0 * scale;
}

double FormFactorSpec::total_weight() const {
  return family == FormFactorFamily::kExp ? scale : 0.5 * scale * scale;
}

void FormFactorSpec::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("form_factor.scale must be positive and finite");
  }
}

std::string to_string(FormFactorFamily family) {
  return family == FormFactorFamily::kExp ? "EXP" : "RATIONAL";
}

FormFactorFamily form_factor_family_from_string(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "EXP") return FormFactorFamily::kExp;
  if (up == "RATIONAL") return FormFactorFamily::kRational;
  throw InvalidArgument("unknown form factor family '" + name + "' (expected EXP or RATIONAL)");
}

void FriedrichsModel::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidArgument("omega0 must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be non-negative");
  form_factor.validate();
}

// ---------------------------------------------------------------------------
// Resolvent denominator

cplx eta(const FriedrichsModel& model, cplx z, Sheet sheet) {
  const double lam2 = model.lambda * model.lambda;
  if (lam2 == 0.0) return z - model.omega0;
  const FormFactorSpec& ff = model.form_factor;

  const bool on_axis = std::abs(z.imag()) <= 1e-12;
  if (on_axis && z.real() >= -1e-12) {
    if (sheet == Sheet::kFirst) {
      std::ostringstream msg;
      msg << "z = " << z << " lies on the cut [0, inf) of the first sheet";
      throw BranchCutEvaluation(msg.str());
    }
    return eta_plus(model, std::max(z.real(), 0.0));
  }
  const cplx z_eval = on_axis ? cplx(z.real(), 0.0) : z;
  cplx value = z_eval - model.omega0 - lam2 * cauchy_first_sheet(ff, z_eval);
  if (sheet == Sheet::kSecond && !on_axis) {
    const cplx jump = 2.0 * kPi * kI * lam2 * ff.continued(z_eval);
    value += (z.imag() < 0.0) ? jump : -jump;
  }
  return value;
}

cplx eta_plus(const FriedrichsModel& model, double energy) {
  const double lam2 = model.lambda * model.lambda;
  if (lam2 == 0.0) return {energy - model.omega0, 0.0};
  if (energy < 0.0) {
    return cplx(energy, 0.0) - model.omega0 - lam2 * cauchy_first_sheet(model.form_factor, cplx(energy, 0.0));
  }
  return cplx(energy, 0.0) - model.omega0 - lam2 * cauchy_upper_rim(model.form_factor, energy);
}

cplx eta_minus(const FriedrichsModel& model, double energy) { return std::conj(eta_plus(model, energy)); }

cplx eta_derivative(const FriedrichsModel& model, cplx z, Sheet sheet) {
  const double h = 1e-6 * (1.0 + std::abs(z));
  return (eta(model, z + h, sheet) - eta(model, z - h, sheet)) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// Pole search

ComplexPole find_resonance_pole(const FriedrichsModel& model, const PoleSearchOptions& opts) {
  model.validate();
  if (model.lambda == 0.0) return {model.omega0, 0.0, cplx(1.0, 0.0)};

  const double w0 = model.omega0;
  const double lam2 = model.lambda * model.lambda;
  const double golden_im = kPi * lam2 * model.form_factor.coupling_sq(w0);
  const cplx seed(w0, -std::max(golden_im, 1e-12 * w0));
  const double delta = std::max(golden_im, 1e-3 * w0);

  const std::array<cplx, 5> seeds = {
      seed,
      seed + delta,
      seed - delta,
      seed - cplx(0.0, delta),
      cplx(seed.real(), 0.5 * seed.imag()),
  };

  auto in_window = [w0](cplx z) {
    return z.real() >= 0.5 * w0 && z.real() <= 2.0 * w0 && z.imag() < 0.0 && z.imag() >= -w0;
  };

  std::vector<cplx> roots;
  std::string last_failure = "no seed converged";
  for (cplx z : seeds) {
    bool converged = false;
    try {
      for (int it = 0; it < opts.max_iterations; ++it) {
        const cplx f = eta(model, z, Sheet::kSecond);
        if (std::abs(f) < opts.tolerance) {
          converged = true;
          break;
        }
        const cplx df = eta_derivative(model, z, Sheet::kSecond);
        if (std::abs(df) == 0.0) break;
        cplx next = z - f / df;
        if (next.imag() >= 0.0) next = cplx(next.real(), 0.5 * z.imag());
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
        if (std::abs(next - z) < 1e-15 * (1.0 + std::abs(z))) {
          z = next;
          converged = std::abs(eta(model, z, Sheet::kSecond)) < 1e-10;
          break;
        }
        z = next;
        if (std::abs(z - seed) > 4.0 * w0) break;
      }
    } catch (const QuadratureFailure& e) {
      last_failure = e.what();
      converged = false;
    }
    if (!converged || !in_window(z)) continue;
    const bool known = std::any_of(roots.begin(), roots.end(), [&](cplx r) {
      return std::abs(r - z) < 1e-8 * (1.0 + std::abs(z));
    });
    if (!known) roots.push_back(z);
  }

  if (roots.empty()) throw NoPoleFound("Newton iteration failed from all seeds (" + last_failure + ")");
  if (roots.size() > 1) {
    std::ostringstream msg;
    msg << roots.size() << " distinct second-sheet zeros in the search window:";
    for (cplx r : roots) msg << " " << r;
    throw MultiplePoles(msg.str());
  }
  const cplx z_r = roots.front();
  const cplx residue = 1.0 / eta_derivative(model, z_r, Sheet::kSecond);
  return {z_r.real(), -2.0 * z_r.imag(), residue};
}

// ---------------------------------------------------------------------------
// Bound state

std::optional<double> bound_state_energy(const FriedrichsModel& model) {
  model.validate();
  const double lam2 = model.lambda * model.lambda;
  if (lam2 == 0.0) return std::nullopt;
  const FormFactorSpec& ff = model.form_factor;
  // eta(0^-) = -omega0 + lambda^2 Int |f|^2 / w; eta is increasing on E < 0.
  auto inv_w = [&ff](double w) { return w > 0.0 ? ff.coupling_sq(w) / w : 0.0; };
  const double split = ff.cutoff();
  auto tail = [&](double u) { return u > 0.0 ? inv_w(split / u) * split / (u * u) : 0.0; };
  const double moment = quad::integrate_real(inv_w, 0.0, split) + quad::integrate_real(tail, 0.0, 1.0);
  const double eta0 = -model.omega0 + lam2 * moment;
  if (eta0 <= 0.0) return std::nullopt;

  auto eta_real = [&](double e) { return eta(model, cplx(e, 0.0), Sheet::kFirst).real(); };
  double hi = -1e-9 * ff.scale;
  double lo = std::min(0.0, model.omega0 - lam2 * moment) - ff.scale;
  while (eta_real(lo) > 0.0) lo *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (eta_real(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

void require_no_bound_state(const FriedrichsModel& model) {
  if (auto e = bound_state_energy(model)) {
    std::ostringstream msg;
    msg << "model has a bound state at E = " << *e
        << "; the pole-plus-background decomposition assumes a purely continuous spectrum";
    throw BoundStatePresent(msg.str());
  }
}

// ---------------------------------------------------------------------------
// Spectral density and the discrete-state wavefunction

double spectral_density(const FriedrichsModel& model, double energy) {
  if (energy < 0.0) throw InvalidArgument("spectral_density requires E >= 0");
  const double lam2 = model.lambda * model.lambda;
  const double f2 = model.form_factor.coupling_sq(energy);
  if (lam2 == 0.0 || f2 == 0.0) return 0.0;
  return lam2 * f2 / std::norm(eta_plus(model, energy));
}

double spectral_weight(const FriedrichsModel& model) {
  const ComplexPole pole = find_resonance_pole(model);
  const double cut = model.form_factor.cutoff();
  std::vector<double> breaks;
  for (double k : {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0}) {
    const double e = pole.e_r + k * std::max(pole.gamma, 1e-12);
    if (e > 0.0 && e < cut) breaks.push_back(e);
  }
  quad::Options o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-11;
  o.max_intervals = 4000;
  auto rho = [&model](double e) { return spectral_density(model, e); };
  double total = quad::integrate_real(rho, 0.0, cut, o, breaks);
  auto tail = [&](double u) { return u > 0.0 ? rho(cut / u) * cut / (u * u) : 0.0; };
  total += quad::integrate_real(tail, 0.0, 1.0, o);
  return total;
}

EnergyWavefunction discrete_state_wavefunction(const FriedrichsModel& model, std::span<const double> grid) {
  model.validate();
  if (grid.empty() || grid.front() < 0.0) throw InvalidGrid("grid must lie inside [0, cutoff]");
  if (grid.back() > model.form_factor.cutoff() * (1.0 + 1e-12)) {
    throw InvalidGrid("grid exceeds the continuum cutoff " + std::to_string(model.form_factor.cutoff()));
  }
  std::vector<double> g(grid.begin(), grid.end());
  std::vector<cplx> v(g.size());
  if (model.lambda > 0.0) {
    require_no_bound_state(model);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double f2 = model.form_factor.coupling_sq(g[i]);
      v[i] = f2 == 0.0 ? cplx{} : model.lambda * std::sqrt(f2) / eta_plus(model, g[i]);
    }
  }
  return {std::move(g), std::move(v)};
}

cplx discrete_state_density_continued(const FriedrichsModel& model, cplx z) {
  const double lam2 = model.lambda * model.lambda;
  const cplx f2 = model.form_factor.continued(z);
  return lam2 * f2 / (eta(model, z, Sheet::kSecond) * eta(model, z, Sheet::kFirst));
}

std::vector<double> resonance_grid(const FriedrichsModel& model, const ComplexPole& pole,
                                   double background_step, std::size_t resonance_nodes,
                                   double half_width_in_gamma) {
  const double cut = model.form_factor.cutoff();
  const auto n_bg = static_cast<std::size_t>(std::ceil(cut / background_step)) + 1;
  const std::vector<double> bg = uniform_grid(0.0, cut, n_bg);
  if (!(pole.gamma > 0.0) || resonance_nodes < 2) return bg;

  const double hw = 0.5 * pole.gamma;
  const double theta_max = std::atan(half_width_in_gamma * pole.gamma / hw);
  std::vector<double> res;
  res.reserve(resonance_nodes);
  for (std::size_t i = 0; i < resonance_nodes; ++i) {
    const double theta = -theta_max + 2.0 * theta_max * static_cast<double>(i) /
                                          static_cast<double>(resonance_nodes - 1);
    const double e = pole.e_r + hw * std::tan(theta);
    if (e > 0.0 && e < cut) res.push_back(e);
  }
  return merge_grids(bg, res, 1e-12 * cut);
}

}  // namespace rigged
