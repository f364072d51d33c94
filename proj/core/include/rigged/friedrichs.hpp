#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rigged/wavefunction.hpp"

namespace rigged {

enum class FormFactorFamily { kExp, kRational };

/// Coupling profile |f(w)|^2 between the discrete level and the continuum.
///
///   kExp:      |f(w)|^2 = (w/s) exp(-w/s)
///   kRational: |f(w)|^2 = w / (1 + (w/s)^2)^2
///
/// Both vanish linearly at threshold and continue analytically off the axis
/// by the same expression in z.
struct FormFactorSpec {
  FormFactorFamily family = FormFactorFamily::kExp;
  double scale = 1.0;

  double coupling_sq(double w) const;
  cplx continued(cplx z) const;
  cplx continued_derivative(cplx z) const;
  /// Finite-quadrature cutoff: 40*s for kExp, 200*s for kRational.
  double cutoff() const;
  /// Closed form of the integral of |f|^2 over [0, inf).
  double total_weight() const;

  void validate() const;
};

std::string to_string(FormFactorFamily family);
FormFactorFamily form_factor_family_from_string(const std::string& name);

/// Discrete level omega0 coupled with strength lambda to the continuum [0, inf).
struct FriedrichsModel {
  double omega0 = 1.0;
  double lambda = 0.1;
  FormFactorSpec form_factor{};

  /// Throws InvalidArgument unless omega0 > 0, lambda >= 0, scale > 0.
  void validate() const;
};

/// Resonance datum; the Gamow eigenvalue is z_R = e_r - i*gamma/2.
struct ComplexPole {
  double e_r = 0.0;
  double gamma = 0.0;
  cplx residue{1.0, 0.0};

  cplx position() const { return {e_r, -0.5 * gamma}; }
};

/// First (physical) sheet or the continuation through the cut.
///
/// kSecond below the real axis is the continuation of eta from the upper
/// rim, eta_I(z) + 2*pi*i*lambda^2*f^2(z); above the axis it is the mirror
/// continuation eta_I(z) - 2*pi*i*lambda^2*f^2(z) that houses the conjugate
/// (growing) pole. On the real axis itself kSecond returns the upper-rim value.
enum class Sheet { kFirst, kSecond };

/// Resolvent denominator eta(z) = z - omega0 - lambda^2 * Int |f(w)|^2 / (z - w) dw,
/// so that <1|(z - H)^{-1}|1> = 1 / eta(z).
///
/// Throws BranchCutEvaluation for kFirst within 1e-12 of [0, inf).
cplx eta(const FriedrichsModel& model, cplx z, Sheet sheet);

/// Upper boundary value eta(E + i0) for real E, principal value by
/// singularity subtraction.
cplx eta_plus(const FriedrichsModel& model, double energy);

/// Lower boundary value eta(E - i0) = conj(eta(E + i0)).
cplx eta_minus(const FriedrichsModel& model, double energy);

struct PoleSearchOptions {
  double tolerance = 1e-12;
  int max_iterations = 80;
};

/// Second-sheet zero of eta nearest the golden-rule estimate
/// omega0 - i*pi*lambda^2*|f(omega0)|^2, searched by Newton iteration from
/// that seed and four perturbations inside Re z in [omega0/2, 2*omega0],
/// Im z in [-omega0, 0). The residue is 1/eta_II'(z_R).
///
/// lambda == 0 returns (omega0, 0, 1). Throws NoPoleFound or MultiplePoles.
ComplexPole find_resonance_pole(const FriedrichsModel& model, const PoleSearchOptions& opts = {});

/// Central finite-difference derivative of eta along the real direction,
/// step 1e-6 * (1 + |z|).
cplx eta_derivative(const FriedrichsModel& model, cplx z, Sheet sheet);

/// Zero of eta on the negative real axis of the first sheet, if any.
std::optional<double> bound_state_energy(const FriedrichsModel& model);

/// Throws BoundStatePresent if the model supports a bound state.
void require_no_bound_state(const FriedrichsModel& model);

/// |<E|1>|^2 = lambda^2 |f(E)|^2 / |eta(E + i0)|^2 for E >= 0.
double spectral_density(const FriedrichsModel& model, double energy);

/// Integral of the spectral density over [0, inf) by adaptive quadrature
/// with breakpoints around the resonance.
double spectral_weight(const FriedrichsModel& model);

/// Samples <E|1> = lambda f(E) / eta(E + i0) on `grid` (strictly increasing,
/// inside [0, cutoff]). Zero everywhere when lambda == 0.
EnergyWavefunction discrete_state_wavefunction(const FriedrichsModel& model, std::span<const double> grid);

/// Analytic continuation of lambda^2 f^2(z) / (eta_II(z) eta_I(z)) into the
/// lower half-plane, i.e. of the discrete-state density off the real axis.
cplx discrete_state_density_continued(const FriedrichsModel& model, cplx z);

/// Energy grid for resonant preparations: uniform spacing `background_step`
/// on [0, cutoff] merged with `resonance_nodes` nodes equidistributed in
/// Lorentzian measure within +-`half_width_in_gamma` * gamma of E_R.
std::vector<double> resonance_grid(const FriedrichsModel& model, const ComplexPole& pole,
                                   double background_step = 2.5e-3, std::size_t resonance_nodes = 16000,
                                   double half_width_in_gamma = 200.0);

}  // namespace rigged
