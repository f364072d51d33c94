#pragma once

// Shared fixtures. Expensive objects are built once per test binary.

#include <complex>

#include "rigged/friedrichs.hpp"
#include "rigged/spectral.hpp"

namespace rigged::testing {

inline FriedrichsModel exp_model(double lambda) { return {1.0, lambda, {FormFactorFamily::kExp, 1.0}}; }

/// Pole, discrete-state wavefunction and its decomposition for EXP(1),
/// omega0 = 1 at the given coupling.
struct Prepared {
  FriedrichsModel model;
  ComplexPole pole;
  EnergyWavefunction phi;
  GamowDecomposition decomposition;

  explicit Prepared(double lambda)
      : model(exp_model(lambda)),
        pole(find_resonance_pole(model)),
        phi(discrete_state_wavefunction(model, resonance_grid(model, pole))),
        decomposition(decompose(model, phi)) {}
};

inline const Prepared& standard_state() {
  static const Prepared p(0.1);
  return p;
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace rigged::testing
