#pragma once

// One-sided evolution of Gamow functionals. Each branch (decaying or
// growing) is a semigroup: it has an identity and closes under composition
// on its own half-line, and it has no inverse. Evaluating a branch outside
// its half-line is an error; the continued value is available only through
// the explicitly named diagnostic entry point.

#include <complex>
#include <string>
#include <vector>

#include "rigged/friedrichs.hpp"

namespace rigged {

enum class GamowKind {
  kDecaying,  ///< houses z_R = E_R - i G/2, evolves on t >= 0
  kGrowing,   ///< houses the conjugate pole E_R + i G/2, evolves on t <= 0
};

/// Two readings of the time arrow that assign the same semigroups to
/// different temporal directions and Hardy-space roles.
enum class ArrowConvention {
  kBohm,            ///< preparation/registration arrow
  kBrusselsAustin,  ///< excitation/de-excitation arrow
};

std::string to_string(GamowKind kind);
std::string to_string(ArrowConvention convention);
GamowKind gamow_kind_from_string(const std::string& name);
ArrowConvention arrow_convention_from_string(const std::string& name);

struct GamowFunctional {
  ComplexPole pole;
  GamowKind kind = GamowKind::kDecaying;
  cplx amplitude{1.0, 0.0};

  /// The eigenvalue this functional carries: z_R or its conjugate.
  cplx eigenvalue() const;
};

/// Whether t lies on the half-line of `kind` (t >= 0 decaying, t <= 0 growing).
bool in_semigroup_domain(GamowKind kind, double t);

/// Multiplier applied to the amplitude over time t:
///
///   decaying, t >= 0 (both conventions):  exp(-i E_R t) exp(-G t/2)
///   growing,  t <= 0, kBohm:              exp(-i E_R t) exp(+G t/2)
///   growing,  t <= 0, kBrusselsAustin:    exp(+i E_R t) exp(+G t/2)
///
/// The Brussels-Austin growing law carries the opposite phase sign from the
/// Bohm one, as it is stated in that formulation; only the modulus agrees.
/// Throws TimeOutsideSemigroupDomain off the half-line.
cplx evolution_factor(const ComplexPole& pole, GamowKind kind, double t, ArrowConvention convention);

/// Returns g with its amplitude evolved by t; pole and kind are unchanged.
GamowFunctional evolve_gamow(const GamowFunctional& g, double t, ArrowConvention convention);

/// The same law evaluated formally on the forbidden half-line, e.g. the
/// decaying branch at t < 0, which grows as exp(+G|t|/2). Never used by the
/// evolution itself; exists to show why the domain restriction is needed.
GamowFunctional evolve_gamow_diagnostic(const GamowFunctional& g, double t, ArrowConvention convention);

/// |U(t2) U(t1) g - U(t1 + t2) g| for a unit-amplitude functional. Throws
/// TimeOutsideSemigroupDomain unless t1 and t2 both lie in the domain of `kind`.
double semigroup_residual(const ComplexPole& pole, ArrowConvention convention, GamowKind kind, double t1,
                          double t2);

struct BranchReport {
  GamowKind kind = GamowKind::kDecaying;
  std::string domain;           ///< "t >= 0" or "t <= 0"
  std::string direction_label;  ///< temporal direction this convention assigns
  std::string hardy_space;      ///< Hardy class housing the branch's test space
};

struct ConventionReport {
  ArrowConvention convention = ArrowConvention::kBohm;
  std::vector<BranchReport> branches;
  /// Decay rate read off the future-directed decaying branch: -2 ln|U(1)|.
  double gamma_decaying_future = 0.0;
};

struct ConventionComparison {
  ComplexPole pole;
  std::vector<ConventionReport> conventions;  ///< kBohm, then kBrusselsAustin
  /// The two conventions swap which Hardy class (upper/lower half-plane)
  /// houses states and observables.
  bool roles_reversed = true;
  bool gamma_agrees = false;  ///< bitwise equality of gamma_decaying_future
  std::string rationale;
};

ConventionReport convention_report(const ComplexPole& pole, ArrowConvention convention);

/// Finds the resonance of `model` and compares both conventions on it.
ConventionComparison compare_conventions(const FriedrichsModel& model);
ConventionComparison compare_conventions(const ComplexPole& pole);

}  // namespace rigged
