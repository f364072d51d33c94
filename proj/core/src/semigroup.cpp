#include "rigged/semigroup.hpp"

#include <cmath>
#include <sstream>

#include "rigged/error.hpp"

namespace rigged {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx law(const ComplexPole& pole, GamowKind kind, double t, ArrowConvention convention) {
  if (kind == GamowKind::kDecaying) return std::exp(-kI * pole.e_r * t) * std::exp(-0.5 * pole.gamma * t);
  const double phase_sign = convention == ArrowConvention::kBohm ? -1.0 : 1.0;
  return std::exp(phase_sign * kI * pole.e_r * t) * std::exp(0.5 * pole.gamma * t);
}

void require_domain(GamowKind kind, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
  if (!in_semigroup_domain(kind, t)) {
    std::ostringstream msg;
    msg << "t = " << t << " lies outside the semigroup domain of the " << to_string(kind)
        << " branch (" << (kind == GamowKind::kDecaying ? "t >= 0" : "t <= 0")
        << "); replacing t by -t is not defined for a semigroup";
    throw TimeOutsideSemigroupDomain(msg.str());
  }
}

}  // namespace

std::string to_string(GamowKind kind) { return kind == GamowKind::kDecaying ? "DECAYING" : "GROWING"; }

std::string to_string(ArrowConvention convention) {
  return convention == ArrowConvention::kBohm ? "BOHM" : "BRUSSELS_AUSTIN";
}

GamowKind gamow_kind_from_string(const std::string& name) {
  if (name == "DECAYING") return GamowKind::kDecaying;
  if (name == "GROWING") return GamowKind::kGrowing;
  throw InvalidArgument("unknown Gamow kind '" + name + "' (expected DECAYING or GROWING)");
}

ArrowConvention arrow_convention_from_string(const std::string& name) {
  if (name == "BOHM") return ArrowConvention::kBohm;
  if (name == "BRUSSELS_AUSTIN") return ArrowConvention::kBrusselsAustin;
  throw InvalidArgument("unknown convention '" + name + "' (expected BOHM or BRUSSELS_AUSTIN)");
}

cplx GamowFunctional::eigenvalue() const {
  return kind == GamowKind::kDecaying ? pole.position() : std::conj(pole.position());
}

bool in_semigroup_domain(GamowKind kind, double t) { return kind == GamowKind::kDecaying ? t >= 0.0 : t <= 0.0; }

cplx evolution_factor(const ComplexPole& pole, GamowKind kind, double t, ArrowConvention convention) {
  require_domain(kind, t);
  return law(pole, kind, t, convention);
}

GamowFunctional evolve_gamow(const GamowFunctional& g, double t, ArrowConvention convention) {
  GamowFunctional out = g;
  out.amplitude = g.amplitude * evolution_factor(g.pole, g.kind, t, convention);
  return out;
}

GamowFunctional evolve_gamow_diagnostic(const GamowFunctional& g, double t, ArrowConvention convention) {
  GamowFunctional out = g;
  out.amplitude = g.amplitude * law(g.pole, g.kind, t, convention);
  return out;
}

double semigroup_residual(const ComplexPole& pole, ArrowConvention convention, GamowKind kind, double t1,
                          double t2) {
  require_domain(kind, t1);
  require_domain(kind, t2);
  const GamowFunctional g{pole, kind, {1.0, 0.0}};
  const cplx stepped = evolve_gamow(evolve_gamow(g, t1, convention), t2, convention).amplitude;
  const cplx direct = evolve_gamow(g, t1 + t2, convention).amplitude;
  return std::abs(stepped - direct);
}

ConventionReport convention_report(const ComplexPole& pole, ArrowConvention convention) {
  ConventionReport r;
  r.convention = convention;
  if (convention == ArrowConvention::kBohm) {
    // States are prepared before observables are registered: states live in
    // the lower-half-plane Hardy class, observables in the upper one, and
    // both one-sided evolutions point to the future.
    r.branches = {
        {GamowKind::kDecaying, "t >= 0", "future-directed (decaying states)", "Phi_+^x (upper half-plane)"},
        {GamowKind::kGrowing, "t <= 0", "future-directed (growing/forming states)", "Phi_-^x (lower half-plane)"},
    };
  } else {
    r.branches = {
        {GamowKind::kDecaying, "t >= 0", "future-directed", "Phi_-^x (lower half-plane)"},
        {GamowKind::kGrowing, "t <= 0", "past-directed", "Phi_+^x (upper half-plane)"},
    };
  }
  r.gamma_decaying_future = -2.0 * std::log(std::abs(evolution_factor(pole, GamowKind::kDecaying, 1.0, convention)));
  return r;
}

ConventionComparison compare_conventions(const ComplexPole& pole) {
  ConventionComparison c;
  c.pole = pole;
  c.conventions = {convention_report(pole, ArrowConvention::kBohm),
                   convention_report(pole, ArrowConvention::kBrusselsAustin)};
  c.roles_reversed = c.conventions[0].branches[0].hardy_space != c.conventions[1].branches[0].hardy_space &&
                     c.conventions[0].branches[1].hardy_space != c.conventions[1].branches[1].hardy_space;
  c.gamma_agrees = c.conventions[0].gamma_decaying_future == c.conventions[1].gamma_decaying_future;
  c.rationale =
      "The time directions identified for the t<0 semigroups differ (future-directed forming states vs. "
      "evolution into the past), and the roles of the Hardy class spaces are reversed; the decay rate "
      "observed on the future-directed decaying branch is the same in both.";
  return c;
}

ConventionComparison compare_conventions(const FriedrichsModel& model) {
  return compare_conventions(find_resonance_pole(model));
}

}  // namespace rigged
