#pragma once

// Countable-norm machinery on the harmonic-oscillator realization of the
// rigged Hilbert space. With Delta = P^2 + Q^2 the oscillator level k is an
// eigenvector of Delta + 1 with eigenvalue 2k + 2, so the scalar products
//
//   (a, b)_n = (a, (Delta + 1)^n b) = sum_k conj(a_k) (2k + 2)^n b_k
//
// define the norm tower whose completion is Phi, and the triplet
// Phi c H c Phi^x is probed through coefficient growth.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rigged {

using cplx = std::complex<double>;

/// Coefficients in the oscillator eigenbasis, either a finite list (zero
/// beyond its end) or a rule k -> c_k for unbounded sequences.
class Sequence {
 public:
  using Rule = std::function<cplx(std::size_t)>;

  Sequence() = default;
  static Sequence finite(std::vector<cplx> coeffs);
  static Sequence rule(Rule r, std::string description);

  cplx operator[](std::size_t k) const;
  /// Number of stored coefficients for finite sequences.
  std::optional<std::size_t> length() const;
  const std::string& description() const noexcept { return description_; }

  /// First k coefficients.
  std::vector<cplx> head(std::size_t k) const;

 private:
  std::vector<cplx> coeffs_;
  Rule rule_;
  std::string description_;
};

/// Finite oscillator-basis state. Throws InvalidArgument on empty or
/// non-finite coefficients.
struct HermiteState {
  std::vector<cplx> coeffs;

  void validate() const;
  Sequence as_sequence() const;
};

/// exp(-|a|^2/2) a^k / sqrt(k!) for k = 0..k_max; renormalized to unit norm
/// when requested.
HermiteState coherent_state(cplx alpha, std::size_t k_max, bool normalize = true);

/// The untruncated coherent state as a rule.
Sequence coherent_sequence(cplx alpha);

/// Raising operator: (a^+ c)_k = sqrt(k) c_{k-1}.
Sequence raise(const Sequence& s);

/// Element of the dual: coefficients may grow without bound.
struct DualFunctional {
  Sequence coeffs;

  static DualFunctional explicit_coeffs(std::vector<cplx> coeffs);
  /// F_k = (k + 1)^order.
  static DualFunctional polynomial(double order);
  /// Coordinate functional e_j.
  static DualFunctional basis(std::size_t j);
};

/// Throws InvalidArgument for empty or non-finite states.
cplx nelson_inner(const HermiteState& a, const HermiteState& b, unsigned n);
double nelson_norm(const HermiteState& s, unsigned n);

enum class TripletClass { kPhi, kHOnly, kPhiDualOnly };
std::string to_string(TripletClass c);

struct ClassifyOptions {
  unsigned n_max = 3;
  std::vector<std::size_t> k_sweep{16, 32, 64, 128};
  /// A norm counts as stabilized once its last increment is below this
  /// fraction of the partial sum ...
  double cauchy_tolerance = 1e-8;
  /// ... or once increments over successive sweep windows shrink by at least
  /// this ratio (a convergent tail), while a ratio at or above
  /// `diverging_ratio` marks divergence. Ratios in between are Inconclusive.
  double converging_ratio = 0.8;
  double diverging_ratio = 0.95;
};

/// Per-norm verdict of the cutoff sweep.
struct NormSweep {
  unsigned n = 0;
  std::vector<double> partial_sums;  ///< ||.||_n^2 truncated at each cutoff
  double increment_ratio = 0.0;      ///< last increment / previous increment
  bool converges = false;
};

struct Classification {
  TripletClass kind = TripletClass::kPhi;
  std::vector<NormSweep> sweeps;  ///< n = 0 .. n_max, or up to the first divergent norm
  std::vector<cplx> probe_pairings;  ///< filled for kPhiDualOnly
};

/// Probe set used to test dual membership: coherent states with
/// alpha in {0.5, 1, 2}.
std::vector<Sequence> dual_probe_set();

/// PHI if every norm up to n_max stabilizes across the sweep, H_ONLY if
/// ||.||_0 does but a higher norm diverges, PHI_DUAL_ONLY if ||.||_0
/// diverges but the pairing with every probe converges.
///
/// Throws InvalidArgument for n_max < 3 or a sweep with fewer than three
/// increasing cutoffs, Inconclusive when a norm neither stabilizes nor
/// clearly diverges, or when a divergent sequence also fails to pair with
/// the probes.
Classification classify_vector(const Sequence& coeffs, const ClassifyOptions& opts = {});

struct PairingOptions {
  double tail_bound = 1e-10;
  /// Summation may run to tail_factor times the state's reference length.
  std::size_t tail_factor = 10;
};

/// sum_k conj(F_k) s_k, summed until a ratio-test bound on the remaining
/// tail drops below `tail_bound`. `k_state` is the reference length of the
/// state (its finite length if it has one). Throws PairingDiverges if the
/// bound is not reached by tail_factor * k_state terms.
cplx dual_pairing(const DualFunctional& f, const Sequence& s, std::size_t k_state, const PairingOptions& opts = {});
cplx dual_pairing(const DualFunctional& f, const HermiteState& s, const PairingOptions& opts = {});

}  // namespace rigged
