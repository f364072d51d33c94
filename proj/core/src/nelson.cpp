#include "rigged/nelson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rigged/error.hpp"

namespace rigged {

namespace {

double level_weight(std::size_t k, unsigned n) { return std::pow(2.0 * static_cast<double>(k) + 2.0, n); }

}  // namespace

// ---------------------------------------------------------------------------
// Sequences

Sequence Sequence::finite(std::vector<cplx> coeffs) {
  Sequence s;
  s.description_ = "finite(" + std::to_string(coeffs.size()) + ")";
  s.coeffs_ = std::move(coeffs);
  return s;
}

Sequence Sequence::rule(Rule r, std::string description) {
  if (!r) throw InvalidArgument("sequence rule is empty");
  Sequence s;
  s.rule_ = std::move(r);
  s.description_ = std::move(description);
  return s;
}

cplx Sequence::operator[](std::size_t k) const {
  if (rule_) return rule_(k);
  return k < coeffs_.size() ? coeffs_[k] : cplx{};
}

std::optional<std::size_t> Sequence::length() const {
  if (rule_) return std::nullopt;
  return coeffs_.size();
}

std::vector<cplx> Sequence::head(std::size_t k) const {
  std::vector<cplx> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = (*this)[i];
  return out;
}

void HermiteState::validate() const {
  if (coeffs.empty()) throw InvalidArgument("Hermite state needs at least one coefficient");
  for (cplx c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("Hermite state coefficients must be finite");
    }
  }
}

Sequence HermiteState::as_sequence() const { return Sequence::finite(coeffs); }

Sequence coherent_sequence(cplx alpha) {
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  return Sequence::rule(
      [r, theta](std::size_t k) -> cplx {
        const double kd = static_cast<double>(k);
        if (r == 0.0) return k == 0 ? cplx{1.0, 0.0} : cplx{};
        const double log_mod = kd * std::log(r) - 0.5 * std::lgamma(kd + 1.0) - 0.5 * r * r;
        return std::polar(std::exp(log_mod), kd * theta);
      },
      "coherent");
}

HermiteState coherent_state(cplx alpha, std::size_t k_max, bool normalize) {
  HermiteState s{coherent_sequence(alpha).head(k_max + 1)};
  if (normalize) {
    double n2 = 0.0;
    for (cplx c : s.coeffs) n2 += std::norm(c);
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& c : s.coeffs) c *= inv;
  }
  return s;
}

Sequence raise(const Sequence& s) {
  const std::optional<std::size_t> n = s.length();
  if (n) {
    std::vector<cplx> out(*n + 1);
    for (std::size_t k = 1; k <= *n; ++k) out[k] = std::sqrt(static_cast<double>(k)) * s[k - 1];
    return Sequence::finite(std::move(out));
  }
  return Sequence::rule(
      [s](std::size_t k) -> cplx { return k == 0 ? cplx{} : std::sqrt(static_cast<double>(k)) * s[k - 1]; },
      "raised " + s.description());
}

DualFunctional DualFunctional::explicit_coeffs(std::vector<cplx> coeffs) {
  return DualFunctional{Sequence::finite(std::move(coeffs))};
}

DualFunctional DualFunctional::polynomial(double order) {
  if (!std::isfinite(order)) throw InvalidArgument("polynomial growth order must be finite");
  return DualFunctional{Sequence::rule(
      [order](std::size_t k) -> cplx { return {std::pow(static_cast<double>(k) + 1.0, order), 0.0}; },
      "polynomial")};
}

DualFunctional DualFunctional::basis(std::size_t j) {
  std::vector<cplx> c(j + 1);
  c[j] = 1.0;
  return explicit_coeffs(std::move(c));
}

// ---------------------------------------------------------------------------
// Norms

cplx nelson_inner(const HermiteState& a, const HermiteState& b, unsigned n) {
  a.validate();
  b.validate();
  const std::size_t k_end = std::min(a.coeffs.size(), b.coeffs.size());
  cplx sum{};
  for (std::size_t k = 0; k < k_end; ++k) sum += std::conj(a.coeffs[k]) * level_weight(k, n) * b.coeffs[k];
  return sum;
}

double nelson_norm(const HermiteState& s, unsigned n) { return std::sqrt(nelson_inner(s, s, n).real()); }

// ---------------------------------------------------------------------------
// Classification

std::string to_string(TripletClass c) {
  switch (c) {
    case TripletClass::kPhi:
      return "PHI";
    case TripletClass::kHOnly:
      return "H_ONLY";
    case TripletClass::kPhiDualOnly:
      break;
  }
  return "PHI_DUAL_ONLY";
}

std::vector<Sequence> dual_probe_set() {
  return {coherent_sequence(0.5), coherent_sequence(1.0), coherent_sequence(2.0)};
}

namespace {

NormSweep sweep_norm(const std::vector<double>& moduli_sq, unsigned n, const ClassifyOptions& opts) {
  NormSweep s;
  s.n = n;
  double sum = 0.0;
  std::size_t k = 0;
  for (std::size_t cutoff : opts.k_sweep) {
    for (; k < cutoff; ++k) sum += moduli_sq[k] * level_weight(k, n);
    s.partial_sums.push_back(sum);
  }
  const std::size_t m = s.partial_sums.size();
  const double last = s.partial_sums[m - 1] - s.partial_sums[m - 2];
  const double prev = s.partial_sums[m - 2] - s.partial_sums[m - 3];
  s.increment_ratio = prev > 0.0 ? last / prev : (last > 0.0 ? INFINITY : 0.0);
  if (last <= opts.cauchy_tolerance * s.partial_sums[m - 1] || s.increment_ratio <= opts.converging_ratio) {
    s.converges = true;
  } else if (s.increment_ratio >= opts.diverging_ratio) {
    s.converges = false;
  } else {
    std::ostringstream msg;
    msg << "norm " << n << " neither stabilizes nor diverges across the cutoff sweep (increment ratio "
        << s.increment_ratio << ")";
    throw Inconclusive(msg.str());
  }
  return s;
}

}  // namespace

Classification classify_vector(const Sequence& coeffs, const ClassifyOptions& opts) {
  if (opts.n_max < 3) throw InvalidArgument("classification needs n_max >= 3");
  if (opts.k_sweep.size() < 3) throw InvalidArgument("cutoff sweep needs at least three cutoffs");
  for (std::size_t i = 0; i < opts.k_sweep.size(); ++i) {
    if (opts.k_sweep[i] == 0 || (i > 0 && opts.k_sweep[i] <= opts.k_sweep[i - 1])) {
      throw InvalidArgument("cutoff sweep must be strictly increasing and positive");
    }
  }

  const std::size_t k_max = opts.k_sweep.back();
  std::vector<double> moduli_sq(k_max);
  for (std::size_t k = 0; k < k_max; ++k) {
    const cplx c = coeffs[k];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("coefficient " + std::to_string(k) + " is not finite");
    }
    moduli_sq[k] = std::norm(c);
  }

  Classification out;
  for (unsigned n = 0; n <= opts.n_max; ++n) {
    out.sweeps.push_back(sweep_norm(moduli_sq, n, opts));
    if (!out.sweeps.back().converges) break;
  }

  if (out.sweeps.back().converges) {
    out.kind = TripletClass::kPhi;
  } else if (out.sweeps.size() > 1) {
    out.kind = TripletClass::kHOnly;
  } else {
    const DualFunctional f{coeffs};
    try {
      for (const Sequence& probe : dual_probe_set()) out.probe_pairings.push_back(dual_pairing(f, probe, k_max));
    } catch (const PairingDiverges& e) {
      throw Inconclusive(std::string("sequence is outside H and does not pair with the probe set: ") + e.what());
    }
    out.kind = TripletClass::kPhiDualOnly;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pairing

cplx dual_pairing(const DualFunctional& f, const Sequence& s, std::size_t k_state, const PairingOptions& opts) {
  if (k_state == 0) throw InvalidArgument("reference length of the state must be positive");
  std::optional<std::size_t> exact_end;
  if (s.length()) exact_end = *s.length();
  if (f.coeffs.length()) exact_end = exact_end ? std::min(*exact_end, *f.coeffs.length()) : *f.coeffs.length();

  constexpr std::size_t kWindow = 8;
  const std::size_t k_limit = opts.tail_factor * k_state;
  cplx sum{};
  std::vector<double> recent;
  for (std::size_t k = 0; k < k_limit; ++k) {
    if (exact_end && k >= *exact_end) return sum;  // remaining terms vanish identically
    const cplx term = std::conj(f.coeffs[k]) * s[k];
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) break;
    sum += term;
    recent.push_back(std::abs(term));
    if (recent.size() > kWindow + 1) recent.erase(recent.begin());
    if (recent.size() == kWindow + 1) {
      // Largest successive ratio over the window bounds the geometric tail.
      double ratio = 0.0;
      bool all_zero = true;
      for (std::size_t i = 0; i < kWindow; ++i) {
        if (recent[i] > 0.0) {
          all_zero = false;
          ratio = std::max(ratio, recent[i + 1] / recent[i]);
        } else if (recent[i + 1] > 0.0) {
          ratio = INFINITY;
        }
      }
      if (all_zero && recent.back() == 0.0) continue;
      if (ratio < 1.0 && recent.back() * ratio / (1.0 - ratio) < opts.tail_bound) return sum;
    }
  }
  std::ostringstream msg;
  msg << "tail bound " << opts.tail_bound << " not reached within " << k_limit << " terms pairing a "
      << f.coeffs.description() << " functional with a " << s.description() << " state";
  throw PairingDiverges(msg.str());
}

cplx dual_pairing(const DualFunctional& f, const HermiteState& s, const PairingOptions& opts) {
  s.validate();
  return dual_pairing(f, s.as_sequence(), s.coeffs.size(), opts);
}

}  // namespace rigged
