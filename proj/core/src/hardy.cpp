#include "rigged/hardy.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rigged/error.hpp"
#include "rigged/spectral.hpp"

namespace rigged {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAliasShare = 1e-4;

double uniform_step(const EnergyWavefunction& phi) {
  if (!phi.is_uniform(1e-6)) throw InvalidGrid("Hardy splitting needs a uniform energy grid; resample first");
  return (phi.grid().back() - phi.grid().front()) / static_cast<double>(phi.size() - 1);
}

// Owning wrapper around a 1-D complex FFTW plan. FFTW_ESTIMATE keeps plan
// selection deterministic, so repeated runs produce identical bits.
class Dft {
 public:
  Dft(std::size_t n, int sign) : n_(n) {
    in_ = fftw_alloc_complex(n);
    out_ = fftw_alloc_complex(n);
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, sign, FFTW_ESTIMATE);
  }
  ~Dft() {
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  std::vector<cplx> operator()(std::span<const cplx> x) {
    for (std::size_t i = 0; i < n_; ++i) {
      in_[i][0] = x[i].real();
      in_[i][1] = x[i].imag();
    }
    fftw_execute(plan_);
    std::vector<cplx> y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[i] = {out_[i][0], out_[i][1]};
    return y;
  }

 private:
  std::size_t n_;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

// Bin j of the forward transform samples G at t_j = 2 pi j / (M dE) for
// j < M/2 and at 2 pi (j - M) / (M dE) otherwise.
bool nonnegative_time(std::size_t j, std::size_t m) { return j < (m + 1) / 2; }

struct Spectrum {
  std::vector<cplx> bins;
  double upper = 0.0;
  double lower = 0.0;
};

Spectrum transform(const EnergyWavefunction& padded) {
  const std::size_t m = padded.size();
  Dft forward(m, FFTW_FORWARD);
  Spectrum s;
  s.bins = forward(padded.values());

  // The half-line energies are trapezoid sums over the periodic time grid:
  // the endpoint bins t = 0 and (for even m) the Nyquist time are shared
  // half and half. A profile that jumps at t = 0, as for 1/(E - i), would
  // otherwise leak a share ~ pi / (E_max - E_min) into the wrong half.
  double total = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double e = std::norm(s.bins[j]);
    if (j == 0 || (m % 2 == 0 && j == m / 2)) {
      s.upper += 0.5 * e;
      s.lower += 0.5 * e;
    } else {
      (nonnegative_time(j, m) ? s.upper : s.lower) += e;
    }
    total += e;
    const std::size_t dist = std::min(j, m - j);  // |t| in units of the time step
    if (4 * dist >= 3 * (m / 2)) outer += e;
  }
  if (total > 0.0 && outer > kAliasShare * total) {
    std::ostringstream msg;
    msg << "the outer quarter of the resolvable time window holds " << outer / total
        << " of the time-domain energy; refine the energy grid";
    throw AliasRisk(msg.str());
  }
  return s;
}

}  // namespace

double TimeProfile::energy() const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    sum += 0.5 * (times[i + 1] - times[i]) * (std::norm(values[i]) + std::norm(values[i + 1]));
  }
  return sum / (2.0 * kPi);
}

TimeProfile time_profile(const EnergyWavefunction& phi, std::span<const double> times) {
  double max_step = 0.0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) max_step = std::max(max_step, phi.grid()[i + 1] - phi.grid()[i]);
  const double nyquist = kPi / max_step;
  TimeProfile p;
  p.times.assign(times.begin(), times.end());
  p.values.reserve(times.size());
  for (double t : times) {
    if (std::abs(t) > nyquist) {
      std::ostringstream msg;
      msg << "|t| = " << std::abs(t) << " exceeds the Nyquist time " << nyquist << " of the energy grid";
      throw AliasRisk(msg.str());
    }
    p.values.push_back(fourier_density(phi.grid(), phi.values(), t));
  }
  return p;
}

EnergyWavefunction pad_symmetric(const EnergyWavefunction& phi) {
  const double de = uniform_step(phi);
  const double lo = phi.grid().front();
  const double hi = phi.grid().back();
  // Whole steps only, and never for an imbalance below half a step, so an
  // already padded grid is left alone.
  const auto steps = [de](double gap) {
    return gap > 0.5 * de ? static_cast<std::size_t>(std::llround(gap / de)) : std::size_t{0};
  };
  const std::size_t left = steps(lo + hi);    // lo > -hi: extend downwards
  const std::size_t right = steps(-lo - hi);  // hi < -lo: extend upwards
  const std::size_t n = phi.size() + left + right;
  std::vector<double> grid(n);
  std::vector<cplx> values(n, cplx{});
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + (static_cast<double>(i) - static_cast<double>(left)) * de;
  }
  for (std::size_t i = 0; i < phi.size(); ++i) values[left + i] = phi.values()[i];
  return EnergyWavefunction(std::move(grid), std::move(values));
}

HardySplit hardy_split(const EnergyWavefunction& phi) {
  const EnergyWavefunction padded = pad_symmetric(phi);
  const std::size_t m = padded.size();
  const Spectrum s = transform(padded);

  std::vector<cplx> up_bins(m, cplx{}), low_bins(m, cplx{});
  for (std::size_t j = 0; j < m; ++j) (nonnegative_time(j, m) ? up_bins : low_bins)[j] = s.bins[j];

  Dft backward(m, FFTW_BACKWARD);
  std::vector<cplx> up = backward(up_bins);
  std::vector<cplx> low = backward(low_bins);
  const double inv = 1.0 / static_cast<double>(m);
  for (auto& v : up) v *= inv;
  for (auto& v : low) v *= inv;

  std::vector<double> grid(padded.grid().begin(), padded.grid().end());
  HardySplit out{EnergyWavefunction(grid, std::move(up)), EnergyWavefunction(grid, std::move(low)),
                 m - phi.size()};
  return out;
}

std::string to_string(HardyClass c) {
  switch (c) {
    case HardyClass::kStateLike:
      return "state_like";
    case HardyClass::kObservableLike:
      return "observable_like";
    case HardyClass::kMixed:
      break;
  }
  return "mixed";
}

HardyClass HardyScores::classification(double threshold) const {
  if (lower_fraction >= threshold) return HardyClass::kStateLike;
  if (upper_fraction >= threshold) return HardyClass::kObservableLike;
  return HardyClass::kMixed;
}

HardyScores hardy_scores(const EnergyWavefunction& phi) {
  const EnergyWavefunction padded = pad_symmetric(phi);
  const Spectrum s = transform(padded);
  const double total = s.upper + s.lower;
  if (!(total > 0.0)) throw InvalidArgument("the zero function has no Hardy scores");
  HardyScores h;
  h.upper_fraction = s.upper / total;
  h.lower_fraction = s.lower / total;
  h.padded_samples = padded.size() - phi.size();
  return h;
}

}  // namespace rigged
