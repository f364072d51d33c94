#include "rigged/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "rigged/error.hpp"

namespace rigged::fit {

LineFit line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw InvalidArgument("line fit needs at least two matching points");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("line fit needs distinct abscissae");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (out.slope * x[i] + out.intercept);
    ss += r * r;
  }
  out.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return out;
}

std::vector<double> unwrapped_phase(std::span<const std::complex<double>> z) {
  std::vector<double> out(z.size());
  double offset = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double raw = std::arg(z[i]);
    if (i > 0) {
      double d = raw + offset - out[i - 1];
      while (d > std::numbers::pi) {
        offset -= 2.0 * std::numbers::pi;
        d -= 2.0 * std::numbers::pi;
      }
      while (d < -std::numbers::pi) {
        offset += 2.0 * std::numbers::pi;
        d += 2.0 * std::numbers::pi;
      }
    }
    out[i] = raw + offset;
  }
  return out;
}

LorentzianFit lorentzian(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 4) throw InvalidArgument("Lorentzian fit needs at least four points");

  // Initial guess: peak location, height and half-height width.
  const auto top = std::max_element(y.begin(), y.end());
  const std::size_t ip = static_cast<std::size_t>(top - y.begin());
  double peak = *top;
  double center = x[ip];
  std::size_t lo = ip, hi = ip;
  while (lo > 0 && y[lo] > 0.5 * peak) --lo;
  while (hi + 1 < n && y[hi] > 0.5 * peak) ++hi;
  double hw = std::max(0.5 * (x[hi] - x[lo]), 1e-12);

  auto residual_ss = [&](double p, double c, double h) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i] - c;
      const double r = y[i] - p * h * h / (d * d + h * h);
      ss += r * r;
    }
    return ss;
  };

  double mu = 1e-3;
  double ss = residual_ss(peak, center, hw);
  for (int it = 0; it < 200; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i] - center;
      const double q = d * d + hw * hw;
      const double model = peak * hw * hw / q;
      Eigen::Vector3d g;
      g(0) = hw * hw / q;
      g(1) = peak * hw * hw * 2.0 * d / (q * q);
      g(2) = peak * (2.0 * hw * q - hw * hw * 2.0 * hw) / (q * q);
      jtj += g * g.transpose();
      jtr += g * (y[i] - model);
    }
    Eigen::Matrix3d a = jtj;
    a.diagonal() *= (1.0 + mu);
    const Eigen::Vector3d step = a.ldlt().solve(jtr);
    const double trial = residual_ss(peak + step(0), center + step(1), hw + step(2));
    if (trial < ss && hw + step(2) > 0.0) {
      peak += step(0);
      center += step(1);
      hw += step(2);
      const double gain = ss - trial;
      ss = trial;
      mu = std::max(mu * 0.3, 1e-12);
      if (gain < 1e-15 * (1.0 + ss)) break;
    } else {
      mu *= 10.0;
      if (mu > 1e12) break;
    }
  }
  return {center, 2.0 * hw, peak, std::sqrt(ss / static_cast<double>(n))};
}

}  // namespace rigged::fit
