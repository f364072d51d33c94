#include "rigged/rational.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "rigged/error.hpp"

namespace rigged {

BarycentricRational::BarycentricRational(std::vector<cplx> nodes, std::vector<cplx> values,
                                         std::vector<cplx> weights)
    : nodes_(std::move(nodes)), values_(std::move(values)), weights_(std::move(weights)) {
  if (nodes_.size() != values_.size() || nodes_.size() != weights_.size()) {
    throw InvalidArgument("barycentric rational: mismatched node/value/weight counts");
  }
}

cplx BarycentricRational::numerator(cplx z) const {
  cplx s{};
  for (std::size_t j = 0; j < nodes_.size(); ++j) s += weights_[j] * values_[j] / (z - nodes_[j]);
  return s;
}

cplx BarycentricRational::denominator(cplx z) const {
  cplx s{};
  for (std::size_t j = 0; j < nodes_.size(); ++j) s += weights_[j] / (z - nodes_[j]);
  return s;
}

cplx BarycentricRational::denominator_derivative(cplx z) const {
  cplx s{};
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const cplx d = z - nodes_[j];
    s -= weights_[j] / (d * d);
  }
  return s;
}

cplx BarycentricRational::operator()(cplx z) const {
  if (nodes_.empty()) return {};
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (z == nodes_[j]) return values_[j];
  }
  return numerator(z) / denominator(z);
}

std::optional<cplx> BarycentricRational::pole_near(cplx seed, double radius) const {
  if (nodes_.size() < 2) return std::nullopt;
  cplx z = seed;
  for (int it = 0; it < 100; ++it) {
    const cplx d = denominator(z);
    const cplx dd = denominator_derivative(z);
    if (std::abs(dd) == 0.0) return std::nullopt;
    const cplx step = d / dd;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(z - seed) > radius) return std::nullopt;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) return z;
  }
  return std::nullopt;
}

cplx BarycentricRational::residue(cplx p) const { return numerator(p) / denominator_derivative(p); }

AaaResult aaa_fit(std::span<const double> x, std::span<const cplx> f, double rel_tol, std::size_t max_terms) {
  const std::size_t m = x.size();
  if (m != f.size() || m < 4) throw InvalidArgument("aaa_fit needs at least 4 matching samples");

  double fmax = 0.0;
  cplx mean{};
  for (cplx v : f) {
    fmax = std::max(fmax, std::abs(v));
    mean += v;
  }
  mean /= static_cast<double>(m);
  AaaResult out;
  if (fmax == 0.0) {
    out.converged = true;
    return out;
  }

  std::vector<bool> is_support(m, false);
  std::vector<std::size_t> support;
  std::vector<cplx> approx(m, mean);
  std::vector<cplx> weights;
  const std::size_t limit = std::min(max_terms, m / 2);

  for (std::size_t step = 0; step < limit; ++step) {
    std::size_t pick = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (is_support[i]) continue;
      const double e = std::abs(f[i] - approx[i]);
      if (e > worst) {
        worst = e;
        pick = i;
      }
    }
    is_support[pick] = true;
    support.push_back(pick);

    std::vector<std::size_t> rest;
    rest.reserve(m - support.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_support[i]) rest.push_back(i);
    }
    const auto ns = static_cast<Eigen::Index>(support.size());
    const auto nr = static_cast<Eigen::Index>(rest.size());
    Eigen::MatrixXcd cauchy(nr, ns);
    Eigen::MatrixXcd loewner(nr, ns);
    for (Eigen::Index i = 0; i < nr; ++i) {
      for (Eigen::Index j = 0; j < ns; ++j) {
        const cplx c = 1.0 / (x[rest[i]] - x[support[j]]);
        cauchy(i, j) = c;
        loewner(i, j) = (f[rest[i]] - f[support[j]]) * c;
      }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(loewner, Eigen::ComputeThinV);
    Eigen::VectorXcd w = svd.matrixV().col(ns - 1);

    Eigen::VectorXcd fs(ns);
    for (Eigen::Index j = 0; j < ns; ++j) fs(j) = f[support[j]];
    const Eigen::VectorXcd num = cauchy * w.cwiseProduct(fs);
    const Eigen::VectorXcd den = cauchy * w;

    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) approx[i] = f[i];
    for (Eigen::Index i = 0; i < nr; ++i) {
      approx[rest[i]] = num(i) / den(i);
      err = std::max(err, std::abs(f[rest[i]] - approx[rest[i]]));
    }
    weights.assign(w.data(), w.data() + ns);
    out.max_error = err;
    if (err <= rel_tol * fmax) {
      out.converged = true;
      break;
    }
  }

  std::vector<cplx> nodes;
  std::vector<cplx> values;
  for (std::size_t j : support) {
    nodes.emplace_back(x[j], 0.0);
    values.push_back(f[j]);
  }
  out.approximant = BarycentricRational(std::move(nodes), std::move(values), std::move(weights));
  return out;
}

}  // namespace rigged
