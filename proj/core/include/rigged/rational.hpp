#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rigged {

using cplx = std::complex<double>;

/// Rational function in barycentric form
///   r(z) = sum_j w_j f_j / (z - z_j)  /  sum_j w_j / (z - z_j).
class BarycentricRational {
 public:
  BarycentricRational() = default;
  BarycentricRational(std::vector<cplx> nodes, std::vector<cplx> values, std::vector<cplx> weights);

  cplx operator()(cplx z) const;

  /// Zero of the denominator reached by Newton iteration from `seed`, if it
  /// stays within `radius` of the seed.
  std::optional<cplx> pole_near(cplx seed, double radius) const;
  /// Residue of r at a simple pole `p` (a zero of the denominator).
  cplx residue(cplx p) const;

  std::size_t degree() const noexcept { return nodes_.empty() ? 0 : nodes_.size() - 1; }
  std::span<const cplx> nodes() const noexcept { return nodes_; }

 private:
  cplx numerator(cplx z) const;
  cplx denominator(cplx z) const;
  cplx denominator_derivative(cplx z) const;

  std::vector<cplx> nodes_;
  std::vector<cplx> values_;
  std::vector<cplx> weights_;
};

struct AaaResult {
  BarycentricRational approximant;
  double max_error = 0.0;  ///< max |f - r| over the non-support samples
  bool converged = false;
};

/// Adaptive Antoulas-Anderson rational approximation of samples (x_i, f_i):
/// greedy support selection with the least-squares weight vector from the
/// SVD of the Loewner matrix. Stops when the max error falls below
/// rel_tol * max|f| or `max_terms` support points are in use.
AaaResult aaa_fit(std::span<const double> x, std::span<const cplx> f, double rel_tol = 1e-13,
                  std::size_t max_terms = 80);

}  // namespace rigged
