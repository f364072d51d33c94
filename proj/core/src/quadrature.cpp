#include "rigged/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "rigged/error.hpp"

namespace rigged::quad {
namespace {

// Kronrod abscissae (descending) and weights; Gauss weights for the
// embedded 7-point rule sit on the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  cplx value;
  double error;
  bool roundoff_limited;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = f(center);
  cplx kronrod = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  std::array<cplx, 7> f1{};
  std::array<cplx, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const cplx sum = f1[j] + f2[j];
    kronrod += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  const cplx mean = kronrod * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double abs_half = std::abs(half);
  resasc *= abs_half;
  resabs *= abs_half;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  bool floor_hit = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    const double floor = 50.0 * eps * resabs;
    floor_hit = err <= floor;
    err = std::max(floor, err);
  }
  return {a, b, kronrod * half, err, floor_hit};
}

}  // namespace

Result integrate(const std::function<cplx(double)>& f, double a, double b, const Options& opts,
                 std::span<const double> breakpoints) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw QuadratureFailure("integration limits must be finite");
  }
  if (a == b) return {cplx{}, 0.0, 0};

  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > edges.back() && p < b) edges.push_back(p);
  }
  edges.push_back(b);

  std::priority_queue<Panel, std::vector<Panel>, ByError> work;
  std::vector<Panel> done;
  cplx total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gk15(f, edges[i], edges[i + 1]);
    total += p.value;
    total_err += p.error;
    work.push(p);
  }

  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  std::size_t count = work.size();
  while (total_err > tolerance()) {
    if (count >= opts.max_intervals) {
      std::ostringstream msg;
      msg << "no convergence on [" << a << ", " << b << "] after " << count
          << " subintervals (error estimate " << total_err << ")";
      throw QuadratureFailure(msg.str());
    }
    if (work.top().roundoff_limited) break;  // remaining error is rounding noise
    Panel worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in double precision.
      done.push_back(worst);
      if (work.empty()) break;
      continue;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    ++count;
  }

  while (!work.empty()) {
    done.push_back(work.top());
    work.pop();
  }
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  cplx sum{};
  double err = 0.0;
  for (const Panel& p : done) {
    sum += p.value;
    err += p.error;
  }
  return {sum, err, done.size()};
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opts, std::span<const double> breakpoints) {
  auto wrapped = [&f](double x) { return cplx(f(x), 0.0); };
  return integrate(wrapped, a, b, opts, breakpoints).value.real();
}

}  // namespace rigged::quad
