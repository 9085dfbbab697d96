#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace fracurv::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = true;
};

namespace detail {
// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * wgk[7];
  double resg = fc * wg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    resk += wgk[j] * (f1[j] + f2[j]);
    resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += wg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = wgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  const double value = resk * h;
  resasc *= std::abs(h);
  resabs *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = 2.220446049250313e-16;
  if (resabs > 1e-300) err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}
}  // namespace detail

/// Globally adaptive Gauss-Kronrod 15 over [breaks.front(), breaks.back()],
/// starting from the given breakpoints (sorted, distinct). Bisects the
/// interval with the largest error estimate until the summed error falls
/// below max(abs_tol, rel_tol |I|) or max_intervals is reached.
template <class F>
Result integrate(F&& f, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                 int max_intervals) {
  Result res;
  std::priority_queue<detail::Segment> heap;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    heap.push(detail::gk15(f, breaks[i], breaks[i + 1]));
  }
  auto totals = [&heap](double& v, double& e) {
    v = 0.0;
    e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
  };
  double value = 0.0, error = 0.0;
  totals(value, error);
  while (!heap.empty() && error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= max_intervals) {
      res.converged = false;
      break;
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in floating point.
      heap.push(worst);
      res.converged = false;
      break;
    }
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  totals(value, error);
  res.value = value;
  res.error = error;
  res.intervals = static_cast<int>(heap.size());
  return res;
}

template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_intervals) {
  return integrate(std::forward<F>(f), std::vector<double>{a, b}, abs_tol, rel_tol, max_intervals);
}

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with m nodes on [a, b].
Rule gauss_legendre(int m, double a, double b);

}  // namespace fracurv::quad
