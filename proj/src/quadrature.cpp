#include "fracurv/quadrature.hpp"

#include <numbers>

#include "fracurv/error.hpp"

namespace fracurv::quad {

Rule gauss_legendre(int m, double a, double b) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be >= 1");
  Rule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(m - 1 - i);
    rule.nodes[lo] = c - h * x;
    rule.nodes[hi] = c + h * x;
    rule.weights[lo] = rule.weights[hi] = h * w;
  }
  return rule;
}

}  // namespace fracurv::quad
