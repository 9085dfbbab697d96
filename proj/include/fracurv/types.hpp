#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fracurv/error.hpp"

namespace fracurv {

/// Order of the fractional kernel, strictly inside (0, 1).
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "fractional order must lie in (0,1)");
    }
  }
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Horizontal dimension n; boundary points live in R^{n+1}.
class AmbientDim {
 public:
  explicit AmbientDim(int n) : n_(n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension n must be >= 1");
  }
  int value() const noexcept { return n_; }
  int total() const noexcept { return n_ + 1; }

 private:
  int n_;
};

/// A point of R^{n+1}; the last coordinate is the vertical one.
using Point = std::vector<double>;

inline double horizontal_norm(const Point& x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

inline double vertical(const Point& x) { return x.back(); }

/// Builds (r e_1, z) in R^{n+1}.
inline Point axial_point(const AmbientDim& n, double r, double z) {
  Point p(static_cast<std::size_t>(n.total()), 0.0);
  p[0] = r;
  p.back() = z;
  return p;
}

/// Surface measure of the unit sphere S^{k} in R^{k+1}; S^0 has measure 2.
double sphere_measure(int k);

}  // namespace fracurv
