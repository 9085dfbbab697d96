#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracurv/geometry.hpp"
#include "fracurv/types.hpp"

namespace fracurv {

struct QuadratureConfig {
  /// Radius of the symmetrised principal-value core around x'.
  double pv_inner_radius = 0.1;
  /// Starting outer cutoff; escalates by decades until the tail bound is small.
  double truncation_radius = 1e3;
  double target_tolerance = 1e-6;
  /// Cap on adaptive intervals per integral and on tail escalations.
  int max_subdivisions = 200;
  /// Pair evaluations spent by the Monte Carlo oracle.
  long oracle_samples = 1'000'000;
  /// Gauss-Legendre order of the angular rule (n >= 2 only).
  int angular_order = 24;
  std::uint64_t seed = 20190101;
  /// Worker threads for sample sweeps; results do not depend on it.
  int threads = 1;

  /// Defaults with the core radius tied to a barrier scale: min(0.1, eps/2).
  static QuadratureConfig for_scale(double epsilon);
  void validate() const;
  /// Canonical key=value text of every field that affects results.
  std::string canonical() const;
};

/// H_alpha value with its error decomposition. All error fields are bounds
/// (for Monte Carlo parts, a 3-sigma half-width).
struct CurvatureResult {
  double value = 0.0;
  double error_core = 0.0;
  double error_midfield = 0.0;
  double error_tail = 0.0;
  double truncation_radius = 0.0;
  bool converged = true;

  double total_error() const { return error_core + error_midfield + error_tail; }
};

/// G(t) = int_0^t (1 + tau^2)^{-(n+1+alpha)/2} dtau for one (n, alpha).
class GFunction {
 public:
  GFunction(const AmbientDim& n, const FractionalOrder& alpha);
  double operator()(double t) const;
  /// G(inf) - G(t), accurate for large t.
  double complement(double t) const;
  /// G'(t) = (1 + t^2)^{-(n+1+alpha)/2}
  double derivative(double t) const;
  double infinity() const noexcept { return g_inf_; }

 private:
  double b_;      // (n + alpha) / 2
  double p_;      // (n + 1 + alpha) / 2
  double g_inf_;  // B(1/2, b) / 2
};

double eval_G(double t, const AmbientDim& n, const FractionalOrder& alpha);
double eval_G_infinity(const AmbientDim& n, const FractionalOrder& alpha);

/// Nonlocal mean curvature of {|x_{n+1}| < v(|x'|)} at (x', +-v(|x'|)).
CurvatureResult nmc_twoleaf(const RadialProfile& v, const std::vector<double>& xprime,
                            bool upper_leaf, const AmbientDim& n, const FractionalOrder& alpha,
                            const QuadratureConfig& config);
/// Same, with x' = r e_1.
CurvatureResult nmc_twoleaf(const RadialProfile& v, double r, const AmbientDim& n,
                            const FractionalOrder& alpha, const QuadratureConfig& config);

/// Nonlocal mean curvature of {x_{n+1} < u(|x'|)} at (x', u(|x'|)).
CurvatureResult nmc_subgraph(const RadialProfile& u, const std::vector<double>& xprime,
                             const AmbientDim& n, const FractionalOrder& alpha,
                             const QuadratureConfig& config);
CurvatureResult nmc_subgraph(const RadialProfile& u, double r, const AmbientDim& n,
                             const FractionalOrder& alpha, const QuadratureConfig& config);

/// Direct-definition Monte Carlo evaluation of the principal value at a
/// boundary point x, seeded by config.seed.
CurvatureResult nmc_direct(const Body& body, const Point& x, const AmbientDim& n,
                           const FractionalOrder& alpha, const QuadratureConfig& config);

/// Closed form of H_alpha on the sphere of radius R:
/// (2R)^{-alpha} |S^{n-1}| B(n/2, (1-alpha)/2) / alpha.
double ball_curvature_exact(double radius, const AmbientDim& n, const FractionalOrder& alpha);

/// Axis-aligned box in R^{n+1}.
struct Box {
  Point lo, hi;
  static Box cube(const AmbientDim& n, double half_width);
  Box scaled(double lambda) const;
  double volume() const;
  double diameter() const;
  bool contains(const Point& x) const;
};

using Region = std::function<bool(const Point&)>;

inline Region region_of(const Body& b) {
  return [b](const Point& x) { return b.contains(x); };
}

struct EnergyResult {
  double value = 0.0;
  /// 3-sigma Monte Carlo half-width plus the short-range extrapolation allowance.
  double error = 0.0;
  /// Estimated contribution of pair distances below the innermost shell.
  double short_range = 0.0;
  /// Interactions with points outside the box are omitted.
  bool truncated_to_box = true;
};

/// alpha (1 - alpha) int_{E x F} |x - y|^{-(n+1+alpha)} with x, y restricted to the box.
EnergyResult interaction_energy(const Region& e, const Region& f, const Box& box,
                                const AmbientDim& n, const FractionalOrder& alpha,
                                const QuadratureConfig& config);
EnergyResult interaction_energy(const Body& e, const Body& f, const Box& box, const AmbientDim& n,
                                const FractionalOrder& alpha, const QuadratureConfig& config);

/// Per_alpha(E, Omega) as the sum of the three interaction terms, each
/// restricted to the bounding box. Seeds of the three calls derive from config.seed.
EnergyResult perimeter(const Body& e, const Body& omega, const Box& box, const AmbientDim& n,
                       const FractionalOrder& alpha, const QuadratureConfig& config);

}  // namespace fracurv
