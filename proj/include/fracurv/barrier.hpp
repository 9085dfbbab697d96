#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracurv/geometry.hpp"
#include "fracurv/kernel.hpp"
#include "fracurv/profile.hpp"

namespace fracurv {

/// The two-leaf barrier {|x_{n+1}| < v_eps(|x'|)}.
struct Barrier {
  double epsilon = 0.0;
  CutoffKind cutoff = CutoffKind::Quintic;
  RadialProfile profile;
  Body body = Body::half_space(0.0);
  /// Measured sup_r (|v'| + ||D^2 v||) / eps, with ||D^2 v|| = max(|v''|, |v'|/r).
  double regularity_constant = 0.0;
};

/// Builds v_eps and checks its invariants: eps <= v <= eps (1 + r),
/// v >= eps (1 + r) / 4, and C^2 regularity of the cutoff (InvalidCutoff otherwise).
Barrier build_barrier(double epsilon, CutoffKind cutoff = CutoffKind::Quintic);

/// Largest jump between consecutive second differences of the cutoff on a
/// fine grid across its transition; O(h) for a C^2 cutoff.
double cutoff_second_difference_jump(CutoffKind kind, double h = 1e-3);

struct ConeConstant {
  double epsilon = 0.0;
  double value = 0.0;  ///< M(eps)
  double error = 0.0;
  std::vector<double> radii;   ///< |x| of the evaluation points
  std::vector<double> scaled;  ///< |x|^alpha H at each point
  std::vector<double> errors;
  double max_residual = 0.0;  ///< largest pairwise disagreement of the scaled values
};

/// M(eps) = |x|^alpha H[cone of slope eps](x), averaged over |x| in {2, 5, 10}
/// with the Monte Carlo oracle. Throws HomogeneityViolation when two scaled
/// values differ by more than 3 times their summed errors.
ConeConstant cone_constant(double epsilon, const AmbientDim& n, const FractionalOrder& alpha,
                           const QuadratureConfig& config);

struct ConeSweep {
  std::vector<ConeConstant> rows;
  /// Set when the grid has two or more points: true if M increases strictly,
  /// beyond the error bars, as eps decreases along the grid.
  std::optional<bool> blowup_trend;
};

ConeSweep sweep_cone_constant(const std::vector<double>& grid, const AmbientDim& n,
                              const FractionalOrder& alpha, const QuadratureConfig& config);

enum class Verdict { Positive, NotPositive, Inconclusive };
std::string to_string(Verdict v);

struct VerifySpec {
  /// Boundary radii inside B_4; r_max is clipped to the ball.
  SamplingSpec sampling{{}, 100, 4.0, true, {1.0, 2.0}};
  /// Extra radii on geometric rays from 4 out to ray_max.
  double ray_max = 50.0;
  int ray_count = 20;
  bool far_field_check = true;
  bool half_epsilon_check = true;
  bool bisect_epsilon = true;
  int bisect_steps = 6;
  double bisect_upper = 0.5;
};

struct BarrierSample {
  Point point;
  bool upper_leaf = true;
  CurvatureResult curvature;
  bool failed = false;
};

struct BarrierVerification {
  double epsilon = 0.0;
  int n = 1;
  double alpha = 0.5;
  std::vector<BarrierSample> samples;
  double min_margin = 0.0;  ///< min over samples of H - total error
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> failures;

  std::optional<double> empirical_eps0;
  std::optional<bool> half_epsilon_positive;
  /// |x|^alpha H at the farthest ray point against M(eps).
  std::optional<double> far_field_scaled;
  std::optional<ConeConstant> cone;
  std::optional<bool> far_field_ok;
};

/// Evaluates H on the barrier boundary samples and decides positivity.
/// Extra checks (far field against M(eps), eps/2, bisection) are toggled in VerifySpec.
BarrierVerification verify_barrier(double epsilon, const AmbientDim& n,
                                   const FractionalOrder& alpha, const QuadratureConfig& config,
                                   const VerifySpec& spec = {});

/// Bisection over (0, spec.bisect_upper) for the largest eps whose barrier
/// verifies positive; 0 when none does.
double empirical_eps0(const AmbientDim& n, const FractionalOrder& alpha,
                      const QuadratureConfig& config, const VerifySpec& spec = {});

}  // namespace fracurv
