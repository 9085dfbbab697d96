#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracurv/geometry.hpp"
#include "fracurv/kernel.hpp"

namespace fracurv {

struct SlideRescaling {
  double lambda = 0.0;
  Body rescaled = Body::half_space(0.0);
  ModulusResult modulus;
};

/// lambda = eps0 / (8 C_{eps0/8}) from the envelope modulus; the candidate is
/// scaled by lambda and checked against |y_{n+1}| < (eps0/8)(1 + |y'|) on the grid.
SlideRescaling rescale_for_slide(const Body& candidate, const SublinearEnvelope& envelope,
                                 double eps0, double r_max = 1e6);

struct SlideConfig {
  double floor = 1e-4;
  int iterations = 30;
  double r_max = 1e4;
  int grid_points = 4000;
  /// Consecutive failing levels with failure radius beyond r_max / 2 that count as escape.
  int escape_levels = 3;
};

enum class SlideVerdict { RigidityMechanismConfirmed, TouchFound, UnboundedTouchSequence };
std::string to_string(SlideVerdict v);

struct SlideOutcome {
  double lambda = 1.0;
  double eps_star = 0.0;
  double floor = 1e-4;
  std::optional<Point> touch_point;
  std::optional<CurvatureResult> curvature_at_touch;
  SlideVerdict verdict = SlideVerdict::RigidityMechanismConfirmed;
  std::string interpretation;
  /// Bound on v_hi - v_lo over the grid at the end of the bisection.
  double grid_tolerance = 0.0;
  /// Argmax radius of (height - v_eps) at each level where containment failed.
  std::vector<double> failure_radii;
};

/// Radial grid used for containment: 0, then geometric from 1e-4 to r_max,
/// with the barrier transition radii 1 and 2 inserted.
std::vector<double> slide_grid(const SlideConfig& cfg);

/// Upper-leaf height of a two-leaf candidate (after simplification).
RadialProfile candidate_height(const Body& candidate);

/// Slides the barrier family F_eps down from eps0/2 until it first touches the
/// candidate. Throws InitialInclusion when the candidate is not inside F_{eps0/2}.
SlideOutcome slide(const Body& rescaled, double eps0, const AmbientDim& n,
                   const FractionalOrder& alpha, const QuadratureConfig& config,
                   const SlideConfig& slide_config = {});

}  // namespace fracurv
