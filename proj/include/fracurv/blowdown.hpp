#pragma once

#include <optional>

#include "fracurv/geometry.hpp"

namespace fracurv {

/// E_R = E / R after translating vertically so that 0 lies on the boundary.
/// Subgraphs stay subgraphs (profile u(R r)/R) and half-spaces map to half-spaces.
Body blowdown_rescale(const Body& e, double R);

struct FlatnessCertificate {
  double R = 0.0;
  double epsilon = 0.0;
  bool passed = false;
  /// First (r, u(R r)/R) sample outside [-epsilon, epsilon], if any.
  std::optional<Point> violator;
  double sup = 0.0;
  double inf = 0.0;
  /// 2 C_{eps/2} / eps from the envelope modulus.
  double R_eps_predicted = 0.0;
  /// True when (R >= R_eps_predicted) implies passed, i.e. the prediction is not contradicted.
  bool agrees_with_prediction = true;
};

/// Checks |u(R r)/R| <= epsilon for r in [0, 1] (u translated so u(0) = 0)
/// on a dense grid. Throws InvalidEpsilon unless 0 < epsilon < 1/4.
FlatnessCertificate flatness_certificate(const Body& e, const SublinearEnvelope& envelope,
                                         double epsilon, double R, int samples = 2001);

struct HolderCheck {
  double lhs = 0.0;  ///< seminorm of grad u over B'_{R/4}
  double rhs = 0.0;  ///< seminorm of grad u_R over B'_{1/4}, divided by R^beta
};

/// Discrete beta-Holder seminorm of grad u along a diameter, at matched
/// samples s_i R/4 and s_i/4 with s_i = -1 + (i + 1/2) 2/N (0 is never sampled).
/// Throws InvalidExponent unless 0 < beta < 1.
HolderCheck holder_rescaling_check(const RadialProfile& u, double R, double beta, int samples = 200);

}  // namespace fracurv
