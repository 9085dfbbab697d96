#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracurv/profile.hpp"
#include "fracurv/types.hpp"

namespace fracurv {

class Body;

namespace body {
/// {|x_{n+1}| < v(|x'|)}
struct TwoLeaf {
  RadialProfile profile;
};
/// {x_{n+1} < u(|x'|)}
struct Subgraph {
  RadialProfile profile;
};
/// {-slope |x'| < x_{n+1} < slope |x'|}
struct Cone {
  double slope;
};
/// Open ball of the given radius centred at the origin.
struct Ball {
  double radius;
};
/// {x_{n+1} < offset}
struct HalfSpace {
  double offset;
};
struct Complement {
  std::shared_ptr<const Body> inner;
};
/// {lambda y : y in inner}
struct Scaled {
  std::shared_ptr<const Body> inner;
  double factor;
};
}  // namespace body

/// Outward unit normal in the meridian half-plane (r, z) and the signed
/// principal curvatures at a boundary point. Curvatures are positive where
/// the body is locally convex. The parallel curvature has multiplicity n-1.
struct LocalGeometry {
  double normal_r = 0.0;
  double normal_z = 0.0;
  double kappa_meridian = 0.0;
  double kappa_parallel = 0.0;

  double mean_curvature(int n) const {
    return (kappa_meridian + (n - 1) * kappa_parallel) / n;
  }
};

/// Rotationally symmetric (about the vertical axis) measurable set of R^{n+1}.
/// Membership depends only on r = |x'| and z = x_{n+1}.
class Body {
 public:
  using Variant = std::variant<body::TwoLeaf, body::Subgraph, body::Cone, body::Ball,
                               body::HalfSpace, body::Complement, body::Scaled>;

  explicit Body(Variant v) : v_(std::move(v)) {}

  static Body two_leaf(RadialProfile v) { return Body(body::TwoLeaf{std::move(v)}); }
  static Body subgraph(RadialProfile u) { return Body(body::Subgraph{std::move(u)}); }
  static Body cone(double slope);
  static Body ball(double radius);
  static Body half_space(double offset) { return Body(body::HalfSpace{offset}); }
  static Body complement(Body inner);
  static Body scaled(Body inner, double factor);

  const Variant& variant() const noexcept { return v_; }
  std::string kind() const;

  bool contains(double r, double z) const;
  bool contains(const Point& x) const { return contains(horizontal_norm(x), vertical(x)); }

  /// Normal and curvatures at the boundary point (r, z); the point must lie
  /// on a smooth part of the boundary.
  LocalGeometry local_geometry(double r, double z) const;

 private:
  Variant v_;
};

/// Removes Scaled/Complement wrappers where an equivalent primitive exists:
/// scaled profiles, scaled balls/cones/half-spaces, and double complements.
Body simplify(const Body& b);

struct SamplingSpec {
  /// Radii |x'| to sample; generated from count/r_max when empty.
  std::vector<double> radii;
  int count = 64;
  double r_max = 4.0;
  bool both_leaves = true;
  /// Radii around which the generated grid is refined.
  std::vector<double> refine_near = {1.0, 2.0};
};

struct BoundarySample {
  Point x;
  Point normal;  ///< outward unit normal
  bool upper_leaf = true;
};

/// Generated radial grid: geometric spacing with forced refinement near the
/// requested radii; always includes 0 and r_max.
std::vector<double> radial_grid(const SamplingSpec& spec);

std::vector<BoundarySample> boundary_sample(const Body& body, const AmbientDim& n,
                                            const SamplingSpec& spec);

/// A positive profile phi bounding a candidate, with sublinear growth claimed.
class SublinearEnvelope {
 public:
  explicit SublinearEnvelope(RadialProfile phi, double r_check = 1e6);
  const RadialProfile& phi() const noexcept { return phi_; }

 private:
  RadialProfile phi_;
};

struct ModulusResult {
  double c_delta = 0.0;
  double argmax_r = 0.0;
  /// False when the maximiser sits at the range edge or phi(r_max)/r_max >= delta,
  /// i.e. the bound is not witnessed on the range.
  bool sublinear_on_range = true;
};

/// Smallest C with phi(r) <= C + delta r on [0, r_max]: grid maximum, polished
/// by a bracketed 1-D search around the maximising node.
ModulusResult sublinearity_modulus(const SublinearEnvelope& env, double delta, double r_max = 1e6);

/// Dense grid used by the envelope modulus (0, then geometric up to r_max with
/// exact powers of ten included).
std::vector<double> modulus_grid(double r_max);

}  // namespace fracurv
