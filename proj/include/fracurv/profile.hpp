#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fracurv {

/// Smooth cutoff families usable for the barrier plateau-to-cone transition.
/// Each maps [1, 2] onto [1, 0] and is constant outside.
enum class CutoffKind {
  Quintic,  ///< 1 - (6t^5 - 15t^4 + 10t^3); C^2 at both ends
  Septic,   ///< C^3 smootherstep
  Cubic,    ///< 1 - (3t^2 - 2t^3); only C^1, rejected by the barrier builder
};

namespace detail {
struct ProfileImpl {
  virtual ~ProfileImpl() = default;
  virtual double value(double r) const = 0;
  virtual double d1(double r) const = 0;
  virtual double d2(double r) const = 0;
  /// Radii where the profile changes regime (kinks in higher derivatives).
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual std::string describe() const = 0;
};
}  // namespace detail

/// A scalar function of the radius r = |x'| >= 0 with derivative access.
/// Cheap to copy; the underlying representation is immutable and shared.
class RadialProfile {
 public:
  enum class Representation { ClosedForm, Sampled };

  RadialProfile() = default;
  RadialProfile(std::shared_ptr<const detail::ProfileImpl> impl, Representation rep)
      : impl_(std::move(impl)), rep_(rep) {}

  double value(double r) const { return impl_->value(r); }
  double d1(double r) const { return impl_->d1(r); }
  double d2(double r) const { return impl_->d2(r); }
  double operator()(double r) const { return impl_->value(r); }
  std::vector<double> breakpoints() const { return impl_->breakpoints(); }
  std::string describe() const { return impl_->describe(); }
  Representation representation() const { return rep_; }
  explicit operator bool() const { return static_cast<bool>(impl_); }

  /// True when x' -> value(|x'|) is twice differentiable at |x'| = r.
  /// At r = 0 that needs a vanishing first derivative.
  bool smooth_at(double r) const;

  // Closed forms.
  static RadialProfile constant(double level);
  /// intercept + slope * r
  static RadialProfile linear(double slope, double intercept = 0.0);
  /// scale * sqrt(r)
  static RadialProfile sqrt(double scale = 1.0);
  /// amplitude * r^2 * (1 - (r/width)^2)^3 on [0, width], zero beyond.
  static RadialProfile bump(double amplitude = 1.0, double width = 1.0);
  /// eta(r) with eta = 1 on [0,1], 0 on [2, inf).
  static RadialProfile cutoff(CutoffKind kind = CutoffKind::Quintic);
  /// epsilon * (eta(r) + (1 - eta(r)) r): plateau epsilon on B'_1, cone epsilon r outside B'_2.
  static RadialProfile barrier(double epsilon, CutoffKind kind = CutoffKind::Quintic);
  /// Monotone cubic (Fritsch-Carlson) interpolant of the samples; linear
  /// extrapolation with the end slope beyond the last knot.
  static RadialProfile sampled(std::vector<double> r, std::vector<double> values);

  /// lambda * v(r / lambda): the profile of the body scaled by lambda.
  RadialProfile scaled(double lambda) const;
  /// v(r) + shift
  RadialProfile shifted(double shift) const;

 private:
  std::shared_ptr<const detail::ProfileImpl> impl_;
  Representation rep_ = Representation::ClosedForm;
};

double cutoff_value(CutoffKind kind, double r);
double cutoff_d1(CutoffKind kind, double r);
double cutoff_d2(CutoffKind kind, double r);

/// Loads a two-column CSV with header "r,value".
RadialProfile load_profile_csv(const std::string& path);

/// Parses a closed-form identifier such as "kind=linear slope=0.1".
RadialProfile parse_profile(const std::string& descriptor);

}  // namespace fracurv
