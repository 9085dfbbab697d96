#include <cmath>

#include "doctest.h"
#include "fracurv/sliding.hpp"

using namespace fracurv;

namespace {
const AmbientDim kN(1);
const FractionalOrder kAlpha(0.5);
}  // namespace

TEST_SUITE("sliding") {

TEST_CASE("constant envelope rescale") {
  const auto r = rescale_for_slide(Body::two_leaf(RadialProfile::constant(1.0)),
                                   SublinearEnvelope(RadialProfile::constant(1.0)), 0.05);
  CHECK(r.modulus.c_delta == doctest::Approx(1.0));
  CHECK(r.lambda == doctest::Approx(0.00625).epsilon(1e-14));
  CHECK(candidate_height(r.rescaled)(3.0) == doctest::Approx(0.00625));
}

TEST_CASE("square-root envelope rescale uses the derived modulus") {
  // sqrt(r) - delta r peaks at r = 1/(4 delta^2) with value 1/(4 delta).
  const double delta = 0.05 / 8.0;
  const auto r = rescale_for_slide(Body::two_leaf(RadialProfile::sqrt()), SublinearEnvelope(RadialProfile::sqrt()),
                                   0.05);
  CHECK(r.modulus.c_delta == doctest::Approx(1.0 / (4.0 * delta)).epsilon(1e-10));
  CHECK(r.lambda == doctest::Approx(0.05 / (8.0 * r.modulus.c_delta)).epsilon(1e-14));
}

TEST_CASE("linear growth is stopped at the envelope gate") {
  try {
    rescale_for_slide(Body::two_leaf(RadialProfile::linear(1.0, 1.0)),
                      SublinearEnvelope(RadialProfile::linear(1.0, 1.0)), 0.05);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSublinear);
  }
}

TEST_CASE("envelope that does not bound the candidate") {
  try {
    rescale_for_slide(Body::two_leaf(RadialProfile::constant(2.0)), SublinearEnvelope(RadialProfile::constant(1.0)),
                      0.05);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidEnvelope);
  }
}

TEST_CASE("empty candidate slides all the way down") {
  const auto out = slide(Body::two_leaf(RadialProfile::constant(0.0)), 0.05, kN, kAlpha, QuadratureConfig{});
  CHECK(out.verdict == SlideVerdict::RigidityMechanismConfirmed);
  CHECK(out.eps_star == out.floor);
  CHECK_FALSE(out.touch_point.has_value());
}

TEST_CASE("slab touches at its own height with positive curvature") {
  const double h = 0.00625;
  const auto out = slide(Body::two_leaf(RadialProfile::constant(h)), 0.05, kN, kAlpha, QuadratureConfig{});
  CHECK(out.verdict == SlideVerdict::TouchFound);
  CHECK(std::abs(out.eps_star - h) <= out.grid_tolerance + 1e-12);
  REQUIRE(out.touch_point.has_value());
  CHECK(std::abs((*out.touch_point)[0]) <= 1.0);
  CHECK(std::abs(out.touch_point->back() - h) <= out.grid_tolerance + 1e-12);
  REQUIRE(out.curvature_at_touch.has_value());
  CHECK(out.curvature_at_touch->value - out.curvature_at_touch->total_error() > 0.0);
  CHECK_FALSE(out.interpretation.empty());
}

TEST_CASE("touch height is covariant under dilation of the slab") {
  const QuadratureConfig q;
  const auto a = slide(Body::two_leaf(RadialProfile::constant(0.004)), 0.05, kN, kAlpha, q);
  const auto b = slide(Body::scaled(Body::two_leaf(RadialProfile::constant(0.002)), 2.0), 0.05, kN, kAlpha, q);
  CHECK(a.eps_star == doctest::Approx(b.eps_star).epsilon(1e-9));
}

TEST_CASE("candidate outside the starting barrier") {
  try {
    slide(Body::two_leaf(RadialProfile::linear(0.03, 0.0).shifted(0.001)), 0.05, kN, kAlpha, QuadratureConfig{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InitialInclusion);
  }
}

TEST_CASE("asymptotically conical candidate escapes to infinity") {
  // h(r) = s r^2 / (r + a): flat near the axis, slope s only at infinity, so
  // the first failure radius of F_eps runs off as eps -> s.
  const double s = 0.015, a = 100.0;
  std::vector<double> r{0.0}, h{0.0};
  for (int i = 0; i <= 600; ++i) {
    r.push_back(1e-3 * std::pow(10.0, i / 75.0));
    h.push_back(s * r.back() * r.back() / (r.back() + a));
  }
  const auto out = slide(Body::two_leaf(RadialProfile::sampled(r, h)), 0.05, kN, kAlpha, QuadratureConfig{});
  CHECK(out.verdict == SlideVerdict::UnboundedTouchSequence);
  REQUIRE_FALSE(out.failure_radii.empty());
  CHECK(out.failure_radii.back() > 0.5 * SlideConfig{}.r_max);
  CHECK(out.eps_star == doctest::Approx(s).epsilon(0.05));
}

TEST_CASE("non two-leaf candidates are unsupported") {
  CHECK_THROWS_AS(candidate_height(Body::ball(1.0)), Error);
}

TEST_CASE("grid and verdict names") {
  const auto g = slide_grid(SlideConfig{});
  CHECK(g.front() == 0.0);
  CHECK(std::find(g.begin(), g.end(), 1.0) != g.end());
  CHECK(std::find(g.begin(), g.end(), 2.0) != g.end());
  CHECK(g.back() == doctest::Approx(1e4));
  CHECK(to_string(SlideVerdict::RigidityMechanismConfirmed) == "RIGIDITY_MECHANISM_CONFIRMED");
  CHECK(to_string(SlideVerdict::TouchFound) == "TOUCH_FOUND");
  CHECK(to_string(SlideVerdict::UnboundedTouchSequence) == "UNBOUNDED_TOUCH_SEQUENCE");
}

}
