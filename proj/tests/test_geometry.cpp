#include <cmath>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "fracurv/geometry.hpp"
#include "support.hpp"

using namespace fracurv;

TEST_SUITE("geometry") {

TEST_CASE("half-space samples sit on the boundary plane") {
  SamplingSpec spec;
  spec.radii = {0.0, 0.5, 1.0, 2.0, 3.0};
  const auto pts = boundary_sample(Body::half_space(0.0), AmbientDim(1), spec);
  REQUIRE(pts.size() == 5);
  for (const auto& p : pts) {
    CHECK(vertical(p.x) == 0.0);
    CHECK(p.normal.back() == doctest::Approx(1.0));
  }
}

TEST_CASE("ball samples lie on the sphere with radial normals") {
  for (int n : {1, 2, 3}) {
    SamplingSpec spec;
    spec.count = 17;
    const auto pts = boundary_sample(Body::ball(1.0), AmbientDim(n), spec);
    REQUIRE(pts.size() == 17);
    for (const auto& p : pts) {
      double s = 0.0, dot = 0.0;
      for (std::size_t i = 0; i < p.x.size(); ++i) {
        s += p.x[i] * p.x[i];
        dot += p.x[i] * p.normal[i];
      }
      CHECK(std::abs(std::sqrt(s) - 1.0) <= 1e-12);
      CHECK(dot == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("barrier two-leaf heights on a plateau/cone grid") {
  SamplingSpec spec;
  spec.radii = {0.0, 1.0, 2.0, 3.0};
  spec.both_leaves = false;
  const auto pts = boundary_sample(Body::two_leaf(RadialProfile::barrier(0.1)), AmbientDim(1), spec);
  REQUIRE(pts.size() == 4);
  const double expected[] = {0.1, 0.1, 0.2, 0.3};
  for (std::size_t i = 0; i < 4; ++i) CHECK(vertical(pts[i].x) == doctest::Approx(expected[i]).epsilon(1e-14));
}

TEST_CASE("lower leaf mirrors the upper leaf") {
  SamplingSpec spec;
  spec.radii = {0.5, 1.5};
  const auto pts = boundary_sample(Body::two_leaf(RadialProfile::barrier(0.2)), AmbientDim(2), spec);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].upper_leaf);
  CHECK_FALSE(pts[1].upper_leaf);
  CHECK(vertical(pts[1].x) == -vertical(pts[0].x));
  CHECK(pts[1].normal.back() == -pts[0].normal.back());
}

TEST_CASE("membership flips across sampled boundary points along the normal") {
  const Body bodies[] = {Body::two_leaf(RadialProfile::barrier(0.1)), Body::subgraph(RadialProfile::bump(0.5)),
                         Body::ball(2.0), Body::cone(0.3)};
  for (const auto& b : bodies) {
    SamplingSpec spec;
    spec.count = 24;
    const auto pts = boundary_sample(b, AmbientDim(1), spec);
    for (const auto& p : pts) {
      Point in = p.x, out = p.x;
      for (std::size_t i = 0; i < in.size(); ++i) {
        in[i] -= 1e-7 * p.normal[i];
        out[i] += 1e-7 * p.normal[i];
      }
      CHECK(b.contains(in));
      CHECK_FALSE(b.contains(out));
    }
  }
}

TEST_CASE("scaled and complemented bodies") {
  const Body ball = Body::ball(1.0);
  const Body big = Body::scaled(ball, 3.0);
  CHECK(big.contains(2.9, 0.0));
  CHECK_FALSE(big.contains(3.1, 0.0));
  const Body comp = Body::complement(ball);
  CHECK_FALSE(comp.contains(0.5, 0.0));
  CHECK(comp.contains(1.5, 0.0));
  const Body twice = simplify(Body::complement(comp));
  CHECK(std::holds_alternative<body::Ball>(twice.variant()));
  const Body sl = simplify(Body::scaled(Body::two_leaf(RadialProfile::constant(0.5)), 2.0));
  REQUIRE(std::holds_alternative<body::TwoLeaf>(sl.variant()));
  CHECK(std::get<body::TwoLeaf>(sl.variant()).profile(7.0) == doctest::Approx(1.0));
}

TEST_CASE("unwrapped composites are rejected by the sampler") {
  SamplingSpec spec;
  CHECK_THROWS_AS(boundary_sample(Body::complement(Body::ball(1.0)), AmbientDim(1), spec), Error);
}

TEST_CASE("ball curvatures are 1/R in every direction") {
  const auto g = Body::ball(2.0).local_geometry(1.2, 1.6);
  CHECK(g.kappa_meridian == doctest::Approx(0.5));
  CHECK(g.kappa_parallel == doctest::Approx(0.5));
  CHECK(g.normal_r == doctest::Approx(0.6));
  CHECK(g.normal_z == doctest::Approx(0.8));
}

TEST_CASE("sublinearity modulus examples") {
  const auto c1 = sublinearity_modulus(SublinearEnvelope(RadialProfile::constant(1.0)), 0.5, 100.0);
  CHECK(c1.c_delta == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c1.argmax_r == 0.0);
  CHECK(c1.sublinear_on_range);

  // Independent check: sqrt(r) - r/2 peaks at r = 1 with value 1/2; scan by hand.
  double best = 0.0;
  for (int i = 0; i <= 2'000'000; ++i) {
    const double r = 100.0 * i / 2'000'000.0;
    best = std::max(best, std::sqrt(r) - 0.5 * r);
  }
  const auto c2 = sublinearity_modulus(SublinearEnvelope(RadialProfile::sqrt()), 0.5, 100.0);
  CHECK(c2.c_delta == doctest::Approx(best).epsilon(1e-10));
  CHECK(c2.argmax_r == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c2.sublinear_on_range);

  const auto c3 = sublinearity_modulus(SublinearEnvelope(RadialProfile::linear(1.0, 1.0)), 0.5, 100.0);
  CHECK(c3.c_delta == doctest::Approx(51.0));
  CHECK_FALSE(c3.sublinear_on_range);
}

TEST_CASE("modulus is non-increasing in delta") {
  const SublinearEnvelope env(RadialProfile::sqrt(2.0));
  double prev = INFINITY;
  for (double d : {0.01, 0.05, 0.1, 0.5, 1.0}) {
    const double c = sublinearity_modulus(env, d, 1e6).c_delta;
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("non-positive envelope is rejected") {
  CHECK_THROWS_AS(SublinearEnvelope(RadialProfile::linear(-1.0, 1.0)), Error);
  try {
    SublinearEnvelope env(RadialProfile::constant(-1.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidEnvelope);
  }
}

TEST_CASE("closed-form derivatives match central differences") {
  const RadialProfile ps[] = {RadialProfile::barrier(0.1), RadialProfile::bump(2.0, 1.5), RadialProfile::sqrt(3.0),
                              RadialProfile::barrier(0.3, CutoffKind::Septic).scaled(2.0)};
  for (const auto& p : ps) {
    for (double r : {0.3, 0.9, 1.3, 1.7, 2.6, 3.7}) {
      const double h = 1e-5;
      CHECK(p.d1(r) == doctest::Approx((p(r + h) - p(r - h)) / (2 * h)).epsilon(1e-6));
      CHECK(p.d2(r) == doctest::Approx((p.d1(r + h) - p.d1(r - h)) / (2 * h)).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("sampled profile interpolates knots and keeps monotone data monotone") {
  std::vector<double> r, v;
  for (int i = 0; i <= 40; ++i) {
    r.push_back(0.1 * i);
    v.push_back(std::tanh(0.1 * i));
  }
  const auto p = RadialProfile::sampled(r, v);
  CHECK(p.representation() == RadialProfile::Representation::Sampled);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(p(r[i]) == doctest::Approx(v[i]).epsilon(1e-14));
  double prev = p(0.0);
  for (int i = 1; i <= 4000; ++i) {
    const double x = 0.001 * i;
    CHECK(p(x) >= prev - 1e-15);
    prev = p(x);
  }
  CHECK(p(2.05) == doctest::Approx(std::tanh(2.05)).epsilon(1e-4));
  CHECK_THROWS_AS(RadialProfile::sampled({0.0, 0.0}, {1.0, 2.0}), Error);
}

TEST_CASE("profile descriptors and CSV loading") {
  CHECK(parse_profile("kind=linear slope=0.1")(10.0) == doctest::Approx(1.0));
  CHECK(parse_profile("kind=sqrt")(4.0) == doctest::Approx(2.0));
  CHECK(parse_profile("kind=constant level=1")(123.0) == doctest::Approx(1.0));
  CHECK(parse_profile("kind=barrier epsilon=0.1")(3.0) == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_profile("kind=spline"), Error);
  CHECK_THROWS_AS(parse_profile("slope=1"), Error);

  const auto dir = testing_support::scratch_dir("profile_csv");
  {
    std::ofstream f(dir / "p.csv");
    f << "r,value\n0,1\n1,2\n2,2.5\n4,3\n";
  }
  const auto p = load_profile_csv((dir / "p.csv").string());
  CHECK(p(1.0) == doctest::Approx(2.0));
  CHECK(parse_profile("kind=csv path=" + (dir / "p.csv").string())(4.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(load_profile_csv((dir / "missing.csv").string()), Error);
}

TEST_CASE("smoothness at the axis requires a flat profile") {
  CHECK(RadialProfile::barrier(0.1).smooth_at(0.0));
  CHECK_FALSE(RadialProfile::linear(1.0, 1.0).smooth_at(0.0));
  CHECK(RadialProfile::linear(1.0, 1.0).smooth_at(0.5));
}

TEST_CASE("invalid primitives") {
  CHECK_THROWS_AS(Body::ball(0.0), Error);
  CHECK_THROWS_AS(Body::cone(-1.0), Error);
  CHECK_THROWS_AS(FractionalOrder(1.0), Error);
  CHECK_THROWS_AS(AmbientDim(0), Error);
  CHECK(sphere_measure(0) == doctest::Approx(2.0));
  CHECK(sphere_measure(1) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(sphere_measure(2) == doctest::Approx(4.0 * std::numbers::pi));
}

}
