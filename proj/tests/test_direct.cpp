#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracurv/kernel.hpp"
#include "oracles.hpp"

using namespace fracurv;

TEST_SUITE("direct") {

TEST_CASE("half-space cancels exactly") {
  const QuadratureConfig q;
  for (double alpha : {0.2, 0.5, 0.8}) {
    const auto r = nmc_direct(Body::half_space(0.0), axial_point(AmbientDim(1), 0.0, 0.0), AmbientDim(1),
                              FractionalOrder(alpha), q);
    CHECK(r.value == 0.0);
    CHECK(std::isfinite(r.total_error()));
  }
}

TEST_CASE("closed-form sphere value against an independent quadrature") {
  for (int n : {1, 2, 3}) {
    for (double alpha : {0.2, 0.5, 0.8}) {
      const double exact = ball_curvature_exact(1.5, AmbientDim(n), FractionalOrder(alpha));
      CHECK(exact == doctest::Approx(oracle::ball(1.5, n, alpha)).epsilon(1e-8));
    }
  }
}

TEST_CASE("oracle reproduces the sphere value at several boundary points") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  const double exact = ball_curvature_exact(1.0, n, a);
  QuadratureConfig q;
  int k = 0;
  for (double th : {0.0, 0.7, 1.3, std::numbers::pi / 2}) {
    q.seed = 100 + k++;
    const auto r = nmc_direct(Body::ball(1.0), axial_point(n, std::cos(th), std::sin(th)), n, a, q);
    CHECK(std::abs(r.value - exact) <= r.total_error());
    CHECK(std::abs(r.value - exact) <= 0.01 * exact);
  }
}

TEST_CASE("oracle on a sphere in R^3") {
  const AmbientDim n(2);
  const FractionalOrder a(0.4);
  const QuadratureConfig q;
  const auto r = nmc_direct(Body::ball(2.0), axial_point(n, 1.2, 1.6), n, a, q);
  CHECK(std::abs(r.value - ball_curvature_exact(2.0, n, a)) <= r.total_error());
}

TEST_CASE("complement flips the sign") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  const QuadratureConfig q;
  const Point x = axial_point(n, 0.6, 0.8);
  const auto in = nmc_direct(Body::ball(1.0), x, n, a, q);
  const auto out = nmc_direct(Body::complement(Body::ball(1.0)), x, n, a, q);
  CHECK(std::abs(in.value + out.value) <= 2.0 * (in.total_error() + out.total_error()));
}

TEST_CASE("dilation law on the sphere") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  const QuadratureConfig q;
  const auto base = nmc_direct(Body::ball(1.0), axial_point(n, 1.0, 0.0), n, a, q);
  for (double lambda : {0.5, 2.0}) {
    const auto s = nmc_direct(Body::scaled(Body::ball(1.0), lambda), axial_point(n, lambda, 0.0), n, a, q);
    const double err = s.total_error() + std::pow(lambda, -0.5) * base.total_error();
    CHECK(std::abs(s.value - std::pow(lambda, -0.5) * base.value) <= 2.0 * err);
  }
}

TEST_CASE("same seed gives the same value, thread count does not matter") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  QuadratureConfig q;
  const auto body = Body::two_leaf(RadialProfile::barrier(0.2));
  const Point x = axial_point(n, 1.5, RadialProfile::barrier(0.2)(1.5));
  const auto r1 = nmc_direct(body, x, n, a, q);
  q.threads = 4;
  const auto r2 = nmc_direct(body, x, n, a, q);
  CHECK(r1.value == r2.value);
  CHECK(r1.error_midfield == r2.error_midfield);
  q.seed += 1;
  CHECK(nmc_direct(body, x, n, a, q).value != r1.value);
}

TEST_CASE("points off the boundary are rejected") {
  const QuadratureConfig q;
  try {
    nmc_direct(Body::ball(1.0), axial_point(AmbientDim(1), 0.5, 0.0), AmbientDim(1), FractionalOrder(0.5), q);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPoint);
  }
}

}
