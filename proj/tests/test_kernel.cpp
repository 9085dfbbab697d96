#include <cmath>
#include <random>

#include "doctest.h"
#include "fracurv/barrier.hpp"
#include "fracurv/kernel.hpp"
#include "oracles.hpp"

using namespace fracurv;

TEST_SUITE("kernel") {

TEST_CASE("G vanishes at 0 and is odd") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  CHECK(eval_G(0.0, n, a) == 0.0);
  for (double t : {0.1, 1.0, 10.0, 1e3}) CHECK(std::abs(eval_G(-t, n, a) + eval_G(t, n, a)) <= 1e-12);
}

TEST_CASE("G matches brute-force quadrature") {
  for (int n : {1, 2, 3}) {
    for (double alpha : {0.2, 0.5, 0.8}) {
      for (double t : {0.05, 0.5, 1.0, 1.7, 4.0}) {
        const double ref = oracle::G(t, n, alpha);
        CHECK(std::abs(eval_G(t, AmbientDim(n), FractionalOrder(alpha)) - ref) <= 1e-10);
      }
      const double inf_ref = oracle::G_infinity(n, alpha);
      CHECK(std::abs(eval_G_infinity(AmbientDim(n), FractionalOrder(alpha)) - inf_ref) <= 1e-10);
    }
  }
}

TEST_CASE("G is 1-Lipschitz and bounded by G(inf)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int n : {1, 2}) {
    for (double alpha : {0.2, 0.5, 0.8}) {
      const GFunction g{AmbientDim(n), FractionalOrder(alpha)};
      for (int i = 0; i < 100; ++i) {
        const double t1 = u(rng), t2 = u(rng);
        CHECK(std::abs(g(t1) - g(t2)) <= std::abs(t1 - t2) + 1e-10);
      }
      CHECK(g(10.0) < g.infinity());
      CHECK(g(std::numeric_limits<double>::infinity()) == g.infinity());
      CHECK(g(-std::numeric_limits<double>::infinity()) == -g.infinity());
      const double T = 100.0;
      CHECK(g.infinity() - g(T) <= std::pow(T, -(n + alpha)) / (n + alpha));
      CHECK(g.complement(T) == doctest::Approx(g.infinity() - g(T)).epsilon(1e-9));
      CHECK(g.derivative(0.7) == doctest::Approx(std::pow(1.49, -(n + 1 + alpha) / 2)));
    }
  }
}

TEST_CASE("flat graphs have zero curvature") {
  const QuadratureConfig q;
  for (double alpha : {0.2, 0.5, 0.8}) {
    const FractionalOrder a(alpha);
    const auto z = nmc_subgraph(RadialProfile::constant(0.0), 0.7, AmbientDim(1), a, q);
    CHECK(std::abs(z.value) <= 1e-6);
    CHECK(std::abs(z.value) <= z.total_error() + 1e-12);
    const auto three = nmc_subgraph(RadialProfile::constant(3.0), 2.0, AmbientDim(2), a, q);
    CHECK(std::abs(three.value) <= 1e-6);
  }
}

TEST_CASE("slab formula agrees with the direct oracle") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  const QuadratureConfig q;
  const double c = 0.3;
  const auto f = nmc_twoleaf(RadialProfile::constant(c), 1.0, n, a, q);
  const auto d = nmc_direct(Body::two_leaf(RadialProfile::constant(c)), axial_point(n, 1.0, c), n, a, q);
  CHECK(f.value > 0.0);
  CHECK(std::abs(f.value - d.value) <= f.total_error() + d.total_error());
}

TEST_CASE("bump subgraph at its peak agrees with the direct oracle") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  const QuadratureConfig q;
  const auto u = RadialProfile::bump(1.0, 1.0);
  const double r = 0.5;  // argmax of r^2 (1 - r^2)^3
  CHECK(std::abs(u.d1(r)) <= 1e-14);
  const auto f = nmc_subgraph(u, r, n, a, q);
  const auto d = nmc_direct(Body::subgraph(u), axial_point(n, r, u(r)), n, a, q);
  CHECK(std::abs(f.value - d.value) <= f.total_error() + d.total_error());
}

TEST_CASE("two-leaf formula obeys the dilation law") {
  const FractionalOrder a(0.5);
  const QuadratureConfig q;
  for (int n : {1, 2}) {
    const auto v = RadialProfile::barrier(0.2);
    for (double r : {0.5, 1.5, 3.0}) {
      const auto base = nmc_twoleaf(v, r, AmbientDim(n), a, q);
      const auto big = nmc_twoleaf(v.scaled(2.0), 2.0 * r, AmbientDim(n), a, q);
      CHECK(std::abs(big.value - std::pow(2.0, -0.5) * base.value) <= 2.0 * (big.total_error() + base.total_error()));
    }
  }
}

TEST_CASE("upper and lower leaf values coincide") {
  const QuadratureConfig q;
  const auto v = RadialProfile::barrier(0.1);
  const auto up = nmc_twoleaf(v, {1.4}, true, AmbientDim(1), FractionalOrder(0.3), q);
  const auto lo = nmc_twoleaf(v, {-1.4}, false, AmbientDim(1), FractionalOrder(0.3), q);
  CHECK(up.value == lo.value);
}

TEST_CASE("far barrier points see the cone constant") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  const QuadratureConfig q;
  const auto m = cone_constant(0.1, n, a, q);
  const auto h = nmc_twoleaf(RadialProfile::barrier(0.1), 10.0, n, a, q);
  const double scaled = std::pow(std::hypot(10.0, 1.0), 0.5) * h.value;
  CHECK(std::abs(scaled - m.value) <= 0.05 * m.value);
}

TEST_CASE("n = 2 formula agrees with the direct oracle on a barrier") {
  const AmbientDim n(2);
  const FractionalOrder a(0.5);
  QuadratureConfig q = QuadratureConfig::for_scale(0.2);
  const auto v = RadialProfile::barrier(0.2);
  for (double r : {0.5, 1.5}) {
    const auto f = nmc_twoleaf(v, r, n, a, q);
    const auto d = nmc_direct(Body::two_leaf(v), axial_point(n, r, v(r)), n, a, q);
    CHECK(std::abs(f.value - d.value) <= f.total_error() + d.total_error());
  }
}

TEST_CASE("non-smooth evaluation points are rejected") {
  const QuadratureConfig q;
  try {
    nmc_twoleaf(RadialProfile::linear(1.0, 1.0), 0.0, AmbientDim(1), FractionalOrder(0.5), q);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSmoothPoint);
  }
}

TEST_CASE("unreachable tolerance reports non-convergence instead of throwing") {
  QuadratureConfig q;
  q.target_tolerance = 1e-15;
  q.max_subdivisions = 2;
  const auto r = nmc_twoleaf(RadialProfile::barrier(0.1), 1.5, AmbientDim(1), FractionalOrder(0.5), q);
  CHECK_FALSE(r.converged);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("config validation and canonical text") {
  QuadratureConfig q;
  q.pv_inner_radius = -1.0;
  CHECK_THROWS_AS(q.validate(), Error);
  CHECK(QuadratureConfig::for_scale(0.05).pv_inner_radius == doctest::Approx(0.025));
  CHECK(QuadratureConfig::for_scale(0.5).pv_inner_radius == doctest::Approx(0.1));
  QuadratureConfig a, b;
  b.threads = 8;
  CHECK(a.canonical() == b.canonical());
  b.seed = 1;
  CHECK(a.canonical() != b.canonical());
}

}
