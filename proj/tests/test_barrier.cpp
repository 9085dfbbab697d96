#include <cmath>

#include "doctest.h"
#include "fracurv/barrier.hpp"

using namespace fracurv;

TEST_SUITE("barrier") {

TEST_CASE("plateau, transition and cone values") {
  const auto b = build_barrier(0.1);
  CHECK(b.profile(0.5) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(b.profile(3.0) == doctest::Approx(0.3).epsilon(1e-14));
  const double mid = b.profile(1.5);
  CHECK(mid >= 0.1);
  CHECK(mid <= 0.15);
  CHECK(std::isfinite(b.regularity_constant));
  CHECK(b.regularity_constant > 0.0);
}

TEST_CASE("bounds hold across the whole radial range") {
  for (double eps : {0.01, 0.1, 0.4}) {
    const auto b = build_barrier(eps);
    for (int i = 0; i <= 2000; ++i) {
      const double r = 0.005 * i;
      const double v = b.profile(r);
      CHECK(v >= eps * (1 - 1e-14));
      CHECK(v <= eps * (1 + r) * (1 + 1e-14));
      CHECK(v >= 0.25 * eps * (1 + r));
    }
  }
}

TEST_CASE("barrier family is monotone in epsilon") {
  const auto lo = build_barrier(0.1), hi = build_barrier(0.2);
  for (double r : {0.0, 0.9, 1.2, 1.8, 2.5, 40.0}) CHECK(lo.profile(r) < hi.profile(r));
}

TEST_CASE("regularity constant does not depend on epsilon") {
  CHECK(build_barrier(0.05).regularity_constant == doctest::Approx(build_barrier(0.3).regularity_constant));
}

TEST_CASE("cutoff smoothness gate") {
  // C^2: the jump shrinks linearly with h. C^1 only: it does not shrink.
  const double q1 = cutoff_second_difference_jump(CutoffKind::Quintic, 1e-3);
  const double q2 = cutoff_second_difference_jump(CutoffKind::Quintic, 5e-4);
  CHECK(q2 == doctest::Approx(0.5 * q1).epsilon(0.05));
  const double c1 = cutoff_second_difference_jump(CutoffKind::Cubic, 1e-3);
  const double c2 = cutoff_second_difference_jump(CutoffKind::Cubic, 5e-4);
  CHECK(c2 == doctest::Approx(c1).epsilon(0.05));
  CHECK(c1 > 0.5);
  CHECK_NOTHROW(build_barrier(0.1, CutoffKind::Septic));
  try {
    build_barrier(0.1, CutoffKind::Cubic);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCutoff);
  }
  CHECK_THROWS_AS(build_barrier(0.0), Error);
}

TEST_CASE("cone constant is positive, homogeneous and pinned") {
  const auto m = cone_constant(0.1, AmbientDim(1), FractionalOrder(0.5), QuadratureConfig{});
  CHECK(m.value > 0.0);
  REQUIRE(m.scaled.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      CHECK(std::abs(m.scaled[i] - m.scaled[j]) <= 3.0 * (m.errors[i] + m.errors[j]));
    }
  }
  // Regression pin of the seeded oracle run (default config, seed 20190101).
  CHECK(m.value == doctest::Approx(20.505978831316302).epsilon(1e-9));
}

TEST_CASE("sweep rows match individual runs and a singleton has no trend") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  const QuadratureConfig q;
  const auto one = sweep_cone_constant({0.1}, n, a, q);
  REQUIRE(one.rows.size() == 1);
  CHECK_FALSE(one.blowup_trend.has_value());
  const auto two = sweep_cone_constant({0.4, 0.2}, n, a, q);
  REQUIRE(two.blowup_trend.has_value());
  CHECK(*two.blowup_trend);
  const auto single = cone_constant(0.2, n, a, q);
  CHECK(std::abs(two.rows[1].value - single.value) <= 1e-12);
  CHECK(std::abs(one.rows[0].value - cone_constant(0.1, n, a, q).value) <= 1e-12);
}

TEST_CASE("verification of a thin barrier") {
  const AmbientDim n(1);
  const FractionalOrder a(0.5);
  VerifySpec spec;
  spec.bisect_epsilon = false;
  const auto v = verify_barrier(0.05, n, a, QuadratureConfig::for_scale(0.05), spec);
  CHECK(v.verdict == Verdict::Positive);
  CHECK(v.min_margin > 0.0);
  CHECK(v.failures.empty());
  CHECK(v.samples.size() >= 200);
  REQUIRE(v.half_epsilon_positive.has_value());
  CHECK(*v.half_epsilon_positive);
  REQUIRE(v.far_field_ok.has_value());
  CHECK(*v.far_field_ok);

  // Mirror symmetry: every lower-leaf sample equals its upper partner.
  int pairs = 0;
  for (const auto& s : v.samples) {
    if (s.upper_leaf) continue;
    for (const auto& t : v.samples) {
      if (t.upper_leaf && t.point[0] == s.point[0]) {
        CHECK(t.curvature.value == s.curvature.value);
        CHECK(t.point.back() == -s.point.back());
        ++pairs;
        break;
      }
    }
  }
  CHECK(pairs > 50);
}

TEST_CASE("thick barriers lose positivity") {
  VerifySpec spec;
  spec.bisect_epsilon = false;
  spec.far_field_check = false;
  spec.half_epsilon_check = false;
  const auto v = verify_barrier(0.6, AmbientDim(1), FractionalOrder(0.5), QuadratureConfig{}, spec);
  CHECK(v.verdict == Verdict::NotPositive);
  CHECK(v.min_margin < 0.0);
}

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::Positive) == "POSITIVE");
  CHECK(to_string(Verdict::NotPositive) == "NOT_POSITIVE");
  CHECK(to_string(Verdict::Inconclusive) == "INCONCLUSIVE");
}

}
