#include "fracurv/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracurv/io.hpp"
#include "fracurv/parallel.hpp"

namespace fracurv {

double cutoff_second_difference_jump(CutoffKind kind, double h) {
  double prev = 0.0, jump = 0.0;
  bool first = true;
  for (double r = 0.5; r <= 2.5; r += h) {
    const double d2 = (cutoff_value(kind, r + h) - 2.0 * cutoff_value(kind, r) + cutoff_value(kind, r - h)) / (h * h);
    if (!first) jump = std::max(jump, std::abs(d2 - prev));
    prev = d2;
    first = false;
  }
  return jump;
}

Barrier build_barrier(double epsilon, CutoffKind cutoff) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "barrier epsilon must lie in (0,1)");
  }
  // A C^2 cutoff moves the second difference by O(h) per step; a jump in
  // eta'' shows up as an O(1) step.
  const double jump = cutoff_second_difference_jump(cutoff);
  if (jump > 0.5) {
    throw Error(ErrorCode::InvalidCutoff,
                "cutoff is not C^2 (second-difference jump " + format_double(jump) + ")");
  }

  Barrier b;
  b.epsilon = epsilon;
  b.cutoff = cutoff;
  b.profile = RadialProfile::barrier(epsilon, cutoff);
  b.body = Body::two_leaf(b.profile);

  double reg = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double r = 10.0 * i / 20000.0;
    const double v = b.profile.value(r), d1 = b.profile.d1(r), d2 = b.profile.d2(r);
    const double slack = 1e-12 * epsilon * (1.0 + r);
    if (v < epsilon - slack || v > epsilon * (1.0 + r) + slack || v < 0.25 * epsilon * (1.0 + r) - slack) {
      throw Error(ErrorCode::InvalidCutoff, "barrier bounds fail at r=" + format_double(r));
    }
    const double hess = r > 0.0 ? std::max(std::abs(d2), std::abs(d1) / r) : std::abs(d2);
    reg = std::max(reg, (std::abs(d1) + hess) / epsilon);
  }
  b.regularity_constant = reg;
  return b;
}

ConeConstant cone_constant(double epsilon, const AmbientDim& n, const FractionalOrder& alpha,
                           const QuadratureConfig& config) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "cone slope must be positive");
  const Body cone = Body::cone(epsilon);
  ConeConstant out;
  out.epsilon = epsilon;
  out.radii = {2.0, 5.0, 10.0};
  const double a = alpha.value();
  std::uint64_t k = 0;
  for (double norm : out.radii) {
    const double r = norm / std::sqrt(1.0 + epsilon * epsilon);
    QuadratureConfig c = config;
    c.seed = stream_seed(config.seed, 0xc0e, k++);
    const auto h = nmc_direct(cone, axial_point(n, r, epsilon * r), n, alpha, c);
    const double f = std::pow(norm, a);
    out.scaled.push_back(f * h.value);
    out.errors.push_back(f * h.total_error());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < out.scaled.size(); ++i) {
    sum += out.scaled[i];
    out.error = std::max(out.error, out.errors[i]);
    for (std::size_t j = i + 1; j < out.scaled.size(); ++j) {
      const double d = std::abs(out.scaled[i] - out.scaled[j]);
      out.max_residual = std::max(out.max_residual, d);
      if (d > 3.0 * (out.errors[i] + out.errors[j])) {
        throw Error(ErrorCode::HomogeneityViolation,
                    "|x|^alpha H differs between |x|=" + format_double(out.radii[i]) + " and |x|=" +
                        format_double(out.radii[j]) + " by " + format_double(d));
      }
    }
  }
  out.value = sum / static_cast<double>(out.scaled.size());
  return out;
}

ConeSweep sweep_cone_constant(const std::vector<double>& grid, const AmbientDim& n,
                              const FractionalOrder& alpha, const QuadratureConfig& config) {
  ConeSweep out;
  for (double e : grid) out.rows.push_back(cone_constant(e, n, alpha, config));
  if (out.rows.size() >= 2) {
    std::vector<const ConeConstant*> order;
    for (const auto& r : out.rows) order.push_back(&r);
    std::sort(order.begin(), order.end(),
              [](const ConeConstant* x, const ConeConstant* y) { return x->epsilon > y->epsilon; });
    bool trend = true;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const auto& big = *order[i];
      const auto& small = *order[i + 1];
      if (!(small.value - small.error > big.value + big.error)) trend = false;
    }
    out.blowup_trend = trend;
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "POSITIVE";
    case Verdict::NotPositive: return "NOT_POSITIVE";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

// Radius where the barrier boundary leaves B_4.
double exit_radius(const RadialProfile& v, double R) {
  double lo = 0.0, hi = R;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * mid + v(mid) * v(mid) < R * R ? lo : hi) = mid;
  }
  return lo;
}

BarrierVerification positivity(double epsilon, const AmbientDim& n, const FractionalOrder& alpha,
                               const QuadratureConfig& config, const VerifySpec& spec) {
  const Barrier b = build_barrier(epsilon);
  BarrierVerification out;
  out.epsilon = epsilon;
  out.n = n.value();
  out.alpha = alpha.value();

  SamplingSpec s = spec.sampling;
  std::vector<double> radii;
  if (s.radii.empty()) {
    s.r_max = std::min(s.r_max, exit_radius(b.profile, 4.0) * (1.0 - 1e-9));
    radii = radial_grid(s);
    for (int i = 1; i <= spec.ray_count; ++i) {
      radii.push_back(4.0 * std::pow(spec.ray_max / 4.0, static_cast<double>(i) / spec.ray_count));
    }
  } else {
    radii = s.radii;
  }

  // One evaluation per radius; the lower leaf is the mirror image.
  std::vector<CurvatureResult> h(radii.size());
  std::vector<std::string> err(radii.size());
  parallel_for(radii.size(), config.threads, [&](std::size_t i) {
    try {
      h[i] = nmc_twoleaf(b.profile, radii[i], n, alpha, config);
      if (!h[i].converged) err[i] = "quadrature did not converge";
    } catch (const Error& e) {
      err[i] = e.what();
    }
  });

  out.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double z = b.profile.value(radii[i]);
    for (bool upper : {true, false}) {
      if (!upper && !s.both_leaves) continue;
      BarrierSample smp;
      smp.point = axial_point(n, radii[i], upper ? z : -z);
      smp.upper_leaf = upper;
      smp.curvature = h[i];
      smp.failed = !err[i].empty();
      out.samples.push_back(smp);
    }
    if (!err[i].empty()) {
      out.failures.push_back("r=" + format_double(radii[i]) + ": " + err[i]);
    } else {
      out.min_margin = std::min(out.min_margin, h[i].value - h[i].total_error());
    }
  }
  if (!out.failures.empty()) {
    out.verdict = Verdict::Inconclusive;
  } else {
    out.verdict = out.min_margin > 0.0 ? Verdict::Positive : Verdict::NotPositive;
  }
  return out;
}

}  // namespace

double empirical_eps0(const AmbientDim& n, const FractionalOrder& alpha,
                      const QuadratureConfig& config, const VerifySpec& spec) {
  double lo = 0.0, hi = spec.bisect_upper;
  for (int i = 0; i < spec.bisect_steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    QuadratureConfig c = config;
    c.pv_inner_radius = std::min(config.pv_inner_radius, 0.5 * mid);
    const auto v = positivity(mid, n, alpha, c, spec);
    (v.verdict == Verdict::Positive ? lo : hi) = mid;
  }
  return lo;
}

BarrierVerification verify_barrier(double epsilon, const AmbientDim& n,
                                   const FractionalOrder& alpha, const QuadratureConfig& config,
                                   const VerifySpec& spec) {
  config.validate();
  BarrierVerification out = positivity(epsilon, n, alpha, config, spec);
  if (spec.half_epsilon_check) {
    QuadratureConfig half = config;
    half.pv_inner_radius = std::min(config.pv_inner_radius, 0.25 * epsilon);
    out.half_epsilon_positive = positivity(0.5 * epsilon, n, alpha, half, spec).verdict == Verdict::Positive;
  }
  if (spec.far_field_check) {
    const auto m = cone_constant(epsilon, n, alpha, config);
    const auto v = RadialProfile::barrier(epsilon);
    const double r = spec.ray_max;
    const auto h = nmc_twoleaf(v, r, n, alpha, config);
    const double scaled = std::pow(std::hypot(r, v(r)), alpha.value()) * h.value;
    out.cone = m;
    out.far_field_scaled = scaled;
    out.far_field_ok = std::abs(scaled - m.value) <= 0.05 * std::abs(m.value);
  }
  if (spec.bisect_epsilon) out.empirical_eps0 = empirical_eps0(n, alpha, config, spec);
  return out;
}

}  // namespace fracurv
