#include "fracurv/sliding.hpp"

#include <algorithm>
#include <cmath>

#include "fracurv/io.hpp"

namespace fracurv {

std::string to_string(SlideVerdict v) {
  switch (v) {
    case SlideVerdict::RigidityMechanismConfirmed: return "RIGIDITY_MECHANISM_CONFIRMED";
    case SlideVerdict::TouchFound: return "TOUCH_FOUND";
    case SlideVerdict::UnboundedTouchSequence: return "UNBOUNDED_TOUCH_SEQUENCE";
  }
  return "RIGIDITY_MECHANISM_CONFIRMED";
}

RadialProfile candidate_height(const Body& candidate) {
  const Body b = simplify(candidate);
  if (const auto* t = std::get_if<body::TwoLeaf>(&b.variant())) return t->profile;
  throw Error(ErrorCode::UnsupportedGeometry, "sliding needs a two-leaf candidate, got " + b.kind());
}

SlideRescaling rescale_for_slide(const Body& candidate, const SublinearEnvelope& envelope,
                                 double eps0, double r_max) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps0 must lie in (0,1)");
  const double delta = eps0 / 8.0;
  SlideRescaling out;
  out.modulus = sublinearity_modulus(envelope, delta, r_max);
  if (!out.modulus.sublinear_on_range) {
    throw Error(ErrorCode::NotSublinear,
                "envelope exceeds C + " + format_double(delta) + " r without a witnessed bound on [0," +
                    format_double(r_max) + "]");
  }
  out.lambda = eps0 / (8.0 * out.modulus.c_delta);
  out.rescaled = Body::scaled(candidate, out.lambda);

  const auto h = candidate_height(out.rescaled);
  for (double r : modulus_grid(out.lambda * r_max)) {
    if (std::abs(h(r)) > delta * (1.0 + r) * (1.0 + 1e-12)) {
      throw Error(ErrorCode::InvalidEnvelope,
                  "rescaled candidate leaves |y_{n+1}| <= (eps0/8)(1+|y'|) at |y'|=" + format_double(r));
    }
  }
  return out;
}

std::vector<double> slide_grid(const SlideConfig& cfg) {
  if (!(cfg.r_max > 2.0) || cfg.grid_points < 16) {
    throw Error(ErrorCode::InvalidArgument, "slide grid needs r_max > 2 and >= 16 points");
  }
  std::vector<double> g{0.0, 1.0, 2.0};
  const double lo = 1e-4;
  for (int i = 0; i < cfg.grid_points; ++i) {
    g.push_back(lo * std::pow(cfg.r_max / lo, static_cast<double>(i) / (cfg.grid_points - 1)));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

namespace {

struct Containment {
  bool contained = true;
  double worst_r = 0.0;     // argmax of height - v_eps
  double worst_gap = 0.0;   // its value
};

Containment test(const std::vector<double>& grid, const std::vector<double>& height, double eps) {
  const auto v = RadialProfile::barrier(eps);
  Containment c;
  c.worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double gap = height[i] - v(grid[i]);
    if (gap > c.worst_gap) {
      c.worst_gap = gap;
      c.worst_r = grid[i];
    }
  }
  c.contained = !(c.worst_gap > 0.0);
  return c;
}

}  // namespace

SlideOutcome slide(const Body& rescaled, double eps0, const AmbientDim& n,
                   const FractionalOrder& alpha, const QuadratureConfig& config,
                   const SlideConfig& sc) {
  config.validate();
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps0 must lie in (0,1)");
  if (!(sc.floor > 0.0 && sc.floor < 0.5 * eps0) || sc.iterations < 1) {
    throw Error(ErrorCode::InvalidArgument, "slide floor must lie in (0, eps0/2) and iterations >= 1");
  }
  const auto h = candidate_height(rescaled);
  const auto grid = slide_grid(sc);
  std::vector<double> height(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) height[i] = std::max(0.0, h(grid[i]));

  SlideOutcome out;
  out.floor = sc.floor;
  const double start = 0.5 * eps0;
  const auto initial = test(grid, height, start);
  if (!initial.contained) {
    throw Error(ErrorCode::InitialInclusion,
                "candidate exceeds v_{eps0/2} at |x'|=" + format_double(initial.worst_r) + " by " +
                    format_double(initial.worst_gap));
  }

  if (test(grid, height, sc.floor).contained) {
    out.eps_star = sc.floor;
    out.verdict = SlideVerdict::RigidityMechanismConfirmed;
    out.interpretation =
        "candidate lies in F_eps for every eps down to the floor; consistent with containment in "
        "{x_{n+1} = 0}";
    return out;
  }

  // Containment is monotone in eps, so bisect between a failing and a holding level.
  double lo = sc.floor, hi = start;
  int escaped = 0;
  bool unbounded = false;
  for (int it = 0; it < sc.iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto c = test(grid, height, mid);
    if (c.contained) {
      hi = mid;
    } else {
      lo = mid;
      out.failure_radii.push_back(c.worst_r);
      escaped = c.worst_r > 0.5 * sc.r_max ? escaped + 1 : 0;
      if (escaped >= sc.escape_levels) unbounded = true;
    }
  }
  out.eps_star = hi;
  out.grid_tolerance = (hi - lo) * std::max(1.0, sc.r_max);

  if (unbounded) {
    out.verdict = SlideVerdict::UnboundedTouchSequence;
    out.interpretation =
        "failure radii leave every bounded window as eps decreases; the candidate is not sublinear, "
        "so the touching sequence has no limit point";
    return out;
  }

  const auto touch = test(grid, height, out.eps_star);
  const double r = touch.worst_r;
  const auto v = RadialProfile::barrier(out.eps_star);
  out.touch_point = axial_point(n, r, v(r));
  QuadratureConfig qc = config;
  qc.pv_inner_radius = std::min(config.pv_inner_radius, 0.5 * out.eps_star);
  out.curvature_at_touch = nmc_twoleaf(v, r, n, alpha, qc);
  out.verdict = SlideVerdict::TouchFound;
  const auto& hc = *out.curvature_at_touch;
  if (hc.value - hc.total_error() > 0.0) {
    out.interpretation =
        "F_eps* touches the candidate from outside with H = " + format_double(hc.value) +
        " > 0; an alpha-stationary candidate needs H <= 0 there, so this candidate is not "
        "alpha-stationary";
  } else {
    out.interpretation =
        "F_eps* touches the candidate from outside but H at the touch point is not certified "
        "positive; no contradiction is drawn";
  }
  return out;
}

}  // namespace fracurv
