#include "fracurv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

namespace fracurv {

double sphere_measure(int k) {
  // |S^k| = 2 pi^{(k+1)/2} / Gamma((k+1)/2)
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / boost::math::tgamma(h);
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

LocalGeometry graph_geometry(double vp, double vpp, double r, double leaf_sign) {
  const double w = std::sqrt(1.0 + vp * vp);
  LocalGeometry g;
  g.normal_r = -vp / w;
  g.normal_z = leaf_sign / w;
  g.kappa_meridian = -vpp / (w * w * w);
  g.kappa_parallel = r > 1e-12 ? -vp / (r * w) : g.kappa_meridian;
  return g;
}

LocalGeometry profile_geometry(const RadialProfile& p, double r, double leaf_sign) {
  if (!p.smooth_at(r)) {
    throw Error(ErrorCode::NonSmoothPoint, "profile not twice differentiable at r=" + std::to_string(r));
  }
  return graph_geometry(p.d1(r), p.d2(r), r, leaf_sign);
}
}  // namespace

Body Body::cone(double slope) {
  if (!(slope > 0.0)) throw Error(ErrorCode::InvalidArgument, "cone slope must be positive");
  return Body(body::Cone{slope});
}

Body Body::ball(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  return Body(body::Ball{radius});
}

Body Body::complement(Body inner) {
  return Body(body::Complement{std::make_shared<const Body>(std::move(inner))});
}

Body Body::scaled(Body inner, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  return Body(body::Scaled{std::make_shared<const Body>(std::move(inner)), factor});
}

std::string Body::kind() const {
  return std::visit(overloaded{
                        [](const body::TwoLeaf&) { return std::string("twoleaf"); },
                        [](const body::Subgraph&) { return std::string("subgraph"); },
                        [](const body::Cone&) { return std::string("cone"); },
                        [](const body::Ball&) { return std::string("ball"); },
                        [](const body::HalfSpace&) { return std::string("halfspace"); },
                        [](const body::Complement&) { return std::string("complement"); },
                        [](const body::Scaled&) { return std::string("scaled"); },
                    },
                    v_);
}

bool Body::contains(double r, double z) const {
  return std::visit(
      overloaded{
          [&](const body::TwoLeaf& b) { return std::abs(z) < b.profile.value(r); },
          [&](const body::Subgraph& b) { return z < b.profile.value(r); },
          [&](const body::Cone& b) { return std::abs(z) < b.slope * r; },
          [&](const body::Ball& b) { return r * r + z * z < b.radius * b.radius; },
          [&](const body::HalfSpace& b) { return z < b.offset; },
          [&](const body::Complement& b) { return !b.inner->contains(r, z); },
          [&](const body::Scaled& b) { return b.inner->contains(r / b.factor, z / b.factor); },
      },
      v_);
}

LocalGeometry Body::local_geometry(double r, double z) const {
  return std::visit(
      overloaded{
          [&](const body::TwoLeaf& b) {
            return profile_geometry(b.profile, r, z >= 0.0 ? 1.0 : -1.0);
          },
          [&](const body::Subgraph& b) { return profile_geometry(b.profile, r, 1.0); },
          [&](const body::Cone& b) {
            if (!(r > 0.0)) throw Error(ErrorCode::NonSmoothPoint, "cone apex is not a smooth point");
            return graph_geometry(b.slope, 0.0, r, z >= 0.0 ? 1.0 : -1.0);
          },
          [&](const body::Ball& b) {
            LocalGeometry g;
            const double len = std::hypot(r, z);
            g.normal_r = r / len;
            g.normal_z = z / len;
            g.kappa_meridian = g.kappa_parallel = 1.0 / b.radius;
            return g;
          },
          [&](const body::HalfSpace&) {
            LocalGeometry g;
            g.normal_z = 1.0;
            return g;
          },
          [&](const body::Complement& b) {
            LocalGeometry g = b.inner->local_geometry(r, z);
            g.normal_r = -g.normal_r;
            g.normal_z = -g.normal_z;
            g.kappa_meridian = -g.kappa_meridian;
            g.kappa_parallel = -g.kappa_parallel;
            return g;
          },
          [&](const body::Scaled& b) {
            LocalGeometry g = b.inner->local_geometry(r / b.factor, z / b.factor);
            g.kappa_meridian /= b.factor;
            g.kappa_parallel /= b.factor;
            return g;
          },
      },
      v_);
}

Body simplify(const Body& b) {
  if (const auto* c = std::get_if<body::Complement>(&b.variant())) {
    Body inner = simplify(*c->inner);
    if (const auto* cc = std::get_if<body::Complement>(&inner.variant())) return *cc->inner;
    return Body::complement(std::move(inner));
  }
  if (const auto* s = std::get_if<body::Scaled>(&b.variant())) {
    Body inner = simplify(*s->inner);
    const double l = s->factor;
    if (l == 1.0) return inner;
    return std::visit(
        overloaded{
            [&](const body::TwoLeaf& t) { return Body::two_leaf(t.profile.scaled(l)); },
            [&](const body::Subgraph& t) { return Body::subgraph(t.profile.scaled(l)); },
            [&](const body::Cone& t) { return Body::cone(t.slope); },
            [&](const body::Ball& t) { return Body::ball(t.radius * l); },
            [&](const body::HalfSpace& t) { return Body::half_space(t.offset * l); },
            [&](const body::Complement& t) {
              return Body::complement(simplify(Body::scaled(*t.inner, l)));
            },
            [&](const body::Scaled& t) { return simplify(Body::scaled(*t.inner, t.factor * l)); },
        },
        inner.variant());
  }
  return b;
}

std::vector<double> radial_grid(const SamplingSpec& spec) {
  if (!spec.radii.empty()) return spec.radii;
  if (spec.count < 2 || !(spec.r_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sampling spec needs count >= 2 and r_max > 0");
  }
  std::vector<double> g{0.0, spec.r_max};
  // Geometric spacing from r_max * 1e-3 to r_max for half the budget, uniform
  // for the rest, then local refinement around each transition radius.
  const int geo = spec.count / 2;
  const double r0 = spec.r_max * 1e-3;
  for (int i = 0; i < geo; ++i) {
    g.push_back(r0 * std::pow(spec.r_max / r0, static_cast<double>(i) / std::max(geo - 1, 1)));
  }
  const int uni = spec.count - geo;
  for (int i = 1; i < uni; ++i) g.push_back(spec.r_max * i / uni);
  for (double c : spec.refine_near) {
    for (double d : {1e-3, 3e-3, 1e-2, 3e-2, 0.1}) {
      for (double s : {-1.0, 1.0}) {
        const double r = c + s * d;
        if (r > 0.0 && r < spec.r_max) g.push_back(r);
      }
    }
    if (c > 0.0 && c < spec.r_max) g.push_back(c);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::vector<BoundarySample> boundary_sample(const Body& b, const AmbientDim& n,
                                            const SamplingSpec& spec) {
  std::vector<BoundarySample> out;
  const auto& v = b.variant();
  auto push = [&](double r, double z, const LocalGeometry& g, bool upper) {
    BoundarySample s;
    s.x = axial_point(n, r, z);
    s.normal = axial_point(n, g.normal_r, g.normal_z);
    s.upper_leaf = upper;
    out.push_back(std::move(s));
  };
  if (std::holds_alternative<body::Complement>(v) || std::holds_alternative<body::Scaled>(v)) {
    throw Error(ErrorCode::UnsupportedGeometry,
                "boundary_sample needs a primitive body; unwrap " + b.kind() + " first");
  }
  if (const auto* ball = std::get_if<body::Ball>(&v)) {
    const int m = spec.radii.empty() ? spec.count : static_cast<int>(spec.radii.size());
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * std::numbers::pi * i / m;
      // x' = R cos(th) e_1 is allowed to be negative; membership only uses |x'|.
      Point x = axial_point(n, ball->radius * std::cos(th), ball->radius * std::sin(th));
      Point nu = axial_point(n, std::cos(th), std::sin(th));
      out.push_back({std::move(x), std::move(nu), std::sin(th) >= 0.0});
    }
    return out;
  }
  const auto grid = radial_grid(spec);
  if (const auto* h = std::get_if<body::HalfSpace>(&v)) {
    for (double r : grid) push(r, h->offset, b.local_geometry(r, h->offset), true);
    return out;
  }
  if (const auto* t = std::get_if<body::Subgraph>(&v)) {
    for (double r : grid) {
      const double z = t->profile.value(r);
      push(r, z, graph_geometry(t->profile.d1(r), t->profile.d2(r), r, 1.0), true);
    }
    return out;
  }
  const bool cone = std::holds_alternative<body::Cone>(v);
  for (double r : grid) {
    if (cone && r <= 0.0) continue;
    double z, vp, vpp;
    if (cone) {
      const double s = std::get<body::Cone>(v).slope;
      z = s * r;
      vp = s;
      vpp = 0.0;
    } else {
      const auto& p = std::get<body::TwoLeaf>(v).profile;
      z = p.value(r);
      vp = p.d1(r);
      vpp = p.d2(r);
    }
    push(r, z, graph_geometry(vp, vpp, r, 1.0), true);
    if (spec.both_leaves) push(r, -z, graph_geometry(vp, vpp, r, -1.0), false);
  }
  return out;
}

std::vector<double> modulus_grid(double r_max) {
  constexpr int per_decade = 1000;
  std::vector<double> g{0.0};
  const double top = std::log10(r_max);
  for (int k = -6 * per_decade;; ++k) {
    const double e = static_cast<double>(k) / per_decade;
    if (e > top) break;
    g.push_back(std::pow(10.0, e));
  }
  if (g.back() < r_max) g.push_back(r_max);
  return g;
}

SublinearEnvelope::SublinearEnvelope(RadialProfile phi, double r_check) : phi_(std::move(phi)) {
  for (double r : modulus_grid(r_check)) {
    const double p = phi_.value(r);
    if (!std::isfinite(p) || p < 0.0 || (r > 0.0 && p <= 0.0)) {
      throw Error(ErrorCode::InvalidEnvelope,
                  "envelope must be positive; phi(" + std::to_string(r) + ")=" + std::to_string(p));
    }
  }
}

ModulusResult sublinearity_modulus(const SublinearEnvelope& env, double delta, double r_max) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  if (!(r_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "r_max must be positive");
  constexpr double floor = 1e-12;
  const auto grid = modulus_grid(r_max);
  ModulusResult res;
  res.c_delta = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = env.phi().value(grid[i]);
    if (!(p >= 0.0) || (grid[i] > 0.0 && p <= 0.0)) {
      throw Error(ErrorCode::InvalidEnvelope, "envelope non-positive at r=" + std::to_string(grid[i]));
    }
    const double c = p - delta * grid[i];
    if (c > res.c_delta) {
      res.c_delta = c;
      arg = i;
    }
  }
  res.argmax_r = grid[arg];
  if (arg > 0 && arg + 1 < grid.size()) {
    // The grid maximum undershoots; polish it between the neighbouring nodes.
    auto neg = [&](double r) { return -(env.phi().value(r) - delta * r); };
    const auto [r, v] = boost::math::tools::brent_find_minima(neg, grid[arg - 1], grid[arg + 1], 52);
    if (-v > res.c_delta) {
      res.c_delta = -v;
      res.argmax_r = r;
    }
  }
  res.c_delta = std::max(res.c_delta, floor);
  res.sublinear_on_range =
      arg + 1 != grid.size() && env.phi().value(grid.back()) / grid.back() < delta;
  return res;
}

}  // namespace fracurv
