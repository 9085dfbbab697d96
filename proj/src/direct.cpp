// Monte Carlo evaluation of H_alpha straight from its definition, used as an
// oracle that shares nothing with the graph formulas beyond set membership.
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/beta.hpp>

#include "fracurv/io.hpp"
#include "fracurv/kernel.hpp"
#include "fracurv/parallel.hpp"

namespace fracurv {

namespace {

struct Shell {
  double a, b, weight;  // weight = int_a^b rho^{-1-alpha} drho
  long samples;
};

struct ShellEstimate {
  double value = 0.0;
  double variance = 0.0;
};

// Frame of the boundary point in the meridian plane: outward normal nu and
// the meridian tangent tau = (nu_z, -nu_r).
struct Frame {
  double r0, z0, nr, nz;
  int n;
};

// Inverse CDF of t = |<omega, nu>| for omega uniform on S^n.
double normal_component(int n, double u) {
  if (n == 1) return std::sin(0.5 * std::numbers::pi * u);
  if (n == 2) return u;
  return std::sqrt(boost::math::ibeta_inv(0.5, 0.5 * n, u));
}

ShellEstimate run_shell(const Body& body, const Frame& fr, double alpha, const Shell& sh,
                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const int n = fr.n;
  const long strata = std::max<long>(1, sh.samples / 2);
  const double a_pow = std::pow(sh.a, -alpha);
  std::vector<double> g(static_cast<std::size_t>(std::max(n, 1)));

  auto draw_rho = [&] { return std::pow(a_pow - uniform01(gen) * alpha * sh.weight, -1.0 / alpha); };

  // Unit tangent direction: component along tau, and |rest| in the e_2..e_n span.
  auto draw_tangent = [&](double& along_tau, double& across) {
    if (n == 1) {
      along_tau = uniform01(gen) < 0.5 ? -1.0 : 1.0;
      across = 0.0;
      return;
    }
    if (n == 2) {
      const double phi = 2.0 * std::numbers::pi * uniform01(gen);
      along_tau = std::cos(phi);
      across = std::abs(std::sin(phi));
      return;
    }
    double norm2 = 0.0;
    for (int i = 0; i < n; i += 2) {
      const double u1 = 1.0 - uniform01(gen), u2 = uniform01(gen);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      g[static_cast<std::size_t>(i)] = rad * std::cos(2.0 * std::numbers::pi * u2);
      if (i + 1 < n) g[static_cast<std::size_t>(i + 1)] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
    for (int i = 0; i < n; ++i) norm2 += g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
    const double inv = 1.0 / std::sqrt(norm2);
    along_tau = g[0] * inv;
    across = std::sqrt(std::max(0.0, 1.0 - along_tau * along_tau));
  };

  auto sign_at = [&](double e1, double perp, double z) {
    const double r = std::sqrt(e1 * e1 + perp * perp);
    return body.contains(r, z) ? -1.0 : 1.0;
  };

  // Average of the signed indicator at x + rho omega and x - rho omega.
  auto pair_value = [&](double t) {
    const double rho = draw_rho();
    double along, across;
    draw_tangent(along, across);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double w_e1 = t * fr.nr + s * along * fr.nz;
    const double w_z = t * fr.nz - s * along * fr.nr;
    const double w_perp = s * across;
    const double plus = sign_at(fr.r0 + rho * w_e1, rho * w_perp, fr.z0 + rho * w_z);
    const double minus = sign_at(fr.r0 - rho * w_e1, rho * w_perp, fr.z0 - rho * w_z);
    return 0.5 * (plus + minus);
  };

  double sum = 0.0, sq = 0.0;
  for (long j = 0; j < strata; ++j) {
    const double lo = static_cast<double>(j) / strata, width = 1.0 / strata;
    const double y1 = pair_value(normal_component(n, lo + width * uniform01(gen)));
    const double y2 = pair_value(normal_component(n, lo + width * uniform01(gen)));
    sum += 0.5 * (y1 + y2);
    sq += 0.25 * (y1 - y2) * (y1 - y2);
  }
  const double scale = sh.weight * sphere_measure(n);
  ShellEstimate est;
  est.value = scale * sum / strata;
  est.variance = scale * scale * sq / (static_cast<double>(strata) * strata);
  return est;
}

}  // namespace

CurvatureResult nmc_direct(const Body& body_in, const Point& x, const AmbientDim& n,
                           const FractionalOrder& alpha, const QuadratureConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(x.size()) != n.total()) {
    throw Error(ErrorCode::InvalidArgument, "point must have n+1 coordinates");
  }
  for (double c : x) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "point must be finite");
  }
  const Body body = simplify(body_in);
  const double r0 = horizontal_norm(x), z0 = vertical(x);
  const LocalGeometry geo = body.local_geometry(r0, z0);

  double scale = 1.0;
  for (double c : x) scale = std::max(scale, std::abs(c));
  const double t = 1e-6 * scale;
  const bool inside = body.contains(std::abs(r0 - t * geo.normal_r), z0 - t * geo.normal_z);
  const bool outside = !body.contains(std::abs(r0 + t * geo.normal_r), z0 + t * geo.normal_z);
  if (!inside || !outside) {
    throw Error(ErrorCode::InvalidPoint, "point (r=" + format_double(r0) + ", z=" + format_double(z0) +
                                             ") is not on the boundary");
  }

  const double a = alpha.value();
  double kmax = std::abs(geo.kappa_meridian);
  if (n.value() >= 2) kmax = std::max(kmax, std::abs(geo.kappa_parallel));
  const double rho0 = 0.01 * std::min(cfg.pv_inner_radius, 1.0 / std::max(kmax, 1e-300));

  CurvatureResult out;
  // Inside B_rho0 the boundary is replaced by its osculating quadric.
  const double s_low = sphere_measure(n.value() - 1);
  const double core = s_low * geo.mean_curvature(n.value()) * std::pow(rho0, 1.0 - a) / (1.0 - a);
  out.error_core = 0.01 * std::abs(core) +
                   10.0 * (1.0 + kmax) * s_low * std::pow(rho0, 2.0 - a) / (2.0 - a);

  const double s_top = sphere_measure(n.value());
  auto tail = [&](double radius) { return s_top * std::pow(radius, -a) / a; };
  double R = std::max(cfg.truncation_radius, 2.0 * rho0);
  int escalations = 0;
  while (tail(R) > cfg.target_tolerance && escalations < cfg.max_subdivisions && R < 1e100) {
    R *= 10.0;
    ++escalations;
  }
  out.converged = tail(R) <= cfg.target_tolerance;
  out.error_tail = tail(R);
  out.truncation_radius = R;

  std::vector<Shell> shells;
  for (double lo = rho0; lo < R; lo *= 2.0) {
    const double hi = std::min(2.0 * lo, R);
    shells.push_back({lo, hi, (std::pow(lo, -a) - std::pow(hi, -a)) / a, 0});
  }
  double total = 0.0;
  for (const auto& s : shells) total += std::pow(s.weight, 2.0 / 3.0);
  for (auto& s : shells) {
    const double share = std::pow(s.weight, 2.0 / 3.0) / total;
    s.samples = std::max<long>(16, 2 * std::lround(0.5 * share * static_cast<double>(cfg.oracle_samples)));
  }

  const Frame fr{r0, z0, geo.normal_r, geo.normal_z, n.value()};
  std::vector<ShellEstimate> est(shells.size());
  parallel_for(shells.size(), cfg.threads, [&](std::size_t k) {
    est[k] = run_shell(body, fr, a, shells[k], stream_seed(cfg.seed, k));
  });

  double value = core, variance = 0.0;
  for (const auto& e : est) {
    value += e.value;
    variance += e.variance;
  }
  out.value = value;
  out.error_midfield = 3.0 * std::sqrt(variance);
  return out;
}

}  // namespace fracurv
