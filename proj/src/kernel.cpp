#include "fracurv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "fracurv/io.hpp"
#include "fracurv/quadrature.hpp"

namespace fracurv {

QuadratureConfig QuadratureConfig::for_scale(double epsilon) {
  QuadratureConfig c;
  c.pv_inner_radius = std::min(0.1, 0.5 * epsilon);
  return c;
}

void QuadratureConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(pv_inner_radius > 0.0) || !std::isfinite(pv_inner_radius)) fail("pv_inner_radius must be positive");
  if (!(truncation_radius > pv_inner_radius) || !std::isfinite(truncation_radius)) {
    fail("truncation_radius must exceed pv_inner_radius");
  }
  if (!(target_tolerance > 0.0 && target_tolerance < 1.0)) fail("target_tolerance must lie in (0,1)");
  if (max_subdivisions < 1) fail("max_subdivisions must be >= 1");
  if (oracle_samples < 1000) fail("oracle_samples must be >= 1000");
  if (angular_order < 2 || angular_order > 200) fail("angular_order must lie in [2,200]");
  if (threads < 1) fail("threads must be >= 1");
}

std::string QuadratureConfig::canonical() const {
  std::ostringstream os;
  os << "pv_inner_radius=" << format_double(pv_inner_radius)
     << ";truncation_radius=" << format_double(truncation_radius)
     << ";target_tolerance=" << format_double(target_tolerance)
     << ";max_subdivisions=" << max_subdivisions << ";oracle_samples=" << oracle_samples
     << ";angular_order=" << angular_order << ";seed=" << seed;
  return os.str();
}

GFunction::GFunction(const AmbientDim& n, const FractionalOrder& alpha)
    : b_(0.5 * (n.value() + alpha.value())),
      p_(0.5 * (n.value() + 1 + alpha.value())),
      g_inf_(0.5 * boost::math::beta(0.5, b_)) {}

// With x = t^2 / (1 + t^2): G(t) = G(inf) I_x(1/2, b) and G(inf) - G(t) = G(inf) I_{1-x}(b, 1/2).
double GFunction::operator()(double t) const {
  if (std::isnan(t)) return t;
  const double a = std::abs(t);
  double v;
  if (a <= 1.0) {
    v = g_inf_ * boost::math::ibeta(0.5, b_, a * a / (1.0 + a * a));
  } else {
    v = g_inf_ - complement(a);
  }
  return t < 0.0 ? -v : v;
}

double GFunction::complement(double t) const {
  if (std::isnan(t)) return t;
  if (t < 0.0) return g_inf_ + (*this)(-t);
  if (t <= 1.0) return g_inf_ - (*this)(t);
  if (std::isinf(t)) return 0.0;
  return g_inf_ * boost::math::ibeta(b_, 0.5, 1.0 / (1.0 + t * t));
}

double GFunction::derivative(double t) const { return std::pow(1.0 + t * t, -p_); }

double eval_G(double t, const AmbientDim& n, const FractionalOrder& alpha) {
  return GFunction(n, alpha)(t);
}

double eval_G_infinity(const AmbientDim& n, const FractionalOrder& alpha) {
  return GFunction(n, alpha).infinity();
}

double ball_curvature_exact(double radius, const AmbientDim& n, const FractionalOrder& alpha) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  const double a = alpha.value();
  return std::pow(2.0 * radius, -a) * sphere_measure(n.value() - 1) *
         boost::math::beta(0.5 * n.value(), 0.5 * (1.0 - a)) / a;
}

namespace {

// Directions w in S^{n-1} enter only through c = <w, x'/|x'|>. The rule
// integrates over theta in [0, pi/2]; each node stands for the pair c, -c.
struct AngularRule {
  std::vector<double> cosine;
  std::vector<double> weight;
};

AngularRule angular_rule(int n, int order) {
  AngularRule rule;
  if (n == 1) {
    rule.cosine = {1.0};
    rule.weight = {1.0};
    return rule;
  }
  const auto gl = quad::gauss_legendre(order, 0.0, 0.5 * std::numbers::pi);
  const double s = sphere_measure(n - 2);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    rule.cosine.push_back(std::cos(gl.nodes[i]));
    rule.weight.push_back(s * std::pow(std::sin(gl.nodes[i]), n - 2) * gl.weights[i]);
  }
  return rule;
}

class GraphIntegrand {
 public:
  GraphIntegrand(const RadialProfile& v, double r, bool two_leaf, const AmbientDim& n,
                 const FractionalOrder& alpha, int order)
      : v_(v), g_(n, alpha), r_(r), vr_(v.value(r)), two_leaf_(two_leaf), n_(n.value()),
        alpha_(alpha.value()), rule_(angular_rule(n.value(), order)) {}

  // Sums over the angular rule of the two bracket terms at distance rho.
  struct Pair {
    double leaf = 0.0;   // G((v(x') - v(y')) / rho) summed over c and -c
    double cross = 0.0;  // G(inf) - G((v(x') + v(y')) / rho), same sum
  };

  Pair pair(double rho) const {
    Pair p;
    for (std::size_t i = 0; i < rule_.cosine.size(); ++i) {
      const double c = rule_.cosine[i];
      double leaf = 0.0, cross = 0.0;
      for (double sc : {c, -c}) {
        const double vy = v_.value(radius(rho, sc));
        leaf += g_((vr_ - vy) / rho);
        if (two_leaf_) cross += g_.complement((vr_ + vy) / rho);
      }
      p.leaf += rule_.weight[i] * leaf;
      p.cross += rule_.weight[i] * cross;
    }
    return p;
  }

  // Leading coefficient P1 of the odd expansion leaf(rho) = P1 rho + O(rho^3).
  double leaf_slope() const {
    const double d1 = v_.d1(r_), d2 = v_.d2(r_);
    const double par = r_ > 1e-12 ? d1 / r_ : d2;
    double s = 0.0;
    for (std::size_t i = 0; i < rule_.cosine.size(); ++i) {
      const double c = rule_.cosine[i];
      const double q = d2 * c * c + par * (1.0 - c * c);
      s -= rule_.weight[i] * g_.derivative(d1 * c) * q;
    }
    return s;
  }

  double radius(double rho, double c) const {
    if (n_ == 1) return std::abs(r_ + c * rho);
    return std::sqrt(std::max(0.0, r_ * r_ + rho * rho + 2.0 * r_ * rho * c));
  }

  double alpha() const { return alpha_; }
  bool two_leaf() const { return two_leaf_; }
  const GFunction& g() const { return g_; }

 private:
  const RadialProfile& v_;
  GFunction g_;
  double r_, vr_;
  bool two_leaf_;
  int n_;
  double alpha_;
  AngularRule rule_;
};

// Radii where the integrand in rho can have reduced smoothness.
std::vector<double> rho_breaks(const RadialProfile& v, double r, double lo, double hi) {
  std::vector<double> out{lo, hi};
  auto add = [&](double x) {
    if (x > lo * (1.0 + 1e-12) && x < hi * (1.0 - 1e-12)) out.push_back(x);
  };
  auto b = v.breakpoints();
  b.push_back(0.0);
  for (double x : b) {
    add(std::abs(x - r));
    add(x + r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CurvatureResult nmc_graph(const RadialProfile& v, double r, bool two_leaf, const AmbientDim& n,
                          const FractionalOrder& alpha, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!v) throw Error(ErrorCode::InvalidArgument, "empty profile");
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "radius must be finite and >= 0");
  if (!v.smooth_at(r)) {
    throw Error(ErrorCode::NonSmoothPoint,
                "profile is not twice differentiable at |x'|=" + format_double(r));
  }
  if (two_leaf && !(v.value(r) > 0.0)) {
    throw Error(ErrorCode::InvalidPoint, "two-leaf profile must be positive at |x'|=" + format_double(r));
  }

  const GraphIntegrand f(v, r, two_leaf, n, alpha, cfg.angular_order);
  const double a = alpha.value();
  const double delta = cfg.pv_inner_radius;
  const double z = 0.01 * delta;
  const double tol = 0.2 * cfg.target_tolerance;
  const int cap = cfg.max_subdivisions;

  CurvatureResult out;
  bool ok = true;

  // [0, z]: the leaf term by its odd Taylor model, the cross term directly.
  const double slope = f.leaf_slope();
  double core = 2.0 * slope * std::pow(z, 1.0 - a) / (1.0 - a);
  const double mismatch = std::abs(f.pair(z).leaf - slope * z);
  double core_err = 2.0 * mismatch * std::pow(z, -a) / (2.0 - a);
  if (two_leaf) {
    auto cross = [&](double rho) { return 2.0 * std::pow(rho, -1.0 - a) * f.pair(rho).cross; };
    const auto res = quad::integrate(cross, 0.0, z, tol, tol, cap);
    core += res.value;
    core_err += res.error;
    ok = ok && res.converged;
  }

  // Remaining ranges in u = log(rho).
  auto in_log = [&](double u) {
    const double rho = std::exp(u);
    const auto p = f.pair(rho);
    return 2.0 * std::pow(rho, -a) * (p.leaf + p.cross);
  };
  auto log_range = [&](double lo, double hi) {
    auto br = rho_breaks(v, r, lo, hi);
    for (double& x : br) x = std::log(x);
    return quad::integrate(in_log, br, tol, tol, cap);
  };

  const auto inner = log_range(z, delta);
  core += inner.value;
  core_err += inner.error;
  ok = ok && inner.converged;

  double R = std::max(cfg.truncation_radius, 10.0 * delta);
  auto mid = log_range(delta, R);
  ok = ok && mid.converged;
  double mid_val = mid.value, mid_err = mid.error;

  const double tail_coeff = 2.0 * f.g().infinity() * sphere_measure(n.value() - 1) / a;
  auto tail = [&](double radius) { return tail_coeff * std::pow(radius, -a); };
  int escalations = 0;
  while (tail(R) > cfg.target_tolerance * std::max(1.0, std::abs(core + mid_val))) {
    if (escalations >= cfg.max_subdivisions || R >= 1e100) {
      ok = false;
      break;
    }
    const auto ext = log_range(R, 10.0 * R);
    mid_val += ext.value;
    mid_err += ext.error;
    ok = ok && ext.converged;
    R *= 10.0;
    ++escalations;
  }

  out.value = core + mid_val;
  out.error_core = core_err;
  out.error_midfield = mid_err;
  out.error_tail = tail(R);
  out.truncation_radius = R;
  out.converged = ok;
  return out;
}

double xprime_radius(const std::vector<double>& xprime, const AmbientDim& n) {
  if (static_cast<int>(xprime.size()) != n.value()) {
    throw Error(ErrorCode::InvalidArgument, "x' must have n components");
  }
  double s = 0.0;
  for (double c : xprime) s += c * c;
  return std::sqrt(s);
}

}  // namespace

CurvatureResult nmc_twoleaf(const RadialProfile& v, const std::vector<double>& xprime,
                            bool /*upper_leaf*/, const AmbientDim& n, const FractionalOrder& alpha,
                            const QuadratureConfig& config) {
  // Both leaves give the same value by the reflection z -> -z.
  return nmc_graph(v, xprime_radius(xprime, n), true, n, alpha, config);
}

CurvatureResult nmc_twoleaf(const RadialProfile& v, double r, const AmbientDim& n,
                            const FractionalOrder& alpha, const QuadratureConfig& config) {
  return nmc_graph(v, r, true, n, alpha, config);
}

CurvatureResult nmc_subgraph(const RadialProfile& u, const std::vector<double>& xprime,
                             const AmbientDim& n, const FractionalOrder& alpha,
                             const QuadratureConfig& config) {
  return nmc_graph(u, xprime_radius(xprime, n), false, n, alpha, config);
}

CurvatureResult nmc_subgraph(const RadialProfile& u, double r, const AmbientDim& n,
                             const FractionalOrder& alpha, const QuadratureConfig& config) {
  return nmc_graph(u, r, false, n, alpha, config);
}

}  // namespace fracurv
