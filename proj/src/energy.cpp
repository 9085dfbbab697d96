#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fracurv/kernel.hpp"
#include "fracurv/parallel.hpp"

namespace fracurv {

Box Box::cube(const AmbientDim& n, double half_width) {
  if (!(half_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "box half width must be positive");
  const auto d = static_cast<std::size_t>(n.total());
  return Box{Point(d, -half_width), Point(d, half_width)};
}

Box Box::scaled(double lambda) const {
  Box b = *this;
  for (double& c : b.lo) c *= lambda;
  for (double& c : b.hi) c *= lambda;
  return b;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

double Box::diameter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return std::sqrt(s);
}

bool Box::contains(const Point& x) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(x[i] >= lo[i] && x[i] < hi[i])) return false;
  }
  return true;
}

namespace {

void check_box(const Box& box, const AmbientDim& n) {
  if (static_cast<int>(box.lo.size()) != n.total() || box.hi.size() != box.lo.size()) {
    throw Error(ErrorCode::InvalidArgument, "box must have n+1 coordinates");
  }
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (!(box.hi[i] > box.lo[i]) || !std::isfinite(box.hi[i] - box.lo[i])) {
      throw Error(ErrorCode::InvalidArgument, "box must have positive finite extent");
    }
  }
}

template <class Engine>
void uniform_in_box(Engine& gen, const Box& box, Point& x) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * uniform01(gen);
}

template <class Engine>
void uniform_direction(Engine& gen, Point& w) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t i = 0; i < w.size(); i += 2) {
      const double u1 = 1.0 - uniform01(gen), u2 = uniform01(gen);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      w[i] = rad * std::cos(2.0 * std::numbers::pi * u2);
      if (i + 1 < w.size()) w[i + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
    for (double c : w) norm2 += c * c;
  } while (norm2 < 1e-300);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& c : w) c *= inv;
}

struct Shell {
  double a, b, weight;
  long samples;
};

}  // namespace

EnergyResult interaction_energy(const Region& e, const Region& f, const Box& box,
                                const AmbientDim& n, const FractionalOrder& alpha,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  check_box(box, n);
  const double a = alpha.value();
  const auto dim = static_cast<std::size_t>(n.total());

  {
    std::mt19937_64 gen(stream_seed(cfg.seed, 0xd15c));
    Point x(dim);
    for (int i = 0; i < 4096; ++i) {
      uniform_in_box(gen, box, x);
      if (e(x) && f(x)) throw Error(ErrorCode::DisjointnessViolation, "sets overlap inside the box");
    }
  }

  // Geometric shells in the pair distance; nothing in the box lies beyond its diameter.
  const double diam = box.diameter();
  const double s_min = 1e-8 * diam;
  std::vector<Shell> shells;
  for (double lo = s_min; lo < diam; lo *= 2.0) {
    const double hi = std::min(2.0 * lo, diam);
    shells.push_back({lo, hi, (std::pow(lo, -a) - std::pow(hi, -a)) / a, 0});
  }
  double total = 0.0;
  for (const auto& s : shells) total += s.weight * std::sqrt(s.a / diam);
  for (auto& s : shells) {
    const double share = s.weight * std::sqrt(s.a / diam) / total;
    s.samples = std::max<long>(1024, std::lround(share * static_cast<double>(cfg.oracle_samples)));
  }

  const double front = a * (1.0 - a) * box.volume() * sphere_measure(n.value());
  std::vector<double> mean(shells.size()), var(shells.size());
  parallel_for(shells.size(), cfg.threads, [&](std::size_t k) {
    const auto& sh = shells[k];
    std::mt19937_64 gen(stream_seed(cfg.seed, 0xe4e7, k));
    Point x(dim), w(dim), y(dim);
    const double a_pow = std::pow(sh.a, -a);
    long hits = 0;
    for (long i = 0; i < sh.samples; ++i) {
      uniform_in_box(gen, box, x);
      uniform_direction(gen, w);
      const double s = std::pow(a_pow - uniform01(gen) * a * sh.weight, -1.0 / a);
      for (std::size_t j = 0; j < dim; ++j) y[j] = x[j] + s * w[j];
      if (box.contains(y) && e(x) && f(y)) ++hits;
    }
    const double p = static_cast<double>(hits) / sh.samples;
    const double scale = front * sh.weight;
    mean[k] = scale * p;
    var[k] = scale * scale * p * (1.0 - p) / sh.samples;
  });

  EnergyResult out;
  double variance = 0.0;
  for (std::size_t k = 0; k < shells.size(); ++k) {
    out.value += mean[k];
    variance += var[k];
  }
  // Near a shared interface the shell mass grows by rho = 2^{1-alpha} per doubling.
  // Fit m_0 on the shells below 1e-4 diam and sum the geometric series below s_min.
  const double rho = std::pow(2.0, 1.0 - a);
  double pooled = 0.0, pooled_var = 0.0, norm = 0.0, g = 1.0;
  for (std::size_t k = 0; k < shells.size() && shells[k].b <= 1e-4 * diam; ++k, g *= rho) {
    pooled += mean[k];
    pooled_var += var[k];
    norm += g;
  }
  const double geo = 1.0 / (rho - 1.0);
  if (norm > 0.0) {
    out.short_range = pooled / norm * geo;
    out.value += out.short_range;
  }
  const double sr_sd = norm > 0.0 ? std::sqrt(pooled_var) / norm * geo : 0.0;
  out.error = 3.0 * std::sqrt(variance) + 0.5 * std::abs(out.short_range) + 3.0 * sr_sd;
  return out;
}

EnergyResult interaction_energy(const Body& e, const Body& f, const Box& box, const AmbientDim& n,
                                const FractionalOrder& alpha, const QuadratureConfig& config) {
  return interaction_energy(region_of(simplify(e)), region_of(simplify(f)), box, n, alpha, config);
}

EnergyResult perimeter(const Body& e_in, const Body& omega_in, const Box& box, const AmbientDim& n,
                       const FractionalOrder& alpha, const QuadratureConfig& config) {
  const Body e = simplify(e_in), omega = simplify(omega_in);
  const Region in_both = [&](const Point& x) { return e.contains(x) && omega.contains(x); };
  const Region omega_only = [&](const Point& x) { return omega.contains(x) && !e.contains(x); };
  const Region e_only = [&](const Point& x) { return e.contains(x) && !omega.contains(x); };
  const Region neither = [&](const Point& x) { return !e.contains(x) && !omega.contains(x); };

  EnergyResult out;
  out.truncated_to_box = true;
  const std::pair<const Region*, const Region*> terms[] = {
      {&in_both, &omega_only}, {&in_both, &neither}, {&e_only, &omega_only}};
  std::uint64_t k = 1;
  for (const auto& [lhs, rhs] : terms) {
    QuadratureConfig c = config;
    c.seed = stream_seed(config.seed, 0x9e7, k++);
    const auto r = interaction_energy(*lhs, *rhs, box, n, alpha, c);
    out.value += r.value;
    out.error += r.error;
    out.short_range += r.short_range;
  }
  return out;
}

}  // namespace fracurv
