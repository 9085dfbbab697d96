#include "fracurv/blowdown.hpp"

#include <algorithm>
#include <cmath>

#include "fracurv/io.hpp"

namespace fracurv {

Body blowdown_rescale(const Body& e, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  const Body b = simplify(e);
  if (std::holds_alternative<body::HalfSpace>(b.variant())) {
    return Body::half_space(std::get<body::HalfSpace>(b.variant()).offset / R);
  }
  if (const auto* s = std::get_if<body::Subgraph>(&b.variant())) {
    const auto& u = s->profile;
    return Body::subgraph(u.shifted(-u(0.0)).scaled(1.0 / R));
  }
  throw Error(ErrorCode::UnsupportedGeometry, "blow-down needs a subgraph or half-space, got " + b.kind());
}

FlatnessCertificate flatness_certificate(const Body& e, const SublinearEnvelope& envelope,
                                         double epsilon, double R, int samples) {
  if (!(epsilon > 0.0 && epsilon < 0.25)) {
    throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1/4), got " + format_double(epsilon));
  }
  if (!(R > 0.0) || samples < 2) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  const Body rescaled = blowdown_rescale(e, R);

  FlatnessCertificate out;
  out.R = R;
  out.epsilon = epsilon;
  out.sup = -std::numeric_limits<double>::infinity();
  out.inf = std::numeric_limits<double>::infinity();
  auto height = [&](double r) {
    if (const auto* h = std::get_if<body::HalfSpace>(&rescaled.variant())) return h->offset;
    return std::get<body::Subgraph>(rescaled.variant()).profile(r);
  };
  for (int i = 0; i < samples; ++i) {
    const double r = static_cast<double>(i) / (samples - 1);
    const double z = height(r);
    out.sup = std::max(out.sup, z);
    out.inf = std::min(out.inf, z);
    if (!out.violator && std::abs(z) > epsilon) out.violator = Point{r, z};
  }
  out.passed = !out.violator;

  const auto m = sublinearity_modulus(envelope, 0.5 * epsilon);
  out.R_eps_predicted = 2.0 * m.c_delta / epsilon;
  out.agrees_with_prediction = !(R >= out.R_eps_predicted && m.sublinear_on_range) || out.passed;
  return out;
}

HolderCheck holder_rescaling_check(const RadialProfile& u, double R, double beta, int samples) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "beta must lie in (0,1), got " + format_double(beta));
  }
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  if (samples < 2 || samples % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "Holder grid needs an even sample count so 0 is skipped");
  }
  std::vector<double> s(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) s[static_cast<std::size_t>(i)] = -1.0 + (i + 0.5) * 2.0 / samples;

  // Along the x_1 axis grad u(x) = u'(|x_1|) sign(x_1) e_1.
  auto grad = [&](double x) { return x < 0.0 ? -u.d1(-x) : u.d1(x); };
  const auto rescaled = u.scaled(1.0 / R);  // u_R(r) = u(R r) / R
  auto grad_r = [&](double y) { return y < 0.0 ? -rescaled.d1(-y) : rescaled.d1(y); };

  HolderCheck out;
  double sem_u = 0.0, sem_ur = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double xi = 0.25 * R * s[i], xj = 0.25 * R * s[j];
      sem_u = std::max(sem_u, std::abs(grad(xi) - grad(xj)) / std::pow(std::abs(xi - xj), beta));
      const double yi = 0.25 * s[i], yj = 0.25 * s[j];
      sem_ur = std::max(sem_ur, std::abs(grad_r(yi) - grad_r(yj)) / std::pow(std::abs(yi - yj), beta));
    }
  }
  out.lhs = sem_u;
  out.rhs = sem_ur / std::pow(R, beta);
  return out;
}

}  // namespace fracurv
