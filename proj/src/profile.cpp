#include "fracurv/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fracurv/error.hpp"
#include "fracurv/io.hpp"

namespace fracurv {

namespace {

using detail::ProfileImpl;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Constant final : ProfileImpl {
  double level;
  explicit Constant(double l) : level(l) {}
  double value(double) const override { return level; }
  double d1(double) const override { return 0.0; }
  double d2(double) const override { return 0.0; }
  std::string describe() const override { return "kind=constant level=" + fmt(level); }
};

struct Linear final : ProfileImpl {
  double slope, intercept;
  Linear(double s, double c) : slope(s), intercept(c) {}
  double value(double r) const override { return intercept + slope * r; }
  double d1(double) const override { return slope; }
  double d2(double) const override { return 0.0; }
  std::vector<double> breakpoints() const override { return {0.0}; }
  std::string describe() const override {
    return "kind=linear slope=" + fmt(slope) + " intercept=" + fmt(intercept);
  }
};

struct Sqrt final : ProfileImpl {
  double scale;
  explicit Sqrt(double s) : scale(s) {}
  double value(double r) const override { return scale * std::sqrt(r); }
  double d1(double r) const override { return 0.5 * scale / std::sqrt(r); }
  double d2(double r) const override { return -0.25 * scale / (r * std::sqrt(r)); }
  std::vector<double> breakpoints() const override { return {0.0}; }
  std::string describe() const override { return "kind=sqrt scale=" + fmt(scale); }
};

struct Bump final : ProfileImpl {
  double amplitude, width;
  Bump(double a, double w) : amplitude(a), width(w) {}
  double value(double r) const override {
    if (r >= width) return 0.0;
    const double s = 1.0 - (r / width) * (r / width);
    return amplitude * r * r * s * s * s;
  }
  double d1(double r) const override {
    if (r >= width) return 0.0;
    const double w2 = width * width;
    const double s = 1.0 - r * r / w2;
    // d/dr [r^2 s^3] = 2 r s^3 - 6 r^3 s^2 / w^2
    return amplitude * (2.0 * r * s * s * s - 6.0 * r * r * r * s * s / w2);
  }
  double d2(double r) const override {
    if (r >= width) return 0.0;
    const double w2 = width * width;
    const double s = 1.0 - r * r / w2;
    // 2 s^3 - 12 r^2 s^2 / w^2 - 18 r^2 s^2 / w^2 + 24 r^4 s / w^4
    return amplitude *
           (2.0 * s * s * s - 30.0 * r * r * s * s / w2 + 24.0 * r * r * r * r * s / (w2 * w2));
  }
  std::vector<double> breakpoints() const override { return {width}; }
  std::string describe() const override {
    return "kind=bump amplitude=" + fmt(amplitude) + " width=" + fmt(width);
  }
};

// Transition polynomial S on [0,1] and its derivatives.
double step(CutoffKind k, double t) {
  switch (k) {
    case CutoffKind::Quintic: return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    case CutoffKind::Septic:
      return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
    case CutoffKind::Cubic: return t * t * (3.0 - 2.0 * t);
  }
  return 0.0;
}
double step1(CutoffKind k, double t) {
  switch (k) {
    case CutoffKind::Quintic: return 30.0 * t * t * (1.0 - t) * (1.0 - t);
    case CutoffKind::Septic: return 140.0 * t * t * t * (1.0 - t) * (1.0 - t) * (1.0 - t);
    case CutoffKind::Cubic: return 6.0 * t * (1.0 - t);
  }
  return 0.0;
}
double step2(CutoffKind k, double t) {
  switch (k) {
    case CutoffKind::Quintic: return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
    case CutoffKind::Septic:
      return 420.0 * t * t * (1.0 - t) * (1.0 - t) * (1.0 - 2.0 * t);
    case CutoffKind::Cubic: return 6.0 - 12.0 * t;
  }
  return 0.0;
}

const char* cutoff_name(CutoffKind k) {
  switch (k) {
    case CutoffKind::Quintic: return "quintic";
    case CutoffKind::Septic: return "septic";
    case CutoffKind::Cubic: return "cubic";
  }
  return "?";
}

struct Cutoff final : ProfileImpl {
  CutoffKind kind;
  explicit Cutoff(CutoffKind k) : kind(k) {}
  double value(double r) const override { return cutoff_value(kind, r); }
  double d1(double r) const override { return cutoff_d1(kind, r); }
  double d2(double r) const override { return cutoff_d2(kind, r); }
  std::vector<double> breakpoints() const override { return {1.0, 2.0}; }
  std::string describe() const override { return std::string("kind=cutoff shape=") + cutoff_name(kind); }
};

struct Barrier final : ProfileImpl {
  double eps;
  CutoffKind kind;
  Barrier(double e, CutoffKind k) : eps(e), kind(k) {}
  double value(double r) const override {
    if (r <= 1.0) return eps;
    if (r >= 2.0) return eps * r;
    const double eta = cutoff_value(kind, r);
    return eps * (eta + (1.0 - eta) * r);
  }
  double d1(double r) const override {
    if (r <= 1.0) return 0.0;
    if (r >= 2.0) return eps;
    const double eta = cutoff_value(kind, r);
    const double e1 = cutoff_d1(kind, r);
    return eps * (e1 * (1.0 - r) + (1.0 - eta));
  }
  double d2(double r) const override {
    if (r <= 1.0 || r >= 2.0) return 0.0;
    const double e1 = cutoff_d1(kind, r);
    const double e2 = cutoff_d2(kind, r);
    return eps * (e2 * (1.0 - r) - 2.0 * e1);
  }
  std::vector<double> breakpoints() const override { return {1.0, 2.0}; }
  std::string describe() const override {
    return "kind=barrier epsilon=" + fmt(eps) + " shape=" + cutoff_name(kind);
  }
};

struct Scaled final : ProfileImpl {
  std::shared_ptr<const ProfileImpl> inner;
  double lambda;
  Scaled(std::shared_ptr<const ProfileImpl> in, double l) : inner(std::move(in)), lambda(l) {}
  double value(double r) const override { return lambda * inner->value(r / lambda); }
  double d1(double r) const override { return inner->d1(r / lambda); }
  double d2(double r) const override { return inner->d2(r / lambda) / lambda; }
  std::vector<double> breakpoints() const override {
    auto b = inner->breakpoints();
    for (double& x : b) x *= lambda;
    return b;
  }
  std::string describe() const override {
    return inner->describe() + " dilate=" + fmt(lambda);
  }
};

struct Shifted final : ProfileImpl {
  std::shared_ptr<const ProfileImpl> inner;
  double shift;
  Shifted(std::shared_ptr<const ProfileImpl> in, double s) : inner(std::move(in)), shift(s) {}
  double value(double r) const override { return inner->value(r) + shift; }
  double d1(double r) const override { return inner->d1(r); }
  double d2(double r) const override { return inner->d2(r); }
  std::vector<double> breakpoints() const override { return inner->breakpoints(); }
  std::string describe() const override { return inner->describe() + " shift=" + fmt(shift); }
};

// Fritsch-Carlson monotone cubic Hermite interpolation.
struct Sampled final : ProfileImpl {
  std::vector<double> x, y, m;

  Sampled(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
    const std::size_t n = x.size();
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    m.assign(n, 0.0);
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      m[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (delta[i] == 0.0) {
        m[i] = 0.0;
        m[i + 1] = 0.0;
        continue;
      }
      const double a = m[i] / delta[i];
      const double b = m[i + 1] / delta[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        m[i] = tau * a * delta[i];
        m[i + 1] = tau * b * delta[i];
      }
    }
  }

  std::size_t segment(double r) const {
    auto it = std::upper_bound(x.begin(), x.end(), r);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x.begin() - 1, 0));
    return std::min(i, x.size() - 2);
  }

  double value(double r) const override {
    if (r >= x.back()) return y.back() + m.back() * (r - x.back());
    if (r <= x.front()) return y.front() + m.front() * (r - x.front());
    const std::size_t i = segment(r);
    const double h = x[i + 1] - x[i];
    const double t = (r - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * m[i] +
           (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h * m[i + 1];
  }
  double d1(double r) const override {
    if (r >= x.back()) return m.back();
    if (r <= x.front()) return m.front();
    const std::size_t i = segment(r);
    const double h = x[i + 1] - x[i];
    const double t = (r - x[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y[i] + (-6 * t2 + 6 * t) * y[i + 1]) / h +
           (3 * t2 - 4 * t + 1) * m[i] + (3 * t2 - 2 * t) * m[i + 1];
  }
  double d2(double r) const override {
    if (r >= x.back() || r <= x.front()) return 0.0;
    const std::size_t i = segment(r);
    const double h = x[i + 1] - x[i];
    const double t = (r - x[i]) / h;
    return ((12 * t - 6) * y[i] + (-12 * t + 6) * y[i + 1]) / (h * h) +
           ((6 * t - 4) * m[i] + (6 * t - 2) * m[i + 1]) / h;
  }
  std::vector<double> breakpoints() const override {
    if (x.size() > 256) return {x.front(), x.back()};
    return x;
  }
  std::string describe() const override {
    return "kind=sampled knots=" + std::to_string(x.size());
  }
};

}  // namespace

double cutoff_value(CutoffKind kind, double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return 1.0 - step(kind, r - 1.0);
}

double cutoff_d1(CutoffKind kind, double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  return -step1(kind, r - 1.0);
}

double cutoff_d2(CutoffKind kind, double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  return -step2(kind, r - 1.0);
}

bool RadialProfile::smooth_at(double r) const {
  if (!(r >= 0.0)) return false;
  if (r == 0.0) {
    const double g = d1(0.0);
    return std::isfinite(g) && std::abs(g) <= 1e-12 && std::isfinite(d2(0.0));
  }
  return std::isfinite(d1(r)) && std::isfinite(d2(r));
}

RadialProfile RadialProfile::constant(double level) {
  return {std::make_shared<Constant>(level), Representation::ClosedForm};
}

RadialProfile RadialProfile::linear(double slope, double intercept) {
  return {std::make_shared<Linear>(slope, intercept), Representation::ClosedForm};
}

RadialProfile RadialProfile::sqrt(double scale) {
  return {std::make_shared<Sqrt>(scale), Representation::ClosedForm};
}

RadialProfile RadialProfile::bump(double amplitude, double width) {
  if (!(width > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump width must be positive");
  return {std::make_shared<Bump>(amplitude, width), Representation::ClosedForm};
}

RadialProfile RadialProfile::cutoff(CutoffKind kind) {
  return {std::make_shared<Cutoff>(kind), Representation::ClosedForm};
}

RadialProfile RadialProfile::barrier(double epsilon, CutoffKind kind) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "barrier epsilon must be positive");
  return {std::make_shared<Barrier>(epsilon, kind), Representation::ClosedForm};
}

RadialProfile RadialProfile::sampled(std::vector<double> r, std::vector<double> values) {
  if (r.size() != values.size() || r.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "sampled profile needs >= 2 matching (r, value) pairs");
  }
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (!(r[i + 1] > r[i])) throw Error(ErrorCode::InvalidArgument, "sampled radii must increase");
  }
  if (r.front() < 0.0) throw Error(ErrorCode::InvalidArgument, "sampled radii must be >= 0");
  return {std::make_shared<Sampled>(std::move(r), std::move(values)), Representation::Sampled};
}

RadialProfile RadialProfile::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  if (lambda == 1.0) return *this;
  return {std::make_shared<Scaled>(impl_, lambda), rep_};
}

RadialProfile RadialProfile::shifted(double shift) const {
  if (shift == 0.0) return *this;
  return {std::make_shared<Shifted>(impl_, shift), rep_};
}

RadialProfile load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open profile CSV " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "empty profile CSV " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,value") throw Error(ErrorCode::Io, "profile CSV header must be \"r,value\"");
  std::vector<double> rs, vs;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::Io, "malformed CSV row: " + line);
    rs.push_back(std::stod(line.substr(0, comma)));
    vs.push_back(std::stod(line.substr(comma + 1)));
  }
  return RadialProfile::sampled(std::move(rs), std::move(vs));
}

RadialProfile parse_profile(const std::string& descriptor) {
  const auto kv = parse_key_values(descriptor);
  auto get = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
  };
  auto kind_it = kv.find("kind");
  if (kind_it == kv.end()) throw Error(ErrorCode::InvalidArgument, "profile needs kind=...");
  const std::string& kind = kind_it->second;
  CutoffKind shape = CutoffKind::Quintic;
  if (auto it = kv.find("shape"); it != kv.end()) {
    if (it->second == "quintic") shape = CutoffKind::Quintic;
    else if (it->second == "septic") shape = CutoffKind::Septic;
    else if (it->second == "cubic") shape = CutoffKind::Cubic;
    else throw Error(ErrorCode::InvalidArgument, "unknown cutoff shape " + it->second);
  }
  RadialProfile p;
  if (kind == "constant") p = RadialProfile::constant(get("level", 1.0));
  else if (kind == "linear") p = RadialProfile::linear(get("slope", 1.0), get("intercept", 0.0));
  else if (kind == "sqrt") p = RadialProfile::sqrt(get("scale", 1.0));
  else if (kind == "bump") p = RadialProfile::bump(get("amplitude", 1.0), get("width", 1.0));
  else if (kind == "barrier") p = RadialProfile::barrier(get("epsilon", 0.1), shape);
  else if (kind == "cutoff") p = RadialProfile::cutoff(shape);
  else if (kind == "csv") {
    auto it = kv.find("path");
    if (it == kv.end()) throw Error(ErrorCode::InvalidArgument, "kind=csv needs path=...");
    p = load_profile_csv(it->second);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown profile kind " + kind);
  }
  if (kv.count("dilate")) p = p.scaled(get("dilate", 1.0));
  if (kv.count("shift")) p = p.shifted(get("shift", 0.0));
  return p;
}

}  // namespace fracurv
