#include <cmath>
#include <filesystem>
#include <ostream>

#include "json.hpp"

#include "fracurv/barrier.hpp"
#include "fracurv/blowdown.hpp"
#include "fracurv/cli.hpp"
#include "fracurv/io.hpp"
#include "fracurv/kernel.hpp"
#include "fracurv/parallel.hpp"
#include "fracurv/sliding.hpp"

namespace fracurv::cli {

using nlohmann::json;

namespace {

struct Common {
  AmbientDim n;
  FractionalOrder alpha;
  QuadratureConfig quad;
};

// pv_inner_radius = auto resolves to min(0.1, eps/2) when a barrier scale is known.
Common read_common(RunConfig& c, double barrier_eps = NAN) {
  const AmbientDim n(static_cast<int>(c.get_long("", "n", 1)));
  const FractionalOrder alpha(c.get_double("", "alpha", 0.5));
  QuadratureConfig q;
  q.seed = c.get_u64("", "seed", q.seed);
  q.threads = static_cast<int>(c.get_long("", "threads", 1));
  const auto pv = c.get("quadrature", "pv_inner_radius", "auto");
  if (pv == "auto") {
    q.pv_inner_radius = std::isnan(barrier_eps) ? 0.1 : std::min(0.1, 0.5 * barrier_eps);
  } else {
    q.pv_inner_radius = c.get_double("quadrature", "pv_inner_radius", 0.1);
  }
  q.truncation_radius = c.get_double("quadrature", "truncation_radius", q.truncation_radius);
  q.target_tolerance = c.get_double("quadrature", "target_tolerance", q.target_tolerance);
  q.max_subdivisions = static_cast<int>(c.get_long("quadrature", "max_subdivisions", q.max_subdivisions));
  q.oracle_samples = c.get_long("quadrature", "oracle_samples", q.oracle_samples);
  q.angular_order = static_cast<int>(c.get_long("quadrature", "angular_order", q.angular_order));
  q.validate();
  return {n, alpha, q};
}

double barrier_epsilon_of(const std::string& descriptor) {
  const auto kv = parse_key_values(descriptor);
  const auto kind = kv.find("kind");
  if (kind == kv.end() || kind->second != "barrier") return NAN;
  const auto e = kv.find("epsilon");
  return e == kv.end() ? 0.1 : std::stod(e->second);
}

json to_json(const Point& p) {
  json a = json::array();
  for (double c : p) a.push_back(c);
  return a;
}

json to_json(const CurvatureResult& r) {
  return {{"value", r.value},
          {"error_core", r.error_core},
          {"error_midfield", r.error_midfield},
          {"error_tail", r.error_tail},
          {"converged", r.converged}};
}

void finish(const RunConfig& c, const std::filesystem::path& dir) {
  write_text_file((dir / "resolved.cfg").string(), c.str());
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text_file(path.string(), j.dump(2) + "\n");
}

int cmd_curvature(RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const std::string s = "curvature";
  const auto geometry = c.get(s, "geometry", "twoleaf");
  const bool graph = geometry == "twoleaf" || geometry == "subgraph";
  const auto descriptor = graph ? c.get(s, "profile", "kind=barrier epsilon=0.1") : std::string();
  const auto com = read_common(c, graph ? barrier_epsilon_of(descriptor) : NAN);
  RadialProfile profile;
  Body body = Body::half_space(0.0);
  if (geometry == "twoleaf") {
    profile = parse_profile(descriptor);
    body = Body::two_leaf(profile);
  } else if (geometry == "subgraph") {
    profile = parse_profile(descriptor);
    body = Body::subgraph(profile);
  } else if (geometry == "halfspace") {
    const double offset = c.get_double(s, "offset", 0.0);
    profile = RadialProfile::constant(offset);
    body = Body::half_space(offset);
  } else if (geometry == "ball") {
    body = Body::ball(c.get_double(s, "radius", 1.0));
  } else if (geometry == "cone") {
    body = Body::cone(c.get_double(s, "slope", 0.1));
  } else {
    throw Error(ErrorCode::UnsupportedGeometry, "unknown geometry '" + geometry + "'");
  }
  const bool has_formula = static_cast<bool>(profile);
  const auto method = c.get(s, "method", has_formula ? "formula" : "direct");
  if (method != "formula" && method != "direct") {
    throw Error(ErrorCode::InvalidArgument, "method must be formula or direct");
  }
  if (method == "formula" && !has_formula) {
    throw Error(ErrorCode::UnsupportedGeometry, "formula path needs a graph geometry; use method = direct");
  }
  SamplingSpec spec;
  spec.count = static_cast<int>(c.get_long(s, "count", 64));
  spec.r_max = c.get_double(s, "r_max", 4.0);
  spec.radii = c.get_list(s, "radii", "");
  spec.both_leaves = c.get_bool(s, "both_leaves", false);
  spec.refine_near = c.get_list(s, "refine_near", "1,2");
  c.reject_unused({"", "quadrature", s});
  const auto hash = c.hash();

  const auto samples = boundary_sample(body, com.n, spec);
  std::vector<CurvatureResult> res(samples.size());
  const bool twoleaf = geometry == "twoleaf";
  parallel_for(samples.size(), com.quad.threads, [&](std::size_t i) {
    const auto& x = samples[i].x;
    if (method == "direct") {
      QuadratureConfig q = com.quad;
      q.seed = stream_seed(com.quad.seed, i);
      q.threads = 1;
      res[i] = nmc_direct(body, x, com.n, com.alpha, q);
    } else {
      const std::vector<double> xp(x.begin(), x.end() - 1);
      res[i] = twoleaf ? nmc_twoleaf(profile, xp, samples[i].upper_leaf, com.n, com.alpha, com.quad)
                       : nmc_subgraph(profile, xp, com.n, com.alpha, com.quad);
    }
  });

  CsvWriter csv({"r", "height", "H", "err_total"});
  json records = json::array();
  bool converged = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& x = samples[i].x;
    csv.row({horizontal_norm(x), vertical(x), res[i].value, res[i].total_error()});
    json r = to_json(res[i]);
    r["point"] = to_json(x);
    r["config_hash"] = hash;
    records.push_back(r);
    converged = converged && res[i].converged;
  }
  write_text_file((dir / "curvature.csv").string(), csv.str());
  write_json(dir / "curvature.json", records);
  finish(c, dir);
  log << "curvature: " << samples.size() << " samples (" << method << ")\n";
  return converged ? 0 : 2;
}

int cmd_barrier_verify(RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const std::string s = "barrier-verify";
  const double eps = c.get_double(s, "epsilon", 0.05);
  const auto com = read_common(c, eps);
  VerifySpec spec;
  spec.sampling.count = static_cast<int>(c.get_long(s, "count", spec.sampling.count));
  spec.ray_max = c.get_double(s, "ray_max", spec.ray_max);
  spec.ray_count = static_cast<int>(c.get_long(s, "ray_count", spec.ray_count));
  spec.far_field_check = c.get_bool(s, "far_field", true);
  spec.half_epsilon_check = c.get_bool(s, "half_epsilon", true);
  spec.bisect_epsilon = c.get_bool(s, "bisect", true);
  spec.bisect_steps = static_cast<int>(c.get_long(s, "bisect_steps", spec.bisect_steps));
  spec.bisect_upper = c.get_double(s, "bisect_upper", spec.bisect_upper);
  c.reject_unused({"", "quadrature", s});
  const auto hash = c.hash();

  const auto b = build_barrier(eps);
  const auto v = verify_barrier(eps, com.n, com.alpha, com.quad, spec);
  json samples = json::array();
  for (const auto& smp : v.samples) {
    samples.push_back({{"point", to_json(smp.point)},
                       {"H", smp.curvature.value},
                       {"err", smp.curvature.total_error()},
                       {"failed", smp.failed}});
  }
  json j = {{"epsilon", v.epsilon},
            {"n", v.n},
            {"alpha", v.alpha},
            {"samples", samples},
            {"min_margin", v.min_margin},
            {"verdict", to_string(v.verdict)},
            {"empirical_eps0", v.empirical_eps0 ? json(*v.empirical_eps0) : json(nullptr)},
            {"failures", v.failures},
            {"regularity_constant", b.regularity_constant},
            {"config_hash", hash}};
  if (v.half_epsilon_positive) j["half_epsilon_positive"] = *v.half_epsilon_positive;
  if (v.cone) {
    j["far_field"] = {{"M", v.cone->value},
                      {"M_err", v.cone->error},
                      {"scaled_H", *v.far_field_scaled},
                      {"within_5_percent", *v.far_field_ok}};
  }
  write_json(dir / "barrier_verify.json", j);
  finish(c, dir);
  log << "barrier-verify: eps=" << format_double(eps) << " verdict " << to_string(v.verdict)
      << " min_margin " << format_double(v.min_margin) << "\n";
  return v.verdict == Verdict::Positive ? 0 : 2;
}

int cmd_cone_sweep(RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const std::string s = "cone-sweep";
  const auto grid = c.get_list(s, "grid", "0.4,0.2,0.1,0.05");
  const auto com = read_common(c);
  c.reject_unused({"", "quadrature", s});
  const auto hash = c.hash();

  const auto sweep = sweep_cone_constant(grid, com.n, com.alpha, com.quad);
  CsvWriter csv({"epsilon", "M", "err"});
  json rows = json::array();
  for (const auto& r : sweep.rows) {
    csv.row({r.epsilon, r.value, r.error});
    rows.push_back({{"epsilon", r.epsilon},
                    {"M", r.value},
                    {"err", r.error},
                    {"radii", r.radii},
                    {"scaled_H", r.scaled},
                    {"scaled_err", r.errors},
                    {"max_residual", r.max_residual}});
  }
  json j = {{"rows", rows},
            {"blowup_trend", sweep.blowup_trend ? json(*sweep.blowup_trend) : json(nullptr)},
            {"config_hash", hash}};
  write_text_file((dir / "cone_sweep.csv").string(), csv.str());
  write_json(dir / "cone_sweep.json", j);
  finish(c, dir);
  log << "cone-sweep: " << sweep.rows.size() << " slopes\n";
  return 0;
}

int cmd_slide(RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const std::string s = "slide";
  const auto candidate = parse_profile(c.get(s, "candidate", "kind=constant level=1"));
  const auto envelope_desc = c.get(s, "envelope", "kind=constant level=1");
  const auto eps0_text = c.get(s, "eps0", "0.05");
  const bool rescale = c.get_bool(s, "rescale", true);
  const double modulus_r_max = c.get_double(s, "modulus_r_max", 1e6);
  SlideConfig sc;
  sc.floor = c.get_double(s, "floor", sc.floor);
  sc.iterations = static_cast<int>(c.get_long(s, "iterations", sc.iterations));
  sc.r_max = c.get_double(s, "r_max", sc.r_max);
  sc.grid_points = static_cast<int>(c.get_long(s, "grid_points", sc.grid_points));
  const auto com = read_common(c);
  c.reject_unused({"", "quadrature", s});
  const auto hash = c.hash();

  double eps0;
  if (eps0_text == "auto") {
    eps0 = empirical_eps0(com.n, com.alpha, com.quad);
  } else {
    eps0 = c.get_double(s, "eps0", 0.05);
  }
  double lambda = 1.0;
  Body body = Body::two_leaf(candidate);
  if (rescale) {
    const auto r = rescale_for_slide(body, SublinearEnvelope(parse_profile(envelope_desc)), eps0,
                                     modulus_r_max);
    lambda = r.lambda;
    body = r.rescaled;
  }
  auto out = slide(body, eps0, com.n, com.alpha, com.quad, sc);
  out.lambda = lambda;

  json j = {{"lambda", out.lambda},
            {"eps0", eps0},
            {"eps_star", out.eps_star},
            {"floor", out.floor},
            {"touch_point", out.touch_point ? to_json(*out.touch_point) : json(nullptr)},
            {"H_at_touch", out.curvature_at_touch ? json(out.curvature_at_touch->value) : json(nullptr)},
            {"err", out.curvature_at_touch ? json(out.curvature_at_touch->total_error()) : json(nullptr)},
            {"verdict", to_string(out.verdict)},
            {"interpretation", out.interpretation},
            {"grid_tolerance", out.grid_tolerance},
            {"config_hash", hash}};
  write_json(dir / "slide.json", j);
  finish(c, dir);
  log << "slide: " << to_string(out.verdict) << " eps_star=" << format_double(out.eps_star) << "\n";
  return 0;
}

int cmd_blowdown(RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const std::string s = "blowdown";
  const auto desc = c.get(s, "profile", "kind=sqrt scale=1");
  const auto env_desc = c.get(s, "envelope", desc);
  const double eps = c.get_double(s, "epsilon", 0.1);
  const double R = c.get_double(s, "R", 100.0);
  const double beta = c.get_double(s, "beta", 0.5);
  const auto holder_R = c.get_list(s, "holder_R", "10,100");
  const long samples = c.get_long(s, "samples", 2001);
  const long holder_samples = c.get_long(s, "holder_samples", 200);
  (void)read_common(c);
  c.reject_unused({"", "quadrature", s});
  const auto hash = c.hash();

  const auto u = parse_profile(desc);
  const auto cert = flatness_certificate(Body::subgraph(u), SublinearEnvelope(parse_profile(env_desc)),
                                         eps, R, static_cast<int>(samples));
  json j = {{"R", cert.R},
            {"epsilon", cert.epsilon},
            {"R_eps_predicted", cert.R_eps_predicted},
            {"passed", cert.passed},
            {"violator", cert.violator ? to_json(*cert.violator) : json(nullptr)},
            {"sup", cert.sup},
            {"inf", cert.inf},
            {"agrees_with_prediction", cert.agrees_with_prediction},
            {"config_hash", hash}};
  CsvWriter csv({"R", "beta", "lhs", "rhs"});
  for (double r : holder_R) {
    const auto h = holder_rescaling_check(u, r, beta, static_cast<int>(holder_samples));
    csv.row({r, beta, h.lhs, h.rhs});
  }
  write_json(dir / "certificate.json", j);
  write_text_file((dir / "holder.csv").string(), csv.str());
  finish(c, dir);
  log << "blowdown: certificate " << (cert.passed ? "passed" : "failed") << " at R=" << format_double(R)
      << "\n";
  return 0;
}

int cmd_perimeter(RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const std::string s = "perimeter";
  const auto desc = c.get(s, "set_profile", "kind=constant level=0.5");
  const double radius = c.get_double(s, "domain_radius", 1.0);
  const double half = c.get_double(s, "box_half_width", 2.0);
  const double scale = c.get_double(s, "scale", 1.0);
  const auto com = read_common(c);
  c.reject_unused({"", "quadrature", s});
  const auto hash = c.hash();

  const Body e = Body::scaled(Body::two_leaf(parse_profile(desc)), scale);
  const Body omega = Body::ball(radius * scale);
  const Box box = Box::cube(com.n, half).scaled(scale);
  const auto p = perimeter(e, omega, box, com.n, com.alpha, com.quad);
  json j = {{"value", p.value},
            {"error", p.error},
            {"short_range", p.short_range},
            {"truncated_to_box", p.truncated_to_box},
            {"scale", scale},
            {"config_hash", hash}};
  write_json(dir / "perimeter.json", j);
  finish(c, dir);
  log << "perimeter: " << format_double(p.value) << " +- " << format_double(p.error) << "\n";
  return 0;
}

}  // namespace

int run_command(const std::string& command, RunConfig& config, const std::string& out_dir,
                std::ostream& log) {
  try {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    if (command == "curvature") return cmd_curvature(config, dir, log);
    if (command == "barrier-verify") return cmd_barrier_verify(config, dir, log);
    if (command == "cone-sweep") return cmd_cone_sweep(config, dir, log);
    if (command == "slide") return cmd_slide(config, dir, log);
    if (command == "blowdown") return cmd_blowdown(config, dir, log);
    if (command == "perimeter") return cmd_perimeter(config, dir, log);
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fracurv::cli
