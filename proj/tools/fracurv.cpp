// Command-line front end: one subcommand per module operation.
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fracurv/cli.hpp"
#include "fracurv/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fractional mean curvature toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  const std::map<std::string, std::string> help = {
      {"curvature", "H_alpha along a boundary sample (curvature.csv, curvature.json)"},
      {"barrier-verify", "positivity check of the two-leaf barrier (barrier_verify.json)"},
      {"cone-sweep", "cone constant M(eps) over a slope grid (cone_sweep.csv, cone_sweep.json)"},
      {"slide", "slide the barrier family onto a candidate (slide.json)"},
      {"blowdown", "flatness certificate and Holder rescaling (certificate.json, holder.csv)"},
      {"perimeter", "Monte Carlo alpha-perimeter of a slab in a ball (perimeter.json)"},
  };
  for (const auto& name : fracurv::cli::command_names()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed (overrides config)");
    sub->add_option("--threads", threads, "worker threads (overrides config)")->check(CLI::PositiveNumber);
  }
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  fracurv::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = fracurv::cli::RunConfig::load(config_path);
  } catch (const fracurv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (seed) cfg.set("", "seed", std::to_string(*seed));
  if (threads) cfg.set("", "threads", std::to_string(*threads));
  return fracurv::cli::run_command(command, cfg, out_dir, std::cerr);
}
