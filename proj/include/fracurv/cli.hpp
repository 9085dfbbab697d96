#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fracurv::cli {

/// Flat key=value configuration with optional [section] headers. Keys before
/// the first header are global. Every lookup records its default, so str()
/// returns the fully resolved configuration.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);

  void set(const std::string& section, const std::string& key, const std::string& value);
  bool has(const std::string& section, const std::string& key) const;

  std::string get(const std::string& section, const std::string& key, const std::string& fallback);
  double get_double(const std::string& section, const std::string& key, double fallback);
  long get_long(const std::string& section, const std::string& key, long fallback);
  std::uint64_t get_u64(const std::string& section, const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& section, const std::string& key, bool fallback);
  /// Comma separated numbers.
  std::vector<double> get_list(const std::string& section, const std::string& key,
                               const std::string& fallback);

  /// Throws on keys in the given sections that no lookup consumed.
  void reject_unused(const std::vector<std::string>& sections) const;

  /// Canonical text: global keys, then sections in name order.
  std::string str() const;
  /// FNV-1a of str() without the threads setting (results do not depend on it).
  std::string hash() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
  mutable std::set<std::pair<std::string, std::string>> used_;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"curvature", "barrier-verify", "cone-sweep",
                                                 "slide",     "blowdown",       "perimeter"};
  return names;
}

/// Runs one subcommand, writing its outputs and resolved.cfg into out_dir.
/// Returns the process exit status: 0 completed/positive, 2 inconclusive, 1 error.
int run_command(const std::string& command, RunConfig& config, const std::string& out_dir,
                std::ostream& log);

}  // namespace fracurv::cli
