#include <charconv>
#include <fstream>
#include <sstream>

#include "fracurv/cli.hpp"
#include "fracurv/error.hpp"
#include "fracurv/io.hpp"

namespace fracurv::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad("line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) bad("line " + std::to_string(lineno) + ": empty key");
    cfg.data_[section][key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void RunConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  data_[section][key] = value;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section, const std::string& key,
                           const std::string& fallback) {
  used_.insert({section, key});
  auto& sec = data_[section];
  const auto it = sec.find(key);
  if (it != sec.end()) return it->second;
  sec[key] = fallback;
  return fallback;
}

double RunConfig::get_double(const std::string& section, const std::string& key, double fallback) {
  const auto s = get(section, key, format_double(fallback));
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(key + ": not a number: '" + s + "'");
  return v;
}

long RunConfig::get_long(const std::string& section, const std::string& key, long fallback) {
  const auto s = get(section, key, std::to_string(fallback));
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(key + ": not an integer: '" + s + "'");
  return v;
}

std::uint64_t RunConfig::get_u64(const std::string& section, const std::string& key,
                                 std::uint64_t fallback) {
  const auto s = get(section, key, std::to_string(fallback));
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(key + ": not an unsigned integer: '" + s + "'");
  return v;
}

bool RunConfig::get_bool(const std::string& section, const std::string& key, bool fallback) {
  const auto s = get(section, key, fallback ? "true" : "false");
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  bad(key + ": expected true/false, got '" + s + "'");
}

std::vector<double> RunConfig::get_list(const std::string& section, const std::string& key,
                                        const std::string& fallback) {
  const auto s = get(section, key, fallback);
  std::vector<double> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) bad(key + ": bad list entry '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

void RunConfig::reject_unused(const std::vector<std::string>& sections) const {
  for (const auto& name : sections) {
    const auto s = data_.find(name);
    if (s == data_.end()) continue;
    for (const auto& [key, value] : s->second) {
      if (!used_.count({name, key})) {
        bad("unknown key '" + key + "'" + (name.empty() ? std::string() : " in [" + name + "]"));
      }
    }
  }
}

std::string RunConfig::str() const {
  std::string out;
  const auto global = data_.find("");
  if (global != data_.end()) {
    for (const auto& [k, v] : global->second) out += k + " = " + v + "\n";
  }
  for (const auto& [name, sec] : data_) {
    if (name.empty() || sec.empty()) continue;
    out += "\n[" + name + "]\n";
    for (const auto& [k, v] : sec) out += k + " = " + v + "\n";
  }
  return out;
}

std::string RunConfig::hash() const {
  RunConfig copy = *this;
  const auto g = copy.data_.find("");
  if (g != copy.data_.end()) g->second.erase("threads");
  return fnv1a_hex(copy.str());
}

}  // namespace fracurv::cli
