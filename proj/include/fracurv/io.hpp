#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracurv {

/// Splits "k1=v1 k2=v2" (whitespace separated) into a map.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Shortest round-trippable decimal form; output is locale independent.
std::string format_double(double x);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// Minimal CSV writer; numbers go through format_double so reruns are byte-identical.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  std::string str() const { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace fracurv
