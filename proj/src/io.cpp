#include "fracurv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracurv/error.hpp"

namespace fracurv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::UnsupportedGeometry: return "unsupported-geometry";
    case ErrorCode::InvalidEnvelope: return "invalid-envelope";
    case ErrorCode::NotSublinear: return "not-sublinear";
    case ErrorCode::NonSmoothPoint: return "non-smooth-point";
    case ErrorCode::InvalidPoint: return "invalid-point";
    case ErrorCode::DisjointnessViolation: return "disjointness-violation";
    case ErrorCode::InvalidCutoff: return "invalid-cutoff";
    case ErrorCode::HomogeneityViolation: return "homogeneity-violation";
    case ErrorCode::InitialInclusion: return "initial-inclusion";
    case ErrorCode::InvalidEpsilon: return "invalid-epsilon";
    case ErrorCode::InvalidExponent: return "invalid-exponent";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InvalidArgument, "expected key=value, got '" + tok + "'");
    }
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw Error(ErrorCode::InvalidArgument, "CSV row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ += ',';
    out_ += format_double(values[i]);
  }
  out_ += '\n';
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace fracurv
