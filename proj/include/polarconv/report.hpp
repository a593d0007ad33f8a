#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "version.hpp"

namespace polarconv {

// Fixed-width numeric formatting used by every report field: %.12g keeps the
// text stable across runs while preserving enough digits to be useful.
inline std::string report_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Structured text report with a stable field order: a header line, then
// sections "[name]" holding "key = value" rows in insertion order. The
// [metadata] section carries wall time and is excluded from byte comparisons.
class ReportBuilder {
 public:
  ReportBuilder() {
    body_ = std::string(report_header) + "\n";
    body_ += "tool-version = " + std::string(version_string) + "\n";
  }

  void section(const std::string& name) { body_ += "\n[" + name + "]\n"; }

  void kv(const std::string& key, const std::string& value) {
    body_ += key + " = " + value + "\n";
  }
  void kv(const std::string& key, const char* value) {
    kv(key, std::string(value));
  }
  void kv(const std::string& key, double value) { kv(key, report_number(value)); }
  void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, std::int64_t value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, std::uint64_t value) {
    kv(key, std::to_string(value));
  }
  void kv(const std::string& key, bool value) {
    kv(key, value ? std::string("true") : std::string("false"));
  }

  void raw(const std::string& text) { body_ += text; }

  const std::string& str() const { return body_; }

 private:
  std::string body_;
};

// Report text with the [metadata] section removed; byte-level determinism is
// defined on this view.
inline std::string strip_metadata(const std::string& report) {
  std::string out;
  bool skipping = false;
  std::size_t pos = 0;
  while (pos < report.size()) {
    std::size_t end = report.find('\n', pos);
    if (end == std::string::npos) end = report.size();
    std::string line = report.substr(pos, end - pos);
    if (!line.empty() && line.front() == '[') {
      skipping = (line == "[metadata]");
    }
    if (!skipping) {
      out += line;
      out += '\n';
    }
    if (end == report.size()) break;
    pos = end + 1;
  }
  // Preserve the absence of a trailing newline.
  if (!report.empty() && report.back() != '\n' && !out.empty() && out.back() == '\n')
    out.pop_back();
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output path: " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output path: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

}  // namespace polarconv
