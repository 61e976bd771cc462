#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace monoembed {

inline constexpr const char* kVersion = "0.1.0";

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// "# monoembed <version>", "# command: <name>", then one "# key: value" per entry.
inline void write_csv_header(std::ostream& out, const std::string& command, const ConfigEcho& config) {
  out << "# monoembed " << kVersion << '\n';
  out << "# command: " << command << '\n';
  for (const auto& [k, v] : config) out << "# " << k << ": " << v << '\n';
}

/// Quotes a field when it holds a comma, quote or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace monoembed
