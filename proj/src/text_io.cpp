#include "resonance/text_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

namespace resonance {

std::string format_double(double value, int significant_digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

std::optional<std::complex<double>> parse_complex(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 >= text.size())
    return std::nullopt;
  if (text.find(',', comma + 1) != std::string::npos) return std::nullopt;

  auto parse_part = [](const std::string& s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return v;
  };
  auto re = parse_part(text.substr(0, comma));
  auto im = parse_part(text.substr(comma + 1));
  if (!re || !im) return std::nullopt;
  return std::complex<double>(*re, *im);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace resonance
