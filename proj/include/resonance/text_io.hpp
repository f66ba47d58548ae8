#pragma once

#include <complex>
#include <optional>
#include <string>

namespace resonance {

// %.{digits}g ; 17 significant digits round-trips binary64.
std::string format_double(double value, int significant_digits = 17);

// Complex literal "re,im" (shell-safe, no parentheses or i suffix).
std::optional<std::complex<double>> parse_complex(const std::string& text);

// RFC-4180 quoting: wraps in quotes when the field contains a comma, quote,
// or newline.
std::string csv_field(const std::string& raw);

std::string json_escape(const std::string& raw);

}  // namespace resonance
