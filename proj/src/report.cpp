#include "levylab/report.hpp"

#include <charconv>
#include <cmath>

namespace levylab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

std::string report_line(std::string_view key, std::string_view value) {
  std::string line(key);
  line += ": ";
  line += value;
  line += '\n';
  return line;
}

std::string report_line(std::string_view key, double value) { return report_line(key, format_double(value)); }

}  // namespace levylab
