#pragma once

#include <string>
#include <string_view>

namespace levylab {

// 17 significant digits, '.' decimal separator, independent of the global locale.
std::string format_double(double value);

// key: value line of a structured text report.
std::string report_line(std::string_view key, std::string_view value);
std::string report_line(std::string_view key, double value);

}  // namespace levylab
