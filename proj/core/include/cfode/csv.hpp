#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cfode {

// 17 significant digits, printf %g style: enough to round-trip any
// binary64 value exactly, and locale independent.
std::string format_double(double v);

// Strict inverse of format_double; throws std::invalid_argument on
// anything that is not a full double token.
double parse_double(std::string_view text);

// "1e-1,1e-2,1e-3" -> {0.1, 0.01, 0.001}; rejects empty items.
std::vector<double> parse_double_list(std::string_view text);

}  // namespace cfode
