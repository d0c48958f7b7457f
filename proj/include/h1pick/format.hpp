#pragma once

#include <string>

namespace h1pick {

/// Locale-independent shortest-general formatting with `digits` significant digits.
std::string format_number(double v, int digits = 12);

}  // namespace h1pick
