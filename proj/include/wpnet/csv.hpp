#pragma once

#include <string>

namespace wpnet {

/// Locale-free decimal rendering with 12 significant digits, for every CSV
/// cell holding a real number.
std::string format_number(double v);

}  // namespace wpnet
