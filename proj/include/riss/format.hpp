#pragma once

#include <string>

namespace riss {

/// Shortest-safe round-trip text for a double: 17 significant digits.
std::string format_real(double v);

}  // namespace riss
