#pragma once

#include <string>

namespace toeplitz {

/// Shortest decimal text that reads back to exactly the same double.
std::string format_number(double v);

/// Value rounded to 12 significant digits for tables; integral values keep a ".0".
std::string display_number(double v);

}  // namespace toeplitz
