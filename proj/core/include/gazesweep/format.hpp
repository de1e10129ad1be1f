#pragma once

#include <string>

namespace gazesweep {

/// Shortest decimal that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace gazesweep
