#pragma once

#include <string_view>

namespace erdiff {

/// Library version, as configured by CMake.
std::string_view version();

}  // namespace erdiff
