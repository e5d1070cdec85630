#include "erdiff/version.hpp"

namespace erdiff {

std::string_view version() { return ERDIFF_VERSION; }

}  // namespace erdiff
