#include "erdiff/parallel.hpp"

#include <cstdlib>
#include <string>

namespace erdiff {

std::size_t worker_count() {
  if (const char* env = std::getenv("ERDIFF_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace erdiff
