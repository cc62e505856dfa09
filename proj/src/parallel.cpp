#include "wrtkit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace wrtkit {
namespace {

std::atomic<unsigned> requested{0};

unsigned from_environment() {
  if (const char* env = std::getenv("WRTKIT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 0;
}

}  // namespace

void set_thread_count(unsigned n) { requested = n; }

unsigned thread_count() {
  if (unsigned n = requested) return n;
  if (unsigned n = from_environment()) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace wrtkit
