#include "tass/threads.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace tass {

unsigned default_thread_count() noexcept {
  if (const char* env = std::getenv("TASS_THREADS"); env != nullptr && *env != '\0') {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
    if (ec == std::errc{} && *ptr == '\0' && value > 0)
      return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace tass
