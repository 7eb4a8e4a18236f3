#include "gofpower/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gofpower {

unsigned threads_from_environment() {
  const char* env = std::getenv("GOFPOWER_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const long v = std::stol(env);
    return v >= 1 ? static_cast<unsigned>(v) : 1u;
  } catch (...) {
    return 1;
  }
}

}  // namespace gofpower
