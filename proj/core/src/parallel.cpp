#include "axivisc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace axivisc {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("AXIVISC_THREADS")) {
    try {
      const int c = std::stoi(cap);
      if (c >= 1) n = std::min(n, c);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

}  // namespace axivisc
