#include "levylab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace levylab {

int thread_count() {
  int requested = 0;
  if (const char* env = std::getenv("LEVYLAB_THREADS")) {
    try {
      requested = std::stoi(env);
    } catch (const std::exception&) {
      requested = 0;
    }
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace levylab
