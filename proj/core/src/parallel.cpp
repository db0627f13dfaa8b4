#include "bo2d/parallel.hpp"

#include <fftw3.h>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>

#include "fft_plans.hpp"

namespace bo2d {
namespace {
std::atomic<int> g_threads{1};
}

void set_max_threads(int n) {
  if (n < 1) n = 1;
  g_threads = n;
#ifdef BO2D_HAVE_FFTW_THREADS
  std::lock_guard lock(detail::planner_mutex());
  static const bool initialized = fftw_init_threads() != 0;
  if (initialized) fftw_plan_with_nthreads(n);
#endif
}

int max_threads() noexcept { return g_threads; }

int configure_threads_from_env() {
  if (const char* env = std::getenv("BO2D_THREADS")) {
    try {
      set_max_threads(std::stoi(env));
    } catch (const std::exception&) {
      // ignore malformed values; keep the current cap
    }
  }
  return max_threads();
}

}  // namespace bo2d
