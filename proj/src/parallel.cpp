#include "frontlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace frontlab {

namespace {
int g_workers = 1;
}

int workers() { return g_workers; }

void set_workers(int n) { g_workers = std::max(1, n); }

void apply_worker_env() {
  if (const char* env = std::getenv("FRONTLAB_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) g_workers = n;
  }
}

}  // namespace frontlab
