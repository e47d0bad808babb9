#include "rulemine/parallel.hpp"

#include <omp.h>

namespace rulemine {

namespace {
int default_threads() {
  static const int n = omp_get_max_threads();
  return n;
}
}  // namespace

void set_thread_count(int threads) {
  const int base = default_threads();
  omp_set_num_threads(threads > 0 ? threads : base);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace rulemine
