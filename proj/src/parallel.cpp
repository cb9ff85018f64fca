#include "esslab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "esslab/error.hpp"

namespace esslab::parallel {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int threads) {
  require(threads >= 1, kThreadsEnv, "must be >= 1");
  omp_set_num_threads(threads);
}

int apply_thread_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr || *raw == '\0') return 0;
  int threads = 0;
  try {
    threads = std::stoi(raw);
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, std::string(kThreadsEnv) + " must be an integer");
  }
  set_threads(threads);
  return threads;
}

double ordered_sum(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

}  // namespace esslab::parallel
