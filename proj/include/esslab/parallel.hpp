#pragma once

#include <span>

namespace esslab::parallel {

inline constexpr const char* kThreadsEnv = "ESSLAB_THREADS";

int max_threads();
void set_threads(int threads);

// Caps OpenMP parallelism from ESSLAB_THREADS when set. Returns the value
// applied, or 0 when the variable is absent.
int apply_thread_env();

// Left-to-right sum. Every reduction in the engine goes through a fixed
// order so results do not depend on the thread count.
double ordered_sum(std::span<const double> values);

}  // namespace esslab::parallel
