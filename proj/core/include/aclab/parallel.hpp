#pragma once

#include <cstddef>
#include <span>

namespace aclab {

/// Worker count used by cell loops on the calling thread. Defaults to 1.
int thread_count();
/// Sets the worker count for cell loops started from the calling thread.
void set_thread_count(int count);

/// RAII override of the calling thread's worker count.
class ThreadCountScope {
 public:
  explicit ThreadCountScope(int count) : saved_(thread_count()) { set_thread_count(count); }
  ~ThreadCountScope() { set_thread_count(saved_); }
  ThreadCountScope(const ThreadCountScope&) = delete;
  ThreadCountScope& operator=(const ThreadCountScope&) = delete;

 private:
  int saved_;
};

/// Runs body(i) for i in [0, n). Each index is visited exactly once; bodies
/// must only write state owned by their index, which keeps results
/// independent of the schedule.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const int workers = thread_count();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
  for (long long i = 0; i < count; ++i) {
    body(static_cast<std::size_t>(i));
  }
}

/// Fixed-order pairwise sum. The bracketing depends only on the length of
/// the input, so the result is bit-identical across calls and thread counts.
double pairwise_sum(std::span<const double> values);

}  // namespace aclab
