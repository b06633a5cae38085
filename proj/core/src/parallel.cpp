#include "aclab/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace aclab {

namespace {
thread_local int tl_thread_count = 1;
constexpr std::size_t kLeaf = 64;
}  // namespace

int thread_count() { return tl_thread_count; }

void set_thread_count(int count) {
  if (count < 1) throw std::invalid_argument("thread count must be at least 1");
  tl_thread_count = count;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace aclab
