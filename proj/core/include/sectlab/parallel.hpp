#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

namespace sectlab {

/// Worker count used by parallel_map. Defaults to SECTLAB_THREADS when set,
/// else the hardware concurrency. Changing it never changes a result:
/// every index owns its random stream and reductions run in index order.
int worker_count();
void set_worker_count(int workers);

namespace detail {
void run_indexed(std::size_t count, const std::function<void(std::size_t)>& body);
}

/// Evaluates fn(i) for i in [0, count) across the worker pool and returns
/// the results in index order. Nested calls run serially on the caller.
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(count);
  detail::run_indexed(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

/// Pairwise (cascade) summation; the tree shape depends only on the length.
double pairwise_sum(std::span<const double> values);

}  // namespace sectlab
