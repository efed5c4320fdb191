#ifndef STOCHOPTICS_PARALLEL_HPP
#define STOCHOPTICS_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace stochoptics {

/// Number of worker threads used by ensemble reductions (OpenMP).
int thread_count();
void set_thread_count(int threads);

/// Evaluates `map(i)` for i in [0, count) in parallel chunks and feeds the
/// results to `reduce(i, result)` strictly in index order.  The reduction is
/// therefore independent of the thread count and scheduling.
template <class Map, class Reduce>
void map_reduce_ordered(std::size_t count, Map&& map, Reduce&& reduce, std::size_t chunk = 0) {
  using Result = decltype(map(std::size_t{0}));
  if (chunk == 0) chunk = std::max<std::size_t>(1, 4 * static_cast<std::size_t>(thread_count()));
  std::vector<std::optional<Result>> results(std::min(chunk, count));
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    const std::size_t end = std::min(count, begin + chunk);
    const auto span = static_cast<long long>(end - begin);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < span; ++k) {
      try {
        results[static_cast<std::size_t>(k)].emplace(map(begin + static_cast<std::size_t>(k)));
      } catch (...) {
#pragma omp critical(stochoptics_map_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = begin; i < end; ++i) {
      reduce(i, std::move(*results[i - begin]));
      results[i - begin].reset();
    }
  }
}

}  // namespace stochoptics

#endif  // STOCHOPTICS_PARALLEL_HPP
