#pragma once

// Fan-out over independent certificate computations. The serial path is the
// reference; the OpenMP path must produce identical results in the same
// order. The first exception by index is rethrown after all tasks finish.

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

namespace vdp {

enum class Execution { Serial, Parallel };

bool parallel_available();
int parallel_threads();

template <class F>
auto parallel_map(std::size_t count, F&& task, Execution mode = Execution::Parallel)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  auto run_one = [&](std::size_t i) {
    try {
      slots[i].emplace(task(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (mode == Execution::Parallel) {
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) run_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace vdp
