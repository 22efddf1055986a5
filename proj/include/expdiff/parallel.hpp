#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include <omp.h>

namespace expdiff {

enum class Exec { Serial, Parallel };

// Process-wide default used when a kernel is called without an explicit
// policy. The CLI sets it from --threads.
Exec default_exec();
void set_default_exec(Exec exec);

// Evaluates f(0..n-1) and returns the results in index order. The parallel
// variant schedules dynamically but the output is identical to the serial
// one; the exception from the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, Exec exec, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
  if (exec == Exec::Parallel && n > 1) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::size_t>(i)));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < count; ++i) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::size_t>(i)));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Smallest i < n with pred(i). The parallel variant evaluates blocks of
// indices concurrently and scans each block in order, so the answer (or the
// exception, when a failing index precedes every hit) matches the serial
// scan exactly.
template <class P>
std::optional<std::size_t> find_first(std::size_t n, Exec exec, P&& pred) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  const std::size_t block = 4 * static_cast<std::size_t>(omp_get_max_threads());
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t len = std::min(block, n - start);
    auto hits = parallel_map(len, Exec::Parallel, [&](std::size_t j) -> std::pair<bool, std::exception_ptr> {
      try {
        return {static_cast<bool>(pred(start + j)), nullptr};
      } catch (...) {
        return {false, std::current_exception()};
      }
    });
    for (std::size_t j = 0; j < len; ++j) {
      if (hits[j].second) std::rethrow_exception(hits[j].second);
      if (hits[j].first) return start + j;
    }
  }
  return std::nullopt;
}

}  // namespace expdiff
