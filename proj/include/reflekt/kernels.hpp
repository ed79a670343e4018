#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>
#include <vector>

#include <omp.h>

#include "reflekt/matrix.hpp"

// OpenMP kernels.  Every kernel has a serial reference path selected by
// Exec::serial; both paths do exact arithmetic, so they must agree bit for bit.
namespace reflekt::kernels {

enum class Exec { serial, parallel };

// below this many entries rref stays serial even when asked for parallel
inline constexpr std::size_t kParallelRrefThreshold = 2048;

std::vector<int> rref(CycMatrix &a, Exec exec);

// exceptions cannot cross an OpenMP region; keep the first one and rethrow
class ErrorSlot {
public:
  template <class F> void run(F &&f) {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() {
    if (first_) std::rethrow_exception(first_);
  }

private:
  std::mutex mu_;
  std::exception_ptr first_;
};

// Folds fn(acc, i) over i in [0, n).  The parallel path gives each thread a
// private accumulator and merges them in thread order.
template <class Acc, class Fn, class Merge>
Acc reduce(std::size_t n, Acc const &zero, Fn &&fn, Merge &&merge, Exec exec) {
  if (exec == Exec::serial || n < 2) {
    Acc acc = zero;
    for (std::size_t i = 0; i < n; ++i) fn(acc, i);
    return acc;
  }
  int threads = omp_get_max_threads();
  std::vector<Acc> parts(threads, zero);
  ErrorSlot err;
#pragma omp parallel num_threads(threads)
  {
    Acc &mine = parts[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) err.run([&] { fn(mine, i); });
  }
  err.rethrow();
  Acc acc = zero;
  for (auto &p : parts) merge(acc, std::move(p));
  return acc;
}

// out[i] = fn(i) for i in [0, n)
template <class T, class Fn>
std::vector<T> map(std::size_t n, Fn &&fn, Exec exec) {
  std::vector<T> out(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) err.run([&] { out[i] = fn(i); });
  err.rethrow();
  return out;
}

} // namespace reflekt::kernels
