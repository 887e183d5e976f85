#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace gravent {

/// Deterministic uniform sampler. Draws are always binary64 built from the
/// top 53 bits of mt19937_64, never std::uniform_real_distribution (whose
/// output is implementation-defined), so streams are identical across
/// platforms, precisions and thread counts.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 gen_;
};

/// Index-parallel map: f(i) for i in [0, n), strided across at most `jobs`
/// threads. Work per index is independent of the thread layout, so results
/// are bit-identical for any `jobs`. The first exception thrown by a worker
/// is rethrown on the calling thread.
template <class F>
void parallel_for(int n, int jobs, F&& f) {
  if (n <= 0) return;
  if (jobs <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  const int workers = std::min(jobs, n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gravent
