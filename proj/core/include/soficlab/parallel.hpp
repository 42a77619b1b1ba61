#ifndef SOFICLAB_PARALLEL_HPP
#define SOFICLAB_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace soficlab {

/// Runs fn(job) for job = 0..job_count-1 on up to `threads` workers.
/// Jobs are the unit of determinism: each job writes only its own slot,
/// so results are identical for any thread count. Exceptions from jobs
/// are captured and rethrown (first one in job order).
inline void parallel_for(int job_count, int threads,
                         const std::function<void(int)>& fn) {
  if (job_count <= 0) return;
  if (threads < 1) threads = 1;
  if (threads == 1 || job_count == 1) {
    for (int j = 0; j < job_count; ++j) fn(j);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(job_count));
  auto worker = [&]() {
    for (;;) {
      int j = next.fetch_add(1);
      if (j >= job_count) return;
      try {
        fn(j);
      } catch (...) {
        errors[static_cast<size_t>(j)] = std::current_exception();
      }
    }
  };
  int n = std::min(threads, job_count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

} // namespace soficlab

#endif
