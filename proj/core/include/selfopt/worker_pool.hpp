#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace selfopt {

// Fixed-size pool of execution lanes. Work items must be pure functions of
// their inputs writing to disjoint output slots; the pool only partitions the
// index range, so results are identical for any worker count including 1.
class WorkerPool {
 public:
  explicit WorkerPool(int workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int workers() const { return static_cast<int>(threads_.size()) + 1; }

  // Runs item(i) for i in [0, n); blocks until all items complete.
  // Items are claimed from a shared atomic counter; each item writes only to
  // its own slot, so claim order cannot affect results.
  void run(size_t n, const std::function<void(size_t)>& item);

 private:
  void worker_loop();

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  const std::function<void(size_t)>* item_ = nullptr;
  size_t total_ = 0;
  size_t next_ = 0;
  size_t in_flight_ = 0;
  uint64_t generation_ = 0;
  bool stop_ = false;
};

// Resolves the worker count: override > 0 wins, then SELFOPT_WORKERS, then fallback.
int resolve_workers(int configured);

}  // namespace selfopt
