#include "selfopt/worker_pool.hpp"

#include <cstdint>
#include <cstdlib>
#include <string>

namespace selfopt {

WorkerPool::WorkerPool(int workers) {
  if (workers < 1) workers = 1;
  threads_.reserve(static_cast<size_t>(workers) - 1);
  for (int i = 1; i < workers; ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::unique_lock<std::mutex> lock(mu_);
    stop_ = true;
  }
  cv_start_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::worker_loop() {
  uint64_t seen = 0;
  for (;;) {
    const std::function<void(size_t)>* item;
    {
      std::unique_lock<std::mutex> lock(mu_);
      cv_start_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      item = item_;
      ++in_flight_;
    }
    for (;;) {
      size_t i;
      {
        std::unique_lock<std::mutex> lock(mu_);
        if (next_ >= total_) break;
        i = next_++;
      }
      (*item)(i);
    }
    {
      std::unique_lock<std::mutex> lock(mu_);
      --in_flight_;
      if (in_flight_ == 0 && next_ >= total_) cv_done_.notify_all();
    }
  }
}

void WorkerPool::run(size_t n, const std::function<void(size_t)>& item) {
  if (n == 0) return;
  if (threads_.empty() || n == 1) {
    for (size_t i = 0; i < n; ++i) item(i);
    return;
  }
  {
    std::unique_lock<std::mutex> lock(mu_);
    item_ = &item;
    total_ = n;
    next_ = 0;
    ++generation_;
  }
  cv_start_.notify_all();
  // The calling thread participates as a lane.
  for (;;) {
    size_t i;
    {
      std::unique_lock<std::mutex> lock(mu_);
      if (next_ >= total_) break;
      i = next_++;
    }
    item(i);
  }
  std::unique_lock<std::mutex> lock(mu_);
  cv_done_.wait(lock, [&] { return in_flight_ == 0 && next_ >= total_; });
  item_ = nullptr;
}

int resolve_workers(int configured) {
  if (const char* env = std::getenv("SELFOPT_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return configured >= 1 ? configured : 1;
}

}  // namespace selfopt
