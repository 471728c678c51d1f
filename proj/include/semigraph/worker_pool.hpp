/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace semigraph {

// Persistent pool of worker threads consuming an indexed task queue in
// dynamic (first-come) order. The calling thread participates, so a pool of
// size 1 spawns no threads at all and runs everything inline — handy both for
// determinism spot checks and as the honest single-thread baseline.
//
// run() is not re-entrant and must always be called from the same owner
// thread. If a task throws, the queue is drained early and the first
// exception is rethrown on the caller.
class WorkerPool {
 public:
  explicit WorkerPool(unsigned thread_count) {
    if (thread_count == 0) thread_count = 1;
    workers_.reserve(thread_count - 1);
    for (unsigned i = 0; i + 1 < thread_count; ++i)
      workers_.emplace_back([this] { worker_loop(); });
  }

  ~WorkerPool() {
    {
      std::lock_guard<std::mutex> lk(mu_);
      stop_ = true;
    }
    cv_start_.notify_all();
    for (auto& t : workers_) t.join();
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  unsigned thread_count() const noexcept {
    return static_cast<unsigned>(workers_.size()) + 1;
  }

  void run(std::size_t num_tasks, const std::function<void(std::size_t)>& fn) {
    if (num_tasks == 0) return;
    {
      std::lock_guard<std::mutex> lk(mu_);
      fn_ = &fn;
      num_tasks_ = num_tasks;
      next_.store(0, std::memory_order_relaxed);
      first_error_ = nullptr;
      busy_workers_ = workers_.size();
      ++generation_;
    }
    cv_start_.notify_all();
    drain();
    {
      std::unique_lock<std::mutex> lk(mu_);
      cv_done_.wait(lk, [this] { return busy_workers_ == 0; });
      fn_ = nullptr;
      if (first_error_) {
        auto err = first_error_;
        first_error_ = nullptr;
        std::rethrow_exception(err);
      }
    }
  }

 private:
  void drain() {
    const auto& fn = *fn_;
    const std::size_t total = num_tasks_;
    for (;;) {
      const std::size_t t = next_.fetch_add(1, std::memory_order_relaxed);
      if (t >= total) break;
      try {
        fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu_);
        if (!first_error_) first_error_ = std::current_exception();
        next_.store(total, std::memory_order_relaxed);  // cancel remaining tasks
      }
    }
  }

  void worker_loop() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock<std::mutex> lk(mu_);
        cv_start_.wait(lk, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      drain();
      {
        std::lock_guard<std::mutex> lk(mu_);
        if (--busy_workers_ == 0) cv_done_.notify_one();
      }
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  const std::function<void(std::size_t)>* fn_ = nullptr;
  std::size_t num_tasks_ = 0;
  std::atomic<std::size_t> next_{0};
  std::size_t busy_workers_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr first_error_;
};

}  // namespace semigraph
