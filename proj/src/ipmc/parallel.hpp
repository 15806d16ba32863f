// Copyright 2026 The ipmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ipmc {

/// Executes barrier-separated rounds of independent tasks.
///
/// `run(count, task)` invokes task(0) ... task(count-1), possibly on several
/// worker threads, and returns only after all of them finished (the barrier).
/// Tasks of one round must have disjoint write footprints; under that contract
/// the result does not depend on the thread count, and a one-thread executor
/// runs the same schedule inline. One executor serves one caller at a time;
/// the shared serial() instance never touches shared state and may be used
/// from any thread.
class RoundExecutor {
 public:
  explicit RoundExecutor(unsigned threads = 1);
  ~RoundExecutor();

  RoundExecutor(const RoundExecutor&) = delete;
  RoundExecutor& operator=(const RoundExecutor&) = delete;

  unsigned threads() const noexcept { return static_cast<unsigned>(workers_.size()) + 1; }

  /// Runs one round. Exceptions thrown by tasks are rethrown here (the first
  /// one by task index).
  void run(std::size_t count, const std::function<void(std::size_t)>& task) const;

  static RoundExecutor& serial();

 private:
  void worker_loop(unsigned worker);
  void run_slice(unsigned slot) const;

  std::vector<std::thread> workers_;
  mutable std::mutex mutex_;
  mutable std::condition_variable start_cv_;
  mutable std::condition_variable done_cv_;
  mutable std::size_t generation_ = 0;
  mutable unsigned pending_ = 0;
  mutable bool stopping_ = false;
  mutable std::size_t count_ = 0;
  mutable const std::function<void(std::size_t)>* task_ = nullptr;
  mutable std::vector<std::exception_ptr> errors_;
};

}  // namespace ipmc
