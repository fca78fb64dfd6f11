// Copyright 2026 The Refocus Authors
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

#include "refocus/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace refocus {

void NeumaierSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void NeumaierSum::merge(const NeumaierSum& other) {
  add(other.sum_);
  add(other.compensation_);
}

namespace {

int env_threads() {
  const char* raw = std::getenv("REFOCUS_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    std::size_t used = 0;
    const int value = std::stoi(raw, &used);
    if (used != std::string(raw).size() || value < 1) return 0;
    return value;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int resolve_worker_count(int requested) {
  const int cap = env_threads();
  int workers = requested > 0 ? requested : cap;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (cap > 0) workers = std::min(workers, cap);
  return std::max(workers, 1);
}

std::vector<double> run_blocks(std::int64_t total, int channels, std::int64_t block_size,
                               int workers, const BlockKernel& kernel) {
  if (total < 0) throw std::invalid_argument("negative item count");
  if (channels < 1) throw std::invalid_argument("need at least one channel");
  if (block_size < 1) throw std::invalid_argument("block size must be >= 1");
  const std::int64_t blocks = (total + block_size - 1) / block_size;
  std::vector<std::vector<NeumaierSum>> partial(blocks, std::vector<NeumaierSum>(channels));

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= blocks || failed.load()) return;
      try {
        const std::int64_t begin = b * block_size;
        kernel(begin, std::min(total, begin + block_size), partial[b]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const int pool = static_cast<int>(std::min<std::int64_t>(std::max(workers, 1), blocks));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<NeumaierSum> reduced(channels);
  for (const auto& block : partial) {
    for (int c = 0; c < channels; ++c) reduced[c].merge(block[c]);
  }
  std::vector<double> out(channels);
  for (int c = 0; c < channels; ++c) out[c] = reduced[c].value();
  return out;
}

}  // namespace refocus
