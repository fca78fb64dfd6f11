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

#ifndef REFOCUS_PARALLEL_HPP_
#define REFOCUS_PARALLEL_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace refocus {

/// Compensated (Neumaier) summation.
class NeumaierSum {
 public:
  void add(double x);
  void merge(const NeumaierSum& other);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Worker count: `requested` if positive, else REFOCUS_THREADS if set to a
/// positive integer, else the hardware concurrency (at least 1). A positive
/// REFOCUS_THREADS also caps an explicit request.
int resolve_worker_count(int requested = 0);

/// Fills `sums` (one accumulator per channel) for items [begin, end).
using BlockKernel =
    std::function<void(std::int64_t begin, std::int64_t end, std::span<NeumaierSum> sums)>;

/// Splits [0, total) into fixed blocks of `block_size`, runs `kernel` on each
/// block from a pool of `workers` threads, and reduces the per-block sums in
/// block order. The result depends on `block_size` but never on `workers`.
/// The first exception thrown by a kernel is rethrown.
std::vector<double> run_blocks(std::int64_t total, int channels, std::int64_t block_size,
                               int workers, const BlockKernel& kernel);

}  // namespace refocus

#endif  // REFOCUS_PARALLEL_HPP_
