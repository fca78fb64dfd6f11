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

#include "refocus/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace refocus {

namespace {

constexpr PauliAxis kAxes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

std::optional<PauliAxis> draw_fault(Rng& rng, double eps2) {
  if (eps2 <= 0.0) return std::nullopt;
  if (!rng.bernoulli(eps2)) return std::nullopt;
  return kAxes[rng.below(3)];
}

void inject(Statevector& s, int qubit, std::optional<PauliAxis> fault, TrajectoryLog* log) {
  if (!fault) return;
  s.pauli(qubit, *fault);
  if (log != nullptr) log->injected_paulis.push_back({qubit, *fault});
}

}  // namespace

void NoiseParams::validate() const {
  if (!(e >= 0.0) || !std::isfinite(e)) {
    throw std::invalid_argument("amplitude error half-width e must be finite and >= 0");
  }
  if (!(eps2 >= 0.0 && eps2 <= 1.0)) {
    throw std::invalid_argument("single-body error probability eps2 must lie in [0, 1]");
  }
}

SampledFaults::SampledFaults(const NoiseParams& params, Rng& rng, bool memoize)
    : params_(params), rng_(rng), memoize_(memoize) {
  params_.validate();
}

std::uint32_t SampledFaults::key(const FaultSite& site, int slot) {
  if (site.stage < 0 || site.stage >= 256 || site.round < 0 || site.round >= 4096 ||
      site.gate < 0 || site.gate >= 64 || slot < 0 || slot >= 4) {
    throw std::out_of_range("fault site outside the addressable range");
  }
  return (static_cast<std::uint32_t>(site.stage) << 20) |
         (static_cast<std::uint32_t>(site.round) << 8) |
         (static_cast<std::uint32_t>(site.gate) << 2) | static_cast<std::uint32_t>(slot);
}

double SampledFaults::amplitude_error(const FaultSite& site) {
  if (!memoize_) return draw_amplitude_error(rng_, params_);
  const std::uint32_t k = key(site, 3);
  for (const auto& [cached_key, value] : epsilon_cache_) {
    if (cached_key == k) return value;
  }
  const double value = draw_amplitude_error(rng_, params_);
  epsilon_cache_.emplace_back(k, value);
  return value;
}

std::optional<PauliAxis> SampledFaults::single_body_fault(const FaultSite& site, int operand) {
  if (params_.eps2 <= 0.0) return std::nullopt;
  if (!memoize_) return draw_fault(rng_, params_.eps2);
  const std::uint32_t k = key(site, operand);
  for (const auto& [cached_key, value] : fault_cache_) {
    if (cached_key == k) {
      return value < 0 ? std::nullopt : std::optional<PauliAxis>(kAxes[value]);
    }
  }
  const auto fault = draw_fault(rng_, params_.eps2);
  fault_cache_.emplace_back(k, fault ? static_cast<int>(*fault) : -1);
  return fault;
}

FixedFaults::FixedFaults(std::span<const double> epsilons, int rounds_per_stage)
    : epsilons_(epsilons), rounds_per_stage_(rounds_per_stage) {
  if (rounds_per_stage < 1) throw std::invalid_argument("rounds_per_stage must be >= 1");
}

double FixedFaults::amplitude_error(const FaultSite& site) {
  if (site.gate < 0 || site.gate > 1 || site.round < 0 || site.round >= rounds_per_stage_) {
    return 0.0;
  }
  const std::size_t index =
      static_cast<std::size_t>((site.stage * rounds_per_stage_ + site.round) * 2 + site.gate);
  return index < epsilons_.size() ? epsilons_[index] : 0.0;
}

double draw_amplitude_error(Rng& rng, const NoiseParams& params) {
  if (params.e == 0.0) return 0.0;
  return rng.symmetric(params.e);
}

void apply_noisy_ms(Statevector& s, int q1, int q2, FaultModel& faults, const FaultSite& site,
                    TrajectoryLog* log) {
  const double epsilon = faults.amplitude_error(site);
  s.ms(q1, q2, epsilon);
  if (log != nullptr) {
    log->drawn_epsilons.push_back(epsilon);
    ++log->ms_gates;
  }
  inject(s, q1, faults.single_body_fault(site, 0), log);
  inject(s, q2, faults.single_body_fault(site, 1), log);
}

void apply_noisy_single(Statevector& s, int qubit, PauliAxis axis, double angle,
                        FaultModel& faults, const FaultSite& site, TrajectoryLog* log) {
  s.rotate(qubit, axis, angle);
  if (log != nullptr) ++log->single_gates;
  inject(s, qubit, faults.single_body_fault(site, 0), log);
}

void apply_noisy_pauli(Statevector& s, int qubit, PauliAxis axis, FaultModel& faults,
                       const FaultSite& site, TrajectoryLog* log) {
  s.pauli(qubit, axis);
  if (log != nullptr) ++log->single_gates;
  inject(s, qubit, faults.single_body_fault(site, 0), log);
}

Statevector noisy_ms(Statevector s, int q1, int q2, const NoiseParams& params, Rng& rng,
                     TrajectoryLog& log) {
  SampledFaults faults(params, rng);
  apply_noisy_ms(s, q1, q2, faults, FaultSite{}, &log);
  return s;
}

Statevector noisy_single(Statevector s, int qubit, PauliAxis axis, double angle,
                         const NoiseParams& params, Rng& rng, TrajectoryLog& log) {
  SampledFaults faults(params, rng);
  apply_noisy_single(s, qubit, axis, angle, faults, FaultSite{}, &log);
  return s;
}

}  // namespace refocus
