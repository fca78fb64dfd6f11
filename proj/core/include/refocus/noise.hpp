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

#ifndef REFOCUS_NOISE_HPP_
#define REFOCUS_NOISE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "refocus/rng.hpp"
#include "refocus/statevector.hpp"

namespace refocus {

struct NoiseParams {
  /// Half-width of the uniform amplitude-error distribution, radians.
  double e = 0.0;
  /// Probability of a single-body Pauli fault per affected qubit per gate.
  double eps2 = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  bool noiseless() const { return e == 0.0 && eps2 == 0.0; }
};

struct PauliEvent {
  int qubit;
  PauliAxis axis;
  bool operator==(const PauliEvent&) const = default;
};

struct TrajectoryLog {
  std::vector<double> drawn_epsilons;
  std::vector<PauliEvent> injected_paulis;
  std::int64_t ms_gates = 0;
  std::int64_t single_gates = 0;
  bool operator==(const TrajectoryLog&) const = default;
};

/// Address of one noisy gate inside a protocol run. Enumerated and quadrature
/// evaluations key their fault realizations on it, so sibling branches of a
/// measurement tree see the same faults at the same depth.
struct FaultSite {
  int stage = 0;
  int round = 0;
  int gate = 0;
  bool operator==(const FaultSite&) const = default;
};

/// Source of fault realizations for noisy gates.
class FaultModel {
 public:
  virtual ~FaultModel() = default;
  /// Amplitude error of the MS gate at `site`.
  virtual double amplitude_error(const FaultSite& site) = 0;
  /// Pauli fault (if any) hitting operand `operand` of the gate at `site`.
  virtual std::optional<PauliAxis> single_body_fault(const FaultSite& site, int operand) = 0;
};

/// Faults drawn from NoiseParams. With `memoize` set, the first draw at a
/// site is cached and replayed on later visits of the same site.
class SampledFaults final : public FaultModel {
 public:
  SampledFaults(const NoiseParams& params, Rng& rng, bool memoize = false);

  double amplitude_error(const FaultSite& site) override;
  std::optional<PauliAxis> single_body_fault(const FaultSite& site, int operand) override;

 private:
  static std::uint32_t key(const FaultSite& site, int slot);

  NoiseParams params_;
  Rng& rng_;
  bool memoize_;
  std::vector<std::pair<std::uint32_t, double>> epsilon_cache_;
  std::vector<std::pair<std::uint32_t, int>> fault_cache_;  // -1 = no fault
};

/// Deterministic amplitude errors, no single-body faults. Looks the error up
/// by site through a caller-supplied table.
class FixedFaults final : public FaultModel {
 public:
  /// `epsilons[index(site)]`, where index = (stage * rounds_per_stage + round)
  /// * 2 + gate. Sites outside the table get zero error.
  FixedFaults(std::span<const double> epsilons, int rounds_per_stage);

  double amplitude_error(const FaultSite& site) override;
  std::optional<PauliAxis> single_body_fault(const FaultSite&, int) override {
    return std::nullopt;
  }

 private:
  std::span<const double> epsilons_;
  int rounds_per_stage_;
};

/// No faults at all.
class IdealFaults final : public FaultModel {
 public:
  double amplitude_error(const FaultSite&) override { return 0.0; }
  std::optional<PauliAxis> single_body_fault(const FaultSite&, int) override {
    return std::nullopt;
  }
};

/// Uniform draw on [-e, e].
double draw_amplitude_error(Rng& rng, const NoiseParams& params);

/// MS gate on (q1, q2) with the site's amplitude error, then independent
/// single-body faults on q1 and q2.
void apply_noisy_ms(Statevector& s, int q1, int q2, FaultModel& faults, const FaultSite& site,
                    TrajectoryLog* log = nullptr);

/// Ideal rotation, then a single-body fault on `qubit`.
void apply_noisy_single(Statevector& s, int qubit, PauliAxis axis, double angle,
                        FaultModel& faults, const FaultSite& site, TrajectoryLog* log = nullptr);

/// Ideal Pauli (a pi/2 rotation up to phase), then a single-body fault.
void apply_noisy_pauli(Statevector& s, int qubit, PauliAxis axis, FaultModel& faults,
                       const FaultSite& site, TrajectoryLog* log = nullptr);

// Value-returning forms driven directly by NoiseParams and an RNG.
Statevector noisy_ms(Statevector s, int q1, int q2, const NoiseParams& params, Rng& rng,
                     TrajectoryLog& log);
Statevector noisy_single(Statevector s, int qubit, PauliAxis axis, double angle,
                         const NoiseParams& params, Rng& rng, TrajectoryLog& log);

}  // namespace refocus

#endif  // REFOCUS_NOISE_HPP_
