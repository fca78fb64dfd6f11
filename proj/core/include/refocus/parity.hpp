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

#ifndef REFOCUS_PARITY_HPP_
#define REFOCUS_PARITY_HPP_

#include <array>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "refocus/noise.hpp"
#include "refocus/rng.hpp"
#include "refocus/statevector.hpp"

namespace refocus {

enum class ParityKind { ZZ, XX };
enum class RepetitionMode { Fixed, EarlyStop };
enum class Sector { Even, Odd };

std::string_view to_string(ParityKind kind);
std::string_view to_string(RepetitionMode mode);
std::string_view to_string(Sector sector);
ParityKind parse_parity_kind(std::string_view text);
RepetitionMode parse_repetition_mode(std::string_view text);

/// Register positions of the two measured qubits and the readout ancilla.
struct ParityRoles {
  int qubit_a = 0;
  int qubit_b = 1;
  int ancilla = 2;
};

struct ProtocolConfig {
  /// Majority count: Fixed mode runs 2n-1 rounds, EarlyStop runs until one
  /// outcome has been seen n times.
  int n = 1;
  RepetitionMode mode = RepetitionMode::Fixed;
  ParityRoles roles{};

  int max_rounds() const { return 2 * n - 1; }
  /// Throws std::invalid_argument for n < 1, clashing roles, or roles outside
  /// a register of `num_qubits` qubits.
  void validate(int num_qubits) const;
};

struct MeasurementRecord {
  std::vector<int> outcomes;
  int majority = 0;
  Sector sector = Sector::Even;
  int repetitions_used = 0;
  std::vector<PauliEvent> corrections;
};

/// How one ancilla outcome of a single measurement round is interpreted:
/// which parity sector it reports and which Pauli correction (on the measured
/// pair, given as role slots 0 = qubit_a, 1 = qubit_b) turns the collapsed
/// state back into the plain projection onto that sector.
struct OutcomeRule {
  Sector sector = Sector::Even;
  std::vector<std::pair<int, PauliAxis>> correction;
};

using ParityCorrectionTable = std::array<OutcomeRule, 2>;

/// Correction table for `kind`, derived once by brute force: every candidate
/// Pauli string on the measured pair is tried against the noiseless round on
/// random inputs, and the first one that makes the round an exact projective
/// parity measurement wins. Throws std::logic_error if no candidate works.
const ParityCorrectionTable& parity_correction_table(ParityKind kind);

/// Projection of `s` onto a parity sector of (qubit_a, qubit_b).
Statevector project_parity(const Statevector& s, ParityKind kind, Sector sector,
                           const ParityRoles& roles);

/// Physical gate sequence of one round (ancilla in |0> on entry), without
/// measurement. Exposed for the table derivation and for tests.
void apply_parity_round_gates(Statevector& s, ParityKind kind, const ParityRoles& roles,
                              double eps1, double eps2);

/// One noisy parity measurement followed by the outcome-conditioned
/// correction. The ancilla is consumed in |0> and returned in |0>; the
/// returned state is normalized.
std::pair<int, Statevector> measure_parity_once(const Statevector& s, ParityKind kind,
                                                const ProtocolConfig& cfg,
                                                const NoiseParams& params, Rng& rng,
                                                TrajectoryLog& log);

/// Repeated measurement with majority vote, outcomes sampled by the Born rule.
std::pair<MeasurementRecord, Statevector> measure_parity_repeated(const Statevector& s,
                                                                  ParityKind kind,
                                                                  const ProtocolConfig& cfg,
                                                                  const NoiseParams& params,
                                                                  Rng& rng, TrajectoryLog& log);

/// Same as above with an explicit fault source. `outcome_rng` drives only the
/// measurement sampling; `stage` tags the fault sites.
std::pair<MeasurementRecord, Statevector> measure_parity_repeated(
    const Statevector& s, ParityKind kind, const ProtocolConfig& cfg, FaultModel& faults,
    Rng& outcome_rng, int stage, TrajectoryLog* log = nullptr);

/// Visitor for enumerated branches: receives the unnormalized post-protocol
/// state (squared norm = branch probability) and the branch's record. Both
/// references are only valid during the call.
using ParityBranchVisitor = std::function<void(const Statevector&, const MeasurementRecord&)>;

/// Outcome paths lighter than this fraction of the input weight are dropped
/// during enumeration. Round-off leaves amplitudes of order 1e-16 on paths
/// that are exactly forbidden, i.e. weights near 1e-32.
inline constexpr double kNegligibleBranchWeight = 1e-28;

/// Walks every measurement-outcome path of the repeated protocol instead of
/// sampling one. Fault realizations come from `faults` keyed by site, so
/// sibling paths share them when the model memoizes. Paths below
/// kNegligibleBranchWeight are skipped.
void enumerate_parity_branches(const Statevector& s, ParityKind kind, const ProtocolConfig& cfg,
                               FaultModel& faults, int stage, const ParityBranchVisitor& visit,
                               TrajectoryLog* log = nullptr);

/// Fault-site round index used for the basis-change and correction gates of
/// a stage (the MS gates use rounds 0 .. max_rounds-1).
inline constexpr int kStageGateRound = 4000;

}  // namespace refocus

#endif  // REFOCUS_PARITY_HPP_
