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

#ifndef REFOCUS_CNOT_HPP_
#define REFOCUS_CNOT_HPP_

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "refocus/noise.hpp"
#include "refocus/parity.hpp"
#include "refocus/statevector.hpp"

namespace refocus {

// Register layout of the measurement-based CNOT. The two-qubit input occupies
// positions 0 (control) and 1 (target); position 2 is the CNOT ancilla that
// starts in |+>, position 3 reads out both parity measurements.
inline constexpr int kCnotControl = 0;
inline constexpr int kCnotTarget = 1;
inline constexpr int kCnotAncilla = 2;
inline constexpr int kReadoutAncilla = 3;

// Fault-site stages.
inline constexpr int kZZStage = 0;
inline constexpr int kXXStage = 1;
inline constexpr int kCorrectionStage = 2;

/// Roles of the ZZ (control, CNOT ancilla) and XX (target, CNOT ancilla)
/// measurements inside the four-qubit register.
ParityRoles cnot_zz_roles();
ParityRoles cnot_xx_roles();

struct CnotRecord {
  MeasurementRecord zz_record;
  MeasurementRecord xx_record;
  int ancilla_outcome = 0;
  /// Stage-level corrections in application order (register positions).
  std::vector<PauliEvent> final_corrections;
};

/// Stage corrections of the measurement-based CNOT, all derived by noiseless
/// brute force over Pauli strings:
///  - after the ZZ stage reports the odd sector,
///  - after the XX stage reports the odd sector,
///  - after reading out the CNOT ancilla, per outcome.
/// Qubits are register positions.
struct CnotCorrectionTable {
  std::vector<PauliEvent> zz_odd;
  std::vector<PauliEvent> xx_odd;
  std::array<std::vector<PauliEvent>, 2> readout;
};

const CnotCorrectionTable& cnot_correction_table();

/// Alternative bookkeeping: no stage corrections at all, one Pauli on
/// (control, target) chosen from the three reported results. Indexed by
/// [zz sector][xx sector][ancilla outcome].
using DeferredCnotTable = std::array<std::array<std::array<std::vector<PauliEvent>, 2>, 2>, 2>;
DeferredCnotTable derive_deferred_cnot_corrections();

/// Measurement-based CNOT with control = qubit 0 and target = qubit 1 of the
/// two-qubit input. `cfg.roles` is ignored; the layout above is used.
std::pair<Statevector, CnotRecord> run_measurement_cnot(const Statevector& s2,
                                                        const ProtocolConfig& cfg,
                                                        const NoiseParams& params, Rng& rng);

/// Same with an explicit fault source; `outcome_rng` drives the Born-rule
/// sampling only.
std::pair<Statevector, CnotRecord> run_measurement_cnot(const Statevector& s2,
                                                        const ProtocolConfig& cfg,
                                                        FaultModel& faults, Rng& outcome_rng,
                                                        TrajectoryLog* log = nullptr);

using CnotBranchVisitor = std::function<void(const Statevector&, const CnotRecord&)>;

/// Every outcome path of the protocol. The visitor receives the unnormalized
/// two-qubit output; squared norms over all paths sum to the input norm.
void enumerate_cnot_branches(const Statevector& s2, const ProtocolConfig& cfg, FaultModel& faults,
                             const CnotBranchVisitor& visit, TrajectoryLog* log = nullptr);

/// Ideal CNOT on (control, target).
Statevector ideal_cnot(Statevector s, int control, int target);

/// U_Z(control) U_X(target) U_Y(control) U_MS U_Y(control)^dagger with
/// U_a = exp(-i pi/4 sigma_a) and amplitude error `epsilon` in the MS gate.
Statevector faulty_direct_cnot(Statevector s, int control, int target, double epsilon);

}  // namespace refocus

#endif  // REFOCUS_CNOT_HPP_
