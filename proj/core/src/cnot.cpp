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

#include "refocus/cnot.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace refocus {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;
constexpr double kTolerance = 1e-10;

using PauliString = std::vector<PauliEvent>;

std::vector<PauliString> candidates_on(const std::vector<int>& qubits) {
  constexpr PauliAxis axes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
  std::vector<PauliString> out;
  out.push_back({});
  for (int q : qubits) {
    for (PauliAxis a : axes) out.push_back({{q, a}});
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      for (PauliAxis a : axes) {
        for (PauliAxis b : axes) out.push_back({{qubits[i], a}, {qubits[j], b}});
      }
    }
  }
  return out;
}

void apply_string(Statevector& s, const PauliString& p) {
  for (const auto& ev : p) s.pauli(ev.qubit, ev.axis);
}

bool same_ray(const Statevector& a, const Statevector& b) {
  const double na = a.norm_squared();
  const double nb = b.norm_squared();
  if (na == 0.0 || nb == 0.0) return false;
  return std::abs(std::abs(overlap(a, b)) - std::sqrt(na * nb)) <= kTolerance * std::sqrt(na * nb);
}

// First candidate P with P * actual[k] on the same ray as wanted[k] for all k.
PauliString find_correction(const std::vector<Statevector>& actual,
                            const std::vector<Statevector>& wanted,
                            const std::vector<PauliString>& candidates, const char* what) {
  for (const auto& candidate : candidates) {
    bool ok = true;
    for (std::size_t k = 0; k < actual.size() && ok; ++k) {
      Statevector v = actual[k];
      apply_string(v, candidate);
      ok = same_ray(v, wanted[k]);
    }
    if (ok) return candidate;
  }
  throw std::logic_error(std::string("no Pauli correction found for ") + what);
}

Statevector plus_state() {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex amps[2] = {h, h};
  return Statevector::from_amplitudes(amps);
}

Statevector embed(const Statevector& s2) {
  return tensor(tensor(s2, plus_state()), Statevector(1));
}

// Two-qubit output after the CNOT ancilla was read out as `m`.
Statevector output_of(const Statevector& reg, int m) {
  return extract_branch(extract_branch(reg, kReadoutAncilla, 0), kCnotAncilla, m);
}

struct DerivationInputs {
  std::vector<Statevector> inputs;     // two-qubit
  std::vector<Statevector> registers;  // embedded
  std::vector<Statevector> targets;    // ideal CNOT outputs
};

DerivationInputs derivation_inputs() {
  DerivationInputs d;
  Rng rng(0x5eed0002);
  for (int k = 0; k < 6; ++k) {
    Statevector s(2);
    for (std::size_t i = 0; i < s.dim(); ++i) s[i] = Complex(rng.symmetric(1.0), rng.symmetric(1.0));
    s = s.normalized();
    d.inputs.push_back(s);
    d.registers.push_back(embed(s));
    d.targets.push_back(ideal_cnot(s, 0, 1));
  }
  return d;
}

CnotCorrectionTable derive_cnot_table() {
  const auto d = derivation_inputs();
  const ParityRoles zz = cnot_zz_roles();
  const ParityRoles xx = cnot_xx_roles();
  CnotCorrectionTable table;

  std::vector<Statevector> odd, even;
  for (const auto& reg : d.registers) {
    odd.push_back(project_parity(reg, ParityKind::ZZ, Sector::Odd, zz));
    even.push_back(project_parity(reg, ParityKind::ZZ, Sector::Even, zz));
  }
  table.zz_odd = find_correction(odd, even, candidates_on({kCnotAncilla, kCnotControl, kCnotTarget}),
                                 "the odd ZZ outcome");

  std::vector<Statevector> xx_odd, xx_even;
  for (const auto& s : even) {
    xx_odd.push_back(project_parity(s, ParityKind::XX, Sector::Odd, xx));
    xx_even.push_back(project_parity(s, ParityKind::XX, Sector::Even, xx));
  }
  table.xx_odd = find_correction(xx_odd, xx_even,
                                 candidates_on({kCnotAncilla, kCnotControl, kCnotTarget}),
                                 "the odd XX outcome");

  for (int m = 0; m < 2; ++m) {
    std::vector<Statevector> outputs;
    for (const auto& s : xx_even) outputs.push_back(output_of(s, m));
    table.readout[m] = find_correction(outputs, d.targets,
                                       candidates_on({kCnotControl, kCnotTarget}),
                                       "the ancilla readout");
  }
  return table;
}

}  // namespace

ParityRoles cnot_zz_roles() { return {kCnotControl, kCnotAncilla, kReadoutAncilla}; }
ParityRoles cnot_xx_roles() { return {kCnotTarget, kCnotAncilla, kReadoutAncilla}; }

const CnotCorrectionTable& cnot_correction_table() {
  static const CnotCorrectionTable table = derive_cnot_table();
  return table;
}

DeferredCnotTable derive_deferred_cnot_corrections() {
  const auto d = derivation_inputs();
  const auto candidates = candidates_on({kCnotControl, kCnotTarget});
  DeferredCnotTable table;
  for (Sector zs : {Sector::Even, Sector::Odd}) {
    for (Sector xs : {Sector::Even, Sector::Odd}) {
      for (int m = 0; m < 2; ++m) {
        std::vector<Statevector> outputs;
        for (const auto& reg : d.registers) {
          const Statevector after_zz = project_parity(reg, ParityKind::ZZ, zs, cnot_zz_roles());
          const Statevector after_xx =
              project_parity(after_zz, ParityKind::XX, xs, cnot_xx_roles());
          outputs.push_back(output_of(after_xx, m));
        }
        table[static_cast<int>(zs)][static_cast<int>(xs)][m] =
            find_correction(outputs, d.targets, candidates, "a deferred outcome combination");
      }
    }
  }
  return table;
}

std::pair<Statevector, CnotRecord> run_measurement_cnot(const Statevector& s2,
                                                        const ProtocolConfig& cfg,
                                                        const NoiseParams& params, Rng& rng) {
  SampledFaults faults(params, rng);
  return run_measurement_cnot(s2, cfg, faults, rng);
}

std::pair<Statevector, CnotRecord> run_measurement_cnot(const Statevector& s2,
                                                        const ProtocolConfig& cfg,
                                                        FaultModel& faults, Rng& outcome_rng,
                                                        TrajectoryLog* log) {
  if (s2.num_qubits() != 2) throw std::invalid_argument("the CNOT acts on a two-qubit state");
  if (std::abs(s2.norm_squared() - 1.0) > 1e-10) {
    throw std::invalid_argument("CNOT input must be normalized");
  }
  const auto& table = cnot_correction_table();
  Rng& rng = outcome_rng;
  CnotRecord record;

  ProtocolConfig zz_cfg = cfg;
  zz_cfg.roles = cnot_zz_roles();
  ProtocolConfig xx_cfg = cfg;
  xx_cfg.roles = cnot_xx_roles();

  Statevector reg = embed(s2);
  auto zz = measure_parity_repeated(reg, ParityKind::ZZ, zz_cfg, faults, rng, kZZStage, log);
  record.zz_record = std::move(zz.first);
  reg = std::move(zz.second);
  int gate = 0;
  if (record.zz_record.sector == Sector::Odd) {
    for (const auto& ev : table.zz_odd) {
      apply_noisy_pauli(reg, ev.qubit, ev.axis, faults, {kCorrectionStage, 0, gate++}, log);
      record.final_corrections.push_back(ev);
    }
  }

  auto xx = measure_parity_repeated(reg, ParityKind::XX, xx_cfg, faults, rng, kXXStage, log);
  record.xx_record = std::move(xx.first);
  reg = std::move(xx.second);
  gate = 4;
  if (record.xx_record.sector == Sector::Odd) {
    for (const auto& ev : table.xx_odd) {
      apply_noisy_pauli(reg, ev.qubit, ev.axis, faults, {kCorrectionStage, 0, gate++}, log);
      record.final_corrections.push_back(ev);
    }
  }

  ZSample readout = sample_measure_z(reg, kCnotAncilla, rng);
  record.ancilla_outcome = readout.outcome;
  reg = readout.collapsed;
  gate = 8;
  for (const auto& ev : table.readout[readout.outcome]) {
    apply_noisy_pauli(reg, ev.qubit, ev.axis, faults, {kCorrectionStage, 0, gate++}, log);
    record.final_corrections.push_back(ev);
  }
  return {output_of(reg, readout.outcome).normalized(), std::move(record)};
}

void enumerate_cnot_branches(const Statevector& s2, const ProtocolConfig& cfg, FaultModel& faults,
                             const CnotBranchVisitor& visit, TrajectoryLog* log) {
  if (s2.num_qubits() != 2) throw std::invalid_argument("the CNOT acts on a two-qubit state");
  const auto& table = cnot_correction_table();
  ProtocolConfig zz_cfg = cfg;
  zz_cfg.roles = cnot_zz_roles();
  ProtocolConfig xx_cfg = cfg;
  xx_cfg.roles = cnot_xx_roles();

  CnotRecord record;
  const Statevector reg = embed(s2);
  const double floor = kNegligibleBranchWeight * reg.norm_squared();
  enumerate_parity_branches(
      reg, ParityKind::ZZ, zz_cfg, faults, kZZStage,
      [&](const Statevector& after_zz, const MeasurementRecord& zz_record) {
        Statevector corrected = after_zz;
        if (zz_record.sector == Sector::Odd) {
          int gate = 0;
          for (const auto& ev : table.zz_odd) {
            apply_noisy_pauli(corrected, ev.qubit, ev.axis, faults,
                              {kCorrectionStage, 0, gate++}, log);
          }
        }
        enumerate_parity_branches(
            corrected, ParityKind::XX, xx_cfg, faults, kXXStage,
            [&](const Statevector& after_xx, const MeasurementRecord& xx_record) {
              Statevector state = after_xx;
              int gate = 4;
              if (xx_record.sector == Sector::Odd) {
                for (const auto& ev : table.xx_odd) {
                  apply_noisy_pauli(state, ev.qubit, ev.axis, faults,
                                    {kCorrectionStage, 0, gate++}, log);
                }
              }
              for (int m = 0; m < 2; ++m) {
                Statevector branch = state;
                branch.project_z(kCnotAncilla, m);
                if (!(branch.norm_squared() > floor)) continue;
                int readout_gate = 8;
                for (const auto& ev : table.readout[m]) {
                  apply_noisy_pauli(branch, ev.qubit, ev.axis, faults,
                                    {kCorrectionStage, 0, readout_gate++}, log);
                }
                record.zz_record = zz_record;
                record.xx_record = xx_record;
                record.ancilla_outcome = m;
                record.final_corrections.clear();
                if (zz_record.sector == Sector::Odd) {
                  record.final_corrections.insert(record.final_corrections.end(),
                                                  table.zz_odd.begin(), table.zz_odd.end());
                }
                if (xx_record.sector == Sector::Odd) {
                  record.final_corrections.insert(record.final_corrections.end(),
                                                  table.xx_odd.begin(), table.xx_odd.end());
                }
                record.final_corrections.insert(record.final_corrections.end(),
                                                table.readout[m].begin(), table.readout[m].end());
                visit(output_of(branch, m), record);
              }
            },
            log);
      },
      log);
}

Statevector ideal_cnot(Statevector s, int control, int target) {
  const int nq = s.num_qubits();
  if (control < 0 || control >= nq || target < 0 || target >= nq) {
    throw std::out_of_range("CNOT qubit out of range");
  }
  if (control == target) throw std::invalid_argument("CNOT needs distinct control and target");
  const std::size_t cm = std::size_t{1} << (nq - 1 - control);
  const std::size_t tm = std::size_t{1} << (nq - 1 - target);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if ((i & cm) && !(i & tm)) std::swap(s[i], s[i | tm]);
  }
  return s;
}

Statevector faulty_direct_cnot(Statevector s, int control, int target, double epsilon) {
  if (control == target) throw std::invalid_argument("CNOT needs distinct control and target");
  s.rotate(control, PauliAxis::Y, -kQuarterPi);
  s.ms(control, target, epsilon);
  s.rotate(control, PauliAxis::Y, kQuarterPi);
  s.rotate(target, PauliAxis::X, kQuarterPi);
  s.rotate(control, PauliAxis::Z, kQuarterPi);
  return s;
}

}  // namespace refocus
