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

#include "refocus/parity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace refocus {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;
constexpr double kDerivationTolerance = 1e-10;

using PauliString = std::vector<std::pair<int, PauliAxis>>;

int role_qubit(const ParityRoles& roles, int slot) {
  return slot == 0 ? roles.qubit_a : roles.qubit_b;
}

void apply_string(Statevector& s, const PauliString& p, const ParityRoles& roles) {
  for (const auto& [slot, axis] : p) s.pauli(role_qubit(roles, slot), axis);
}

std::vector<PauliString> candidate_strings() {
  constexpr PauliAxis axes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
  std::vector<PauliString> out;
  out.push_back({});
  for (int slot = 0; slot < 2; ++slot) {
    for (PauliAxis a : axes) out.push_back({{slot, a}});
  }
  for (PauliAxis a : axes) {
    for (PauliAxis b : axes) out.push_back({{0, a}, {1, b}});
  }
  return out;
}

// `v` equals `reference` up to a unit-modulus phase.
bool equal_up_to_phase(const Statevector& v, const Statevector& reference, double tol) {
  const double nv = v.norm_squared();
  const double nr = reference.norm_squared();
  if (std::abs(nv - nr) > tol) return false;
  return std::abs(std::abs(overlap(reference, v)) - std::sqrt(nv * nr)) <= tol;
}

ParityCorrectionTable derive_table(ParityKind kind) {
  const ParityRoles roles{0, 1, 2};
  Rng rng(0x5eed0001);
  std::vector<Statevector> inputs;
  for (int k = 0; k < 6; ++k) inputs.push_back(tensor(haar_random_state(2, rng), Statevector(1)));

  const auto candidates = candidate_strings();
  ParityCorrectionTable table;
  for (int outcome = 0; outcome < 2; ++outcome) {
    std::vector<Statevector> collapsed;
    for (const auto& in : inputs) {
      Statevector out = in;
      apply_parity_round_gates(out, kind, roles, 0.0, 0.0);
      out.project_z(roles.ancilla, outcome);
      if (outcome == 1) out.pauli(roles.ancilla, PauliAxis::X);
      collapsed.push_back(out);
    }
    bool found = false;
    for (Sector sector : {Sector::Even, Sector::Odd}) {
      for (const auto& candidate : candidates) {
        bool ok = true;
        for (std::size_t k = 0; k < inputs.size() && ok; ++k) {
          Statevector v = collapsed[k];
          apply_string(v, candidate, roles);
          ok = equal_up_to_phase(v, project_parity(inputs[k], kind, sector, roles),
                                 kDerivationTolerance);
        }
        if (ok) {
          table[outcome] = OutcomeRule{sector, candidate};
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      throw std::logic_error("no Pauli correction turns the " + std::string(to_string(kind)) +
                             " round into a projective measurement");
    }
  }
  if (table[0].sector == table[1].sector) {
    throw std::logic_error("both ancilla outcomes report the same parity sector");
  }
  // Corrections are merged and applied once after all rounds, which requires
  // them to commute with the round's MS gates (X-type inside the XX frame).
  const PauliAxis commuting = kind == ParityKind::XX ? PauliAxis::X : PauliAxis::Z;
  for (const auto& rule : table) {
    for (const auto& [slot, axis] : rule.correction) {
      if (axis != commuting) {
        throw std::logic_error("derived correction does not commute with the round gates");
      }
    }
  }
  return table;
}

void basis_change(Statevector& s, ParityKind kind, const ParityRoles& roles, double angle,
                  FaultModel& faults, int stage, int first_gate, TrajectoryLog* log) {
  if (kind == ParityKind::XX) return;
  apply_noisy_single(s, roles.qubit_a, PauliAxis::Y, angle, faults,
                     {stage, kStageGateRound, first_gate}, log);
  apply_noisy_single(s, roles.qubit_b, PauliAxis::Y, angle, faults,
                     {stage, kStageGateRound, first_gate + 1}, log);
}

void entangle(Statevector& s, const ParityRoles& roles, FaultModel& faults, int stage, int round,
              TrajectoryLog* log) {
  apply_noisy_ms(s, roles.qubit_a, roles.ancilla, faults, {stage, round, 0}, log);
  apply_noisy_ms(s, roles.qubit_b, roles.ancilla, faults, {stage, round, 1}, log);
}

bool finished(const ProtocolConfig& cfg, const int counts[2]) {
  if (cfg.mode == RepetitionMode::EarlyStop) return counts[0] == cfg.n || counts[1] == cfg.n;
  return counts[0] + counts[1] == cfg.max_rounds();
}

// Closes a stage: undo the basis change, apply the merged correction and fill
// in the record's summary fields.
void finish_stage(Statevector& s, ParityKind kind, const ProtocolConfig& cfg, FaultModel& faults,
                  int stage, const int counts[2], MeasurementRecord& record, TrajectoryLog* log) {
  const auto& table = parity_correction_table(kind);
  basis_change(s, kind, cfg.roles, kQuarterPi, faults, stage, 2, log);
  record.corrections.clear();
  int gate = 4;
  for (int outcome = 0; outcome < 2; ++outcome) {
    if (counts[outcome] % 2 == 0) continue;
    for (const auto& [slot, axis] : table[outcome].correction) {
      const int qubit = role_qubit(cfg.roles, slot);
      apply_noisy_pauli(s, qubit, axis, faults, {stage, kStageGateRound, gate++}, log);
      record.corrections.push_back({qubit, axis});
    }
  }
  if (cfg.mode == RepetitionMode::EarlyStop) {
    record.majority = counts[1] == cfg.n ? 1 : 0;
  } else {
    record.majority = counts[1] > counts[0] ? 1 : 0;
  }
  record.sector = table[record.majority].sector;
  record.repetitions_used = counts[0] + counts[1];
}

void check_input(const Statevector& s, const ProtocolConfig& cfg) {
  cfg.validate(s.num_qubits());
  Statevector excited = s;
  excited.project_z(cfg.roles.ancilla, 1);
  if (excited.norm_squared() > 1e-12 * s.norm_squared()) {
    throw std::invalid_argument("parity measurement expects the ancilla in |0>");
  }
}

class BranchWalker {
 public:
  BranchWalker(ParityKind kind, const ProtocolConfig& cfg, FaultModel& faults, int stage,
               const ParityBranchVisitor& visit, TrajectoryLog* log, double floor)
      : kind_(kind), cfg_(cfg), faults_(faults), stage_(stage), visit_(visit), log_(log),
        floor_(floor) {
    record_.outcomes.reserve(static_cast<std::size_t>(cfg.max_rounds()));
  }

  void descend(const Statevector& s, int round) {
    if (finished(cfg_, counts_)) {
      Statevector out = s;
      finish_stage(out, kind_, cfg_, faults_, stage_, counts_, record_, log_);
      visit_(out, record_);
      return;
    }
    Statevector entangled = s;
    entangle(entangled, cfg_.roles, faults_, stage_, round, log_);
    for (int outcome = 0; outcome < 2; ++outcome) {
      Statevector branch = entangled;
      branch.project_z(cfg_.roles.ancilla, outcome);
      if (!(branch.norm_squared() > floor_)) continue;
      if (outcome == 1) branch.pauli(cfg_.roles.ancilla, PauliAxis::X);
      record_.outcomes.push_back(outcome);
      ++counts_[outcome];
      descend(branch, round + 1);
      --counts_[outcome];
      record_.outcomes.pop_back();
    }
  }

 private:
  ParityKind kind_;
  const ProtocolConfig& cfg_;
  FaultModel& faults_;
  int stage_;
  const ParityBranchVisitor& visit_;
  TrajectoryLog* log_;
  double floor_;
  MeasurementRecord record_;
  int counts_[2] = {0, 0};
};

}  // namespace

std::string_view to_string(ParityKind kind) { return kind == ParityKind::ZZ ? "ZZ" : "XX"; }

std::string_view to_string(RepetitionMode mode) {
  return mode == RepetitionMode::Fixed ? "fixed" : "early-stop";
}

std::string_view to_string(Sector sector) { return sector == Sector::Even ? "even" : "odd"; }

ParityKind parse_parity_kind(std::string_view text) {
  if (text == "ZZ" || text == "zz") return ParityKind::ZZ;
  if (text == "XX" || text == "xx") return ParityKind::XX;
  throw std::invalid_argument("unknown parity kind '" + std::string(text) + "'");
}

RepetitionMode parse_repetition_mode(std::string_view text) {
  if (text == "fixed") return RepetitionMode::Fixed;
  if (text == "early-stop" || text == "earlystop") return RepetitionMode::EarlyStop;
  throw std::invalid_argument("unknown repetition mode '" + std::string(text) + "'");
}

void ProtocolConfig::validate(int num_qubits) const {
  if (n < 1) throw std::invalid_argument("majority count n must be >= 1");
  for (int q : {roles.qubit_a, roles.qubit_b, roles.ancilla}) {
    if (q < 0 || q >= num_qubits) {
      throw std::invalid_argument("role index " + std::to_string(q) + " outside the register");
    }
  }
  if (roles.qubit_a == roles.qubit_b || roles.qubit_a == roles.ancilla ||
      roles.qubit_b == roles.ancilla) {
    throw std::invalid_argument("parity roles must be pairwise distinct");
  }
}

const ParityCorrectionTable& parity_correction_table(ParityKind kind) {
  static const ParityCorrectionTable zz = derive_table(ParityKind::ZZ);
  static const ParityCorrectionTable xx = derive_table(ParityKind::XX);
  return kind == ParityKind::ZZ ? zz : xx;
}

Statevector project_parity(const Statevector& s, ParityKind kind, Sector sector,
                           const ParityRoles& roles) {
  const PauliAxis axis = kind == ParityKind::ZZ ? PauliAxis::Z : PauliAxis::X;
  Statevector flipped = s;
  flipped.pauli(roles.qubit_a, axis);
  flipped.pauli(roles.qubit_b, axis);
  const double sign = sector == Sector::Even ? 1.0 : -1.0;
  Statevector out = s;
  for (std::size_t i = 0; i < s.dim(); ++i) out[i] = 0.5 * (s[i] + sign * flipped[i]);
  return out;
}

void apply_parity_round_gates(Statevector& s, ParityKind kind, const ParityRoles& roles,
                              double eps1, double eps2) {
  if (kind == ParityKind::ZZ) {
    s.rotate(roles.qubit_a, PauliAxis::Y, -kQuarterPi);
    s.rotate(roles.qubit_b, PauliAxis::Y, -kQuarterPi);
  }
  s.ms(roles.qubit_a, roles.ancilla, eps1);
  s.ms(roles.qubit_b, roles.ancilla, eps2);
  if (kind == ParityKind::ZZ) {
    s.rotate(roles.qubit_a, PauliAxis::Y, kQuarterPi);
    s.rotate(roles.qubit_b, PauliAxis::Y, kQuarterPi);
  }
}

std::pair<MeasurementRecord, Statevector> measure_parity_repeated(
    const Statevector& s, ParityKind kind, const ProtocolConfig& cfg, FaultModel& faults,
    Rng& outcome_rng, int stage, TrajectoryLog* log) {
  check_input(s, cfg);
  MeasurementRecord record;
  int counts[2] = {0, 0};
  Statevector state = s.normalized();
  basis_change(state, kind, cfg.roles, -kQuarterPi, faults, stage, 0, log);
  for (int round = 0; !finished(cfg, counts); ++round) {
    entangle(state, cfg.roles, faults, stage, round, log);
    ZBranches b = branch_z(state, cfg.roles.ancilla);
    const double p0 = b.zero.norm_squared();
    const double p1 = b.one.norm_squared();
    const int outcome = outcome_rng.uniform() * (p0 + p1) < p0 ? 0 : 1;
    state = outcome == 0 ? b.zero : b.one;
    if (outcome == 1) state.pauli(cfg.roles.ancilla, PauliAxis::X);
    state = state.normalized();
    record.outcomes.push_back(outcome);
    ++counts[outcome];
  }
  finish_stage(state, kind, cfg, faults, stage, counts, record, log);
  return {std::move(record), std::move(state)};
}

std::pair<MeasurementRecord, Statevector> measure_parity_repeated(const Statevector& s,
                                                                  ParityKind kind,
                                                                  const ProtocolConfig& cfg,
                                                                  const NoiseParams& params,
                                                                  Rng& rng, TrajectoryLog& log) {
  SampledFaults faults(params, rng);
  return measure_parity_repeated(s, kind, cfg, faults, rng, 0, &log);
}

std::pair<int, Statevector> measure_parity_once(const Statevector& s, ParityKind kind,
                                                const ProtocolConfig& cfg,
                                                const NoiseParams& params, Rng& rng,
                                                TrajectoryLog& log) {
  ProtocolConfig single = cfg;
  single.n = 1;
  auto [record, state] = measure_parity_repeated(s, kind, single, params, rng, log);
  return {record.outcomes.front(), std::move(state)};
}

void enumerate_parity_branches(const Statevector& s, ParityKind kind, const ProtocolConfig& cfg,
                               FaultModel& faults, int stage, const ParityBranchVisitor& visit,
                               TrajectoryLog* log) {
  check_input(s, cfg);
  Statevector state = s;
  basis_change(state, kind, cfg.roles, -kQuarterPi, faults, stage, 0, log);
  BranchWalker walker(kind, cfg, faults, stage, visit, log,
                      kNegligibleBranchWeight * s.norm_squared());
  walker.descend(state, 0);
}

}  // namespace refocus
