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

#ifndef REFOCUS_TOOLS_EXPERIMENTS_HPP_
#define REFOCUS_TOOLS_EXPERIMENTS_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "refocus/parity.hpp"
#include "refocus/statevector.hpp"

// Experiment drivers behind the `refocus` command line. Each returns its
// data artifacts as strings so they can be compared byte for byte; writing
// files and manifests is left to the caller.
namespace refocus::cli {

using Json = nlohmann::ordered_json;

struct Artifact {
  /// Suffix appended to the --out stem ("" for the main output).
  std::string suffix;
  std::string content;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CommandResult {
  std::string command;
  Json params;
  std::uint64_t seed = 0;
  std::vector<Artifact> artifacts;
  std::vector<Check> checks;
  std::string summary;

  bool passed() const;
};

struct Table1Options {
  double e = 0.3;
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  /// Extra random inputs with equal even/odd weight, estimated at
  /// `sweep_trials` each; 0 disables the sweep artifact.
  int input_sweep = 0;
  std::int64_t sweep_trials = 100000;
  int workers = 0;
};
CommandResult run_table1(const Table1Options& options);

struct ThresholdCommandOptions {
  double target = 1e-4;
  double eps2_min = 0.0;
  double eps2_max = 1e-5;
  int points = 51;
  int n_max = 10000;
};
CommandResult run_threshold(const ThresholdCommandOptions& options);

struct ScalingOptions {
  std::vector<int> n_values{1, 2, 3};
  std::vector<double> e_values{0.05, 0.1, 0.2};
  ParityKind kind = ParityKind::ZZ;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  double tolerance = 0.15;
  int workers = 0;
};
CommandResult run_scaling(const ScalingOptions& options);

struct PropagationOptions {
  double epsilon = 0.05;
  int n = 2;
  int states = 20;
  std::uint64_t seed = 1;
  double leakage_tolerance = 1e-10;
};
CommandResult run_propagation(const PropagationOptions& options);

struct CnotDemoOptions {
  /// (alpha, beta, gamma, delta) on |11>, |00>, |10>, |01>.
  std::array<Complex, 4> state{1.0, 0.0, 0.0, 0.0};
  bool noise_off = false;
  double e = 0.1;
  double eps2 = 0.0;
  int n = 1;
  RepetitionMode mode = RepetitionMode::Fixed;
  std::uint64_t seed = 1;
};
CommandResult run_cnot_demo(const CnotDemoOptions& options);

/// Two-qubit state from (alpha, beta, gamma, delta) on |11>, |00>, |10>, |01>.
Statevector state_from_cnot_amplitudes(const std::array<Complex, 4>& amps);

/// Parses "1,0,0,0" style lists; entries may be complex ("0.5i", "1-2i").
std::array<Complex, 4> parse_state_list(std::string_view text);

/// Shortest round-trip decimal form with '.' separator.
std::string format_double(double value);

/// Hex SHA-1 of "blob <size>\0<content>", as git computes object ids.
std::string git_blob_hash(std::string_view content);

/// RunManifest JSON (trailing newline included).
std::string build_manifest(const CommandResult& result, std::string_view version,
                           double wall_seconds, std::string_view started_utc,
                           const std::vector<std::string>& output_paths);

inline constexpr std::string_view kVersion = REFOCUS_VERSION;

}  // namespace refocus::cli

#endif  // REFOCUS_TOOLS_EXPERIMENTS_HPP_
