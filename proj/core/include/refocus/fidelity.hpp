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

#ifndef REFOCUS_FIDELITY_HPP_
#define REFOCUS_FIDELITY_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "refocus/noise.hpp"
#include "refocus/parity.hpp"
#include "refocus/statevector.hpp"

namespace refocus {

enum class EstimationMethod { MonteCarlo, Quadrature, Formula };
/// Enumerate: every outcome path of a trajectory is weighted by its Born
/// probability. Sample: one path per trajectory drawn by the Born rule.
enum class OutcomeHandling { Enumerate, Sample };

std::string_view to_string(EstimationMethod method);
std::string_view to_string(OutcomeHandling outcomes);

struct EstimatorOptions {
  EstimationMethod method = EstimationMethod::MonteCarlo;
  OutcomeHandling outcomes = OutcomeHandling::Enumerate;
  /// Noise trajectories (Monte Carlo only).
  std::int64_t trials = 100000;
  /// Gauss-Legendre order per triangle side (Quadrature only).
  int quadrature_order = 6;
  /// 0 = resolve from REFOCUS_THREADS / hardware.
  int workers = 0;
  /// Trajectories per reduction block; part of the numerical result.
  std::int64_t block_size = 2048;
};

struct FidelityReport {
  EstimationMethod method = EstimationMethod::MonteCarlo;
  double fidelity = 1.0;
  double infidelity = 0.0;
  /// Standard error of `infidelity`; 0 for deterministic methods.
  double std_error = 0.0;
  std::int64_t trajectories = 0;
  /// Mean number of parity rounds (both stages for the CNOT).
  double mean_repetitions = 0.0;
  double repetitions_std_error = 0.0;
  /// Largest |sum of branch probabilities - 1| over trajectories.
  double max_weight_defect = 0.0;
};

/// Fidelity of a branch with unnormalized state `psi` against the normalized
/// target: |<target|psi>| / |psi|. The estimator averages
/// |psi|^2 (1 - fidelity) over branches.
double branch_infidelity(const Statevector& psi, const Statevector* target);

/// Appends a readout ancilla in |0> as the last qubit.
Statevector with_ancilla(const Statevector& s);

/// Infidelity of the repeated parity measurement. `input` is the full
/// register (ancilla at cfg.roles.ancilla in |0>). The reference for a run
/// that reports sector s is the normalized ideal projection of the input onto
/// s, so a wrong majority counts as a complete failure.
FidelityReport estimate_measurement_fidelity(const Statevector& input, ParityKind kind,
                                             const ProtocolConfig& cfg, const NoiseParams& params,
                                             const EstimatorOptions& options = {});

/// Infidelity of the measurement-based CNOT on a two-qubit input against the
/// ideal CNOT output.
FidelityReport estimate_cnot_fidelity(const Statevector& s2, const ProtocolConfig& cfg,
                                      const NoiseParams& params,
                                      const EstimatorOptions& options = {});

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (log x, log y). Needs >= 2 positive points.
PowerLawFit fit_log_log(std::span<const double> x, std::span<const double> y);

struct ScalingPoint {
  double e = 0.0;
  FidelityReport report;
};

struct ScalingStudy {
  std::vector<ScalingPoint> points;
  PowerLawFit fit;
};

/// Estimates the measurement infidelity at every e and fits its exponent.
/// Throws for fewer than three points or eps2 != 0 (the exponent is only
/// defined for pure amplitude noise).
ScalingStudy fit_scaling_exponent(const Statevector& input, ParityKind kind,
                                  const ProtocolConfig& cfg, std::span<const double> e_values,
                                  double eps2, std::uint64_t seed,
                                  const EstimatorOptions& options = {});

}  // namespace refocus

#endif  // REFOCUS_FIDELITY_HPP_
