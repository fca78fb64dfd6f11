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

#ifndef REFOCUS_ANALYTICS_HPP_
#define REFOCUS_ANALYTICS_HPP_

#include <span>
#include <vector>

#include "refocus/parity.hpp"
#include "refocus/statevector.hpp"

// Closed-form infidelity model of the refocused measurement and CNOT.
//
// Notation: e is the half-width of the uniform amplitude error, eps2 the
// single-body fault probability, n the majority count (2n-1 rounds at most).
// All functions are pure.
namespace refocus::analytics {

/// Average of cos^2(x + y) over x, y uniform on [-e, e]; 1 at e = 0.
double c_of_e(double e);
/// Average of sin^2(x + y) over the same square; ~ 2e^2/3 for small e.
double s_of_e(double e);

/// binom(n, k) as a double; exact for the small arguments used here.
double binomial(int n, int k);

/// 1/2 * binom(2n-1, n) * (2e^2/3)^n.
double measurement_infidelity_leading(double e, int n);

struct InfidelityBreakdown {
  double amplitude_term = 0.0;
  double single_body_term = 0.0;
  double total = 0.0;
  int n = 1;
};

/// [4n(1 + 2e^2/3) + c] eps2 + 1/2 binom(2n-1, n) (2e^2/3)^n with c = 5 for
/// ZZ (four basis-change rotations plus one correction) and c = 1 for XX.
InfidelityBreakdown measurement_infidelity_full(double e, double eps2, int n, ParityKind kind);

/// binom(2n-1, n) (2e^2/3)^n + [8n(1 + 2e^2/3) + 9] eps2. Attained by inputs
/// whose ideal CNOT output has <Z_control> = <X_target> = 0.
InfidelityBreakdown cnot_infidelity_bound(double e, double eps2, int n);

/// Input amplitudes in the order |11>, |00>, |10>, |01>.
struct CnotAmplitudes {
  Complex alpha;
  Complex beta;
  Complex gamma;
  Complex delta;

  static CnotAmplitudes from_state(const Statevector& s2);
};

/// Leading-order CNOT infidelity of a specific input:
///   eps_meas * (2 - <Z_c>^2 - <X_t>^2) + [8n(1 + 2e^2/3) + 9] eps2
/// where eps_meas is the leading measurement infidelity and the expectation
/// values are taken in the ideal output; <Z_c> = |b|^2+|d|^2-|a|^2-|g|^2 and
/// <X_t> = 2 Re(conj(a) g + conj(b) d). Throws for unnormalized input.
double cnot_infidelity_state(double e, double eps2, int n, const CnotAmplitudes& amps);

/// n (1 + 2e^2/3): leading-order mean number of rounds in early-stop mode.
double expected_repetitions(double e, int n);

/// Exact early-stop stopping-time law with per-round flip probability S(e):
/// entry k (0 <= k < n) is the probability of stopping after n + k rounds,
/// binom(n+k-1, k) (C^n S^k + S^n C^k).
std::vector<double> stopping_time_distribution(double e, int n);

/// Mean of stopping_time_distribution.
double expected_repetitions_exact(double e, int n);

/// Probability that the majority of 2n-1 rounds reports the wrong sector for
/// an input with definite parity.
double wrong_majority_probability(double e, int n);

/// Infidelity of the bare faulty gate, e^2/6.
double original_cnot_error(double e);

/// CNOT infidelity in terms of the original gate error eps (4 eps = 2e^2/3):
/// [8n(1 + 4 eps) + 9] eps2 + binom(2n-1, n) (4 eps)^n.
double infidelity_vs_eps(int n, double eps, double eps2);

struct ThresholdPoint {
  double eps2 = 0.0;
  /// Largest original gate error whose refocused CNOT meets the target; 0
  /// when even a perfect gate misses it.
  double threshold = 0.0;
  /// Majority count achieving the minimum at `threshold`; 0 when the entry
  /// is empty.
  int best_n = 0;
};

struct ThresholdOptions {
  /// Large enough that the eps2 = 0 value sits within 0.1% of the n -> infinity
  /// limit 1/16.
  int n_max = 10000;
  double tolerance = 1e-8;
};

/// For each eps2, bisects for the largest eps with
/// min_{1 <= n <= n_max} infidelity_vs_eps(n, eps, eps2) <= target.
std::vector<ThresholdPoint> threshold_curve(double target, std::span<const double> eps2_grid,
                                            const ThresholdOptions& options = {});

}  // namespace refocus::analytics

#endif  // REFOCUS_ANALYTICS_HPP_
