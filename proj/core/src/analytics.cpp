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

#include "refocus/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace refocus::analytics {

namespace {

void check_e(double e) {
  if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("e must be finite and >= 0");
}

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("majority count n must be >= 1");
}

// (sin(2e) / 2e)^2, the squared characteristic function of the uniform
// distribution; E[cos(2(x + y))] for x, y uniform on [-e, e].
double mean_cos_double_sum(double e) {
  if (e == 0.0) return 1.0;
  const double u = 2.0 * e;
  // Series below the cancellation regime of sin(u)/u.
  const double sinc = u < 1e-4 ? 1.0 - u * u / 6.0 + u * u * u * u / 120.0 : std::sin(u) / u;
  return sinc * sinc;
}

// binom(2n-1, n) * x^n, switching to log space where the binomial overflows.
double amplitude_term(int n, double x) {
  if (x == 0.0) return 0.0;
  if (n <= 40) return binomial(2 * n - 1, n) * std::pow(x, n);
  const double log_binom = std::lgamma(2.0 * n) - std::lgamma(n + 1.0) - std::lgamma(1.0 * n);
  return std::exp(log_binom + n * std::log(x));
}

double single_body_factor(int n, double flip) { return 8.0 * n * (1.0 + flip) + 9.0; }

}  // namespace

double c_of_e(double e) {
  check_e(e);
  return 0.5 * (1.0 + mean_cos_double_sum(e));
}

double s_of_e(double e) {
  check_e(e);
  if (e < 2e-2) {
    // Taylor series of 1/2 (1 - sinc^2(2e)); the closed form cancels here.
    const double x = e * e;
    return x * (2.0 / 3.0 + x * (-16.0 / 45.0 + x * (32.0 / 315.0 + x * (-256.0 / 14175.0))));
  }
  return 0.5 * (1.0 - mean_cos_double_sum(e));
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return std::round(result);
}

double measurement_infidelity_leading(double e, int n) {
  check_e(e);
  check_n(n);
  return 0.5 * amplitude_term(n, 2.0 * e * e / 3.0);
}

InfidelityBreakdown measurement_infidelity_full(double e, double eps2, int n, ParityKind kind) {
  check_e(e);
  check_n(n);
  if (!(eps2 >= 0.0 && eps2 <= 1.0)) throw std::invalid_argument("eps2 must lie in [0, 1]");
  const double flip = 2.0 * e * e / 3.0;
  const double constant = kind == ParityKind::ZZ ? 5.0 : 1.0;
  InfidelityBreakdown out;
  out.n = n;
  out.amplitude_term = 0.5 * amplitude_term(n, flip);
  out.single_body_term = (4.0 * n * (1.0 + flip) + constant) * eps2;
  out.total = out.amplitude_term + out.single_body_term;
  return out;
}

InfidelityBreakdown cnot_infidelity_bound(double e, double eps2, int n) {
  check_e(e);
  check_n(n);
  if (!(eps2 >= 0.0 && eps2 <= 1.0)) throw std::invalid_argument("eps2 must lie in [0, 1]");
  const double flip = 2.0 * e * e / 3.0;
  InfidelityBreakdown out;
  out.n = n;
  out.amplitude_term = amplitude_term(n, flip);
  out.single_body_term = single_body_factor(n, flip) * eps2;
  out.total = out.amplitude_term + out.single_body_term;
  return out;
}

CnotAmplitudes CnotAmplitudes::from_state(const Statevector& s2) {
  if (s2.num_qubits() != 2) throw std::invalid_argument("expected a two-qubit state");
  return {s2[0b11], s2[0b00], s2[0b10], s2[0b01]};
}

double cnot_infidelity_state(double e, double eps2, int n, const CnotAmplitudes& a) {
  const double norm = std::norm(a.alpha) + std::norm(a.beta) + std::norm(a.gamma) +
                      std::norm(a.delta);
  if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument("amplitudes must be normalized");
  const double z_control =
      std::norm(a.beta) + std::norm(a.delta) - std::norm(a.alpha) - std::norm(a.gamma);
  const double x_target =
      2.0 * (std::conj(a.alpha) * a.gamma + std::conj(a.beta) * a.delta).real();
  const double bracket = 2.0 - z_control * z_control - x_target * x_target;
  const double flip = 2.0 * e * e / 3.0;
  return measurement_infidelity_leading(e, n) * bracket + single_body_factor(n, flip) * eps2;
}

double expected_repetitions(double e, int n) {
  check_e(e);
  check_n(n);
  return n * (1.0 + 2.0 * e * e / 3.0);
}

std::vector<double> stopping_time_distribution(double e, int n) {
  check_n(n);
  const double c = c_of_e(e);
  const double s = s_of_e(e);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    p[k] = binomial(n + k - 1, k) *
           (std::pow(c, n) * std::pow(s, k) + std::pow(s, n) * std::pow(c, k));
  }
  return p;
}

double expected_repetitions_exact(double e, int n) {
  const auto p = stopping_time_distribution(e, n);
  double mean = 0.0;
  for (int k = 0; k < n; ++k) mean += (n + k) * p[k];
  return mean;
}

double wrong_majority_probability(double e, int n) {
  check_n(n);
  const double c = c_of_e(e);
  const double s = s_of_e(e);
  const int rounds = 2 * n - 1;
  double p = 0.0;
  for (int wrong = n; wrong <= rounds; ++wrong) {
    p += binomial(rounds, wrong) * std::pow(s, wrong) * std::pow(c, rounds - wrong);
  }
  return p;
}

double original_cnot_error(double e) {
  check_e(e);
  return e * e / 6.0;
}

double infidelity_vs_eps(int n, double eps, double eps2) {
  check_n(n);
  if (!(eps >= 0.0)) throw std::invalid_argument("gate error must be >= 0");
  return single_body_factor(n, 4.0 * eps) * eps2 + amplitude_term(n, 4.0 * eps);
}

std::vector<ThresholdPoint> threshold_curve(double target, std::span<const double> eps2_grid,
                                            const ThresholdOptions& options) {
  if (!(target > 0.0)) throw std::invalid_argument("threshold target T must be > 0");
  if (options.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");

  auto best = [&](double eps, double eps2) {
    double value = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int n = 1; n <= options.n_max; ++n) {
      // The single-body term grows with n; past the target nothing larger helps.
      if (single_body_factor(n, 4.0 * eps) * eps2 > target && arg != 0) break;
      const double v = infidelity_vs_eps(n, eps, eps2);
      if (v < value) {
        value = v;
        arg = n;
      }
    }
    return std::pair{value, arg};
  };

  std::vector<ThresholdPoint> curve;
  curve.reserve(eps2_grid.size());
  for (double eps2 : eps2_grid) {
    if (!(eps2 >= 0.0 && eps2 <= 1.0)) throw std::invalid_argument("eps2 must lie in [0, 1]");
    ThresholdPoint point{eps2, 0.0, 0};
    if (best(0.0, eps2).first > target) {
      curve.push_back(point);
      continue;
    }
    double lo = 0.0;
    double hi = 0.25;
    while (best(hi, eps2).first <= target) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e6) throw std::domain_error("threshold target is never exceeded");
    }
    while (hi - lo > options.tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (best(mid, eps2).first <= target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    point.threshold = lo;
    point.best_n = best(lo, eps2).second;
    curve.push_back(point);
  }
  return curve;
}

}  // namespace refocus::analytics
