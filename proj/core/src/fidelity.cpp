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

#include "refocus/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "refocus/analytics.hpp"
#include "refocus/cnot.hpp"
#include "refocus/parallel.hpp"
#include "refocus/quadrature.hpp"

namespace refocus {

std::string_view to_string(EstimationMethod method) {
  switch (method) {
    case EstimationMethod::MonteCarlo: return "monte-carlo";
    case EstimationMethod::Quadrature: return "quadrature";
    case EstimationMethod::Formula: return "formula";
  }
  return "?";
}

std::string_view to_string(OutcomeHandling outcomes) {
  return outcomes == OutcomeHandling::Enumerate ? "enumerate" : "sample";
}

double branch_infidelity(const Statevector& psi, const Statevector* target) {
  const double w = psi.norm_squared();
  if (w == 0.0) return 0.0;
  if (target == nullptr) return w;
  const Complex a = overlap(*target, psi);
  // w (1 - f) = (w - |a|^2) / (1 + f), with w - |a|^2 = |psi - a t|^2 to avoid
  // cancellation when the branch is nearly perfect.
  double residual = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) residual += std::norm(psi[i] - a * (*target)[i]);
  const double f = std::min(1.0, std::abs(a) / std::sqrt(w));
  return residual / (1.0 + f);
}

Statevector with_ancilla(const Statevector& s) { return tensor(s, basis_state(1, "0")); }

namespace {

constexpr double kWeightTolerance = 1e-10;
constexpr int kMaxQuadraturePairs = 3;

struct TrialResult {
  double infidelity = 0.0;
  double weight = 0.0;
  double repetitions = 0.0;
};

using Protocol = std::function<TrialResult(FaultModel& faults, Rng& outcome_rng)>;

enum Channel { kInfidelity, kInfidelitySq, kReps, kRepsSq, kWeight, kChannels };

class DefectTracker {
 public:
  void observe(double weight) {
    const double defect = std::abs(weight - 1.0);
    if (!(defect <= kWeightTolerance)) {
      throw std::logic_error("branch probabilities of a trajectory do not sum to 1");
    }
    std::lock_guard lock(mutex_);
    max_ = std::max(max_, defect);
  }
  double max() const { return max_; }

 private:
  std::mutex mutex_;
  double max_ = 0.0;
};

double standard_error(double sum, double sum_sq, std::int64_t count) {
  if (count < 2) return 0.0;
  const double mean = sum / count;
  const double var = std::max(0.0, (sum_sq / count - mean * mean) * count / (count - 1.0));
  return std::sqrt(var / count);
}

FidelityReport run_monte_carlo(const Protocol& protocol, const NoiseParams& params,
                               const EstimatorOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  DefectTracker defects;
  const auto sums = run_blocks(
      options.trials, kChannels, options.block_size, resolve_worker_count(options.workers),
      [&](std::int64_t begin, std::int64_t end, std::span<NeumaierSum> acc) {
        // One stream per block: blocks are fixed, so the draws seen by each
        // trajectory do not depend on the worker count.
        Rng rng = Rng::for_stream(params.seed, static_cast<std::uint64_t>(begin));
        for (std::int64_t i = begin; i < end; ++i) {
          SampledFaults faults(params, rng, /*memoize=*/true);
          const TrialResult r = protocol(faults, rng);
          defects.observe(r.weight);
          acc[kInfidelity].add(r.infidelity);
          acc[kInfidelitySq].add(r.infidelity * r.infidelity);
          acc[kReps].add(r.repetitions);
          acc[kRepsSq].add(r.repetitions * r.repetitions);
          acc[kWeight].add(r.weight);
        }
      });
  FidelityReport report;
  report.method = EstimationMethod::MonteCarlo;
  report.trajectories = options.trials;
  report.infidelity = sums[kInfidelity] / options.trials;
  report.fidelity = 1.0 - report.infidelity;
  report.std_error = standard_error(sums[kInfidelity], sums[kInfidelitySq], options.trials);
  report.mean_repetitions = sums[kReps] / options.trials;
  report.repetitions_std_error = standard_error(sums[kReps], sums[kRepsSq], options.trials);
  report.max_weight_defect = defects.max();
  return report;
}

// Tensor product of pair rules over every (stage, round) MS pair; the
// integrand sees a FixedFaults table indexed like the protocol's fault sites.
FidelityReport run_quadrature(const Protocol& protocol, const NoiseParams& params, int stages,
                              int rounds_per_stage, const EstimatorOptions& options) {
  if (params.eps2 != 0.0) {
    throw std::invalid_argument("quadrature supports amplitude noise only (eps2 = 0)");
  }
  const int pairs = stages * rounds_per_stage;
  if (pairs > kMaxQuadraturePairs) {
    throw std::invalid_argument("quadrature supports at most 6 error dimensions");
  }
  const auto rule = uniform_pair_rule(params.e, options.quadrature_order);
  const auto p = static_cast<std::int64_t>(rule.size());
  std::int64_t total = 1;
  for (int k = 0; k < pairs; ++k) total *= p;

  DefectTracker defects;
  const auto sums = run_blocks(
      total, kChannels, options.block_size, resolve_worker_count(options.workers),
      [&](std::int64_t begin, std::int64_t end, std::span<NeumaierSum> acc) {
        std::vector<double> table(2 * static_cast<std::size_t>(pairs));
        Rng unused(0);
        for (std::int64_t flat = begin; flat < end; ++flat) {
          double weight = 1.0;
          std::int64_t rest = flat;
          for (int k = 0; k < pairs; ++k) {
            const PairNode& node = rule[rest % p];
            rest /= p;
            table[2 * k] = node.eps1;
            table[2 * k + 1] = node.eps2;
            weight *= node.weight;
          }
          FixedFaults faults(table, rounds_per_stage);
          const TrialResult r = protocol(faults, unused);
          defects.observe(r.weight);
          acc[kInfidelity].add(weight * r.infidelity);
          acc[kReps].add(weight * r.repetitions);
          acc[kWeight].add(weight);
        }
      });
  FidelityReport report;
  report.method = EstimationMethod::Quadrature;
  report.trajectories = total;
  report.infidelity = sums[kInfidelity];
  report.fidelity = 1.0 - report.infidelity;
  report.mean_repetitions = sums[kReps];
  report.max_weight_defect = defects.max();
  return report;
}

double formula_repetitions(const ProtocolConfig& cfg, double e) {
  return cfg.mode == RepetitionMode::Fixed ? cfg.max_rounds()
                                           : analytics::expected_repetitions_exact(e, cfg.n);
}

Statevector normalized_input(const Statevector& s) {
  const double norm = s.norm_squared();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("input state is zero");
  return s.normalized();
}

}  // namespace

FidelityReport estimate_measurement_fidelity(const Statevector& input, ParityKind kind,
                                             const ProtocolConfig& cfg, const NoiseParams& params,
                                             const EstimatorOptions& options) {
  params.validate();
  cfg.validate(input.num_qubits());
  const Statevector state = normalized_input(input);

  if (options.method == EstimationMethod::Formula) {
    FidelityReport report;
    report.method = EstimationMethod::Formula;
    report.infidelity = analytics::measurement_infidelity_full(params.e, params.eps2, cfg.n, kind).total;
    report.fidelity = 1.0 - report.infidelity;
    report.mean_repetitions = formula_repetitions(cfg, params.e);
    return report;
  }

  std::array<std::optional<Statevector>, 2> targets;
  for (const Sector sector : {Sector::Even, Sector::Odd}) {
    const Statevector projected = project_parity(state, kind, sector, cfg.roles);
    if (projected.norm_squared() > 1e-24) targets[static_cast<int>(sector)] = projected.normalized();
  }
  auto target_of = [&](Sector sector) -> const Statevector* {
    const auto& t = targets[static_cast<int>(sector)];
    return t ? &*t : nullptr;
  };

  Protocol protocol = [&](FaultModel& faults, Rng& rng) {
    TrialResult r;
    if (options.outcomes == OutcomeHandling::Enumerate) {
      enumerate_parity_branches(state, kind, cfg, faults, 0,
                                [&](const Statevector& psi, const MeasurementRecord& rec) {
                                  const double w = psi.norm_squared();
                                  r.weight += w;
                                  r.infidelity += branch_infidelity(psi, target_of(rec.sector));
                                  r.repetitions += w * rec.repetitions_used;
                                });
    } else {
      const auto [rec, out] = measure_parity_repeated(state, kind, cfg, faults, rng, 0);
      r.weight = 1.0;
      r.infidelity = branch_infidelity(out, target_of(rec.sector));
      r.repetitions = rec.repetitions_used;
    }
    return r;
  };

  if (options.method == EstimationMethod::Quadrature) {
    return run_quadrature(protocol, params, 1, cfg.max_rounds(), options);
  }
  return run_monte_carlo(protocol, params, options);
}

FidelityReport estimate_cnot_fidelity(const Statevector& s2, const ProtocolConfig& cfg,
                                      const NoiseParams& params, const EstimatorOptions& options) {
  params.validate();
  if (s2.num_qubits() != 2) throw std::invalid_argument("the CNOT acts on a two-qubit state");
  if (cfg.n < 1) throw std::invalid_argument("majority count n must be >= 1");
  const Statevector state = normalized_input(s2);

  if (options.method == EstimationMethod::Formula) {
    FidelityReport report;
    report.method = EstimationMethod::Formula;
    report.infidelity = analytics::cnot_infidelity_state(
        params.e, params.eps2, cfg.n, analytics::CnotAmplitudes::from_state(state));
    report.fidelity = 1.0 - report.infidelity;
    report.mean_repetitions = 2.0 * formula_repetitions(cfg, params.e);
    return report;
  }

  const Statevector target = ideal_cnot(state, kCnotControl, kCnotTarget);
  Protocol protocol = [&](FaultModel& faults, Rng& rng) {
    TrialResult r;
    if (options.outcomes == OutcomeHandling::Enumerate) {
      enumerate_cnot_branches(state, cfg, faults, [&](const Statevector& psi, const CnotRecord& rec) {
        const double w = psi.norm_squared();
        r.weight += w;
        r.infidelity += branch_infidelity(psi, &target);
        r.repetitions += w * (rec.zz_record.repetitions_used + rec.xx_record.repetitions_used);
      });
    } else {
      const auto [out, rec] = run_measurement_cnot(state, cfg, faults, rng);
      r.weight = 1.0;
      r.infidelity = branch_infidelity(out, &target);
      r.repetitions = rec.zz_record.repetitions_used + rec.xx_record.repetitions_used;
    }
    return r;
  };

  if (options.method == EstimationMethod::Quadrature) {
    return run_quadrature(protocol, params, 2, cfg.max_rounds(), options);
  }
  return run_monte_carlo(protocol, params, options);
}

PowerLawFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < 2) throw std::invalid_argument("need at least two points to fit");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double cov = sxy - sx * sy / n;
  const double var_x = sxx - sx * sx / n;
  const double var_y = syy - sy * sy / n;
  if (!(var_x > 0.0)) throw std::invalid_argument("x values must not all coincide");
  PowerLawFit fit;
  fit.slope = cov / var_x;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = var_y > 0.0 ? cov * cov / (var_x * var_y) : 1.0;
  return fit;
}

ScalingStudy fit_scaling_exponent(const Statevector& input, ParityKind kind,
                                  const ProtocolConfig& cfg, std::span<const double> e_values,
                                  double eps2, std::uint64_t seed,
                                  const EstimatorOptions& options) {
  if (e_values.size() < 3) throw std::invalid_argument("scaling fit needs at least three e values");
  if (eps2 != 0.0) throw std::invalid_argument("scaling fit requires eps2 = 0");
  ScalingStudy study;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const double e : e_values) {
    const NoiseParams params{e, 0.0, seed};
    ScalingPoint point{e, estimate_measurement_fidelity(input, kind, cfg, params, options)};
    xs.push_back(e);
    ys.push_back(point.report.infidelity);
    study.points.push_back(point);
  }
  study.fit = fit_log_log(xs, ys);
  return study;
}

}  // namespace refocus
