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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits with
// status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "refocus/analytics.hpp"
#include "refocus/cnot.hpp"
#include "refocus/fidelity.hpp"
#include "refocus/rng.hpp"
#include "oracle.hpp"

namespace refocus {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) { return cli::format_double(v); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Statevector table_input() {
  const std::array<Complex, 4> half{0.5, 0.5, 0.5, 0.5};
  return with_ancilla(Statevector::from_amplitudes(half));
}

Outcome table_i() {
  cli::Table1Options o;
  o.e = 0.3;
  o.trials = 1000000;
  o.seed = 1;
  const auto start = std::chrono::steady_clock::now();
  const auto result = cli::run_table1(o);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto rows = parse_csv(result.artifacts.at(0).content);
  if (rows.size() != 3 || rows[0] != std::vector<std::string>{"repetitions", "numeric", "approximated", "std_error"}) {
    return {false, "unexpected CSV layout"};
  }
  const double num3 = std::stod(rows[1][1]);
  const double approx3 = std::stod(rows[1][2]);
  const double num5 = std::stod(rows[2][1]);
  const double approx5 = std::stod(rows[2][2]);
  const bool ok = rows[1][0] == "3" && rows[2][0] == "5" && std::abs(num3 - 0.0058) <= 0.0007 &&
                  std::abs(num5 - 0.00137) <= 0.0003 && std::abs(approx3 - 0.0054) <= 1e-15 &&
                  std::abs(approx5 - 0.00108) <= 1e-15 && seconds <= 60.0;
  return {ok, "3 reps " + fmt(num3) + " +- " + rows[1][3] + " (approx " + fmt(approx3) + "), 5 reps " +
                  fmt(num5) + " +- " + rows[2][3] + " (approx " + fmt(approx5) + "), " +
                  fmt(std::round(seconds * 10) / 10) + " s"};
}

Outcome parity_table() {
  double worst = 0.0;
  double worst_row = 0.0;
  const char* inputs[] = {"000", "010", "100", "110"};
  for (double e1 : {-0.2, 0.05, 0.13}) {
    for (double e2 : {-0.11, 0.0, 0.3}) {
      const oracle::Mat zx = e1 * oracle::pauli_string(3, {{0, PauliAxis::Z}, {2, PauliAxis::X}}) +
                             e2 * oracle::pauli_string(3, {{1, PauliAxis::Z}, {2, PauliAxis::X}});
      const oracle::Mat op = oracle::expm(zx, -1.0) * oracle::cnot(3, 1, 2) * oracle::cnot(3, 0, 2);
      oracle::Mat expected(8, 4);
      oracle::Mat actual(8, 4);
      for (int k = 0; k < 4; ++k) {
        const auto in = basis_state(3, inputs[k]);
        const auto out = faulty_direct_cnot(faulty_direct_cnot(in, 0, 2, e1), 1, 2, e2);
        expected.col(k) = op * oracle::to_eigen(in);
        actual.col(k) = oracle::to_eigen(out);
        // Row form: |ab> (cos t |a^b> + i sin t |not a^b>), t = (-1)^a e1 + (-1)^b e2.
        const int a = k >> 1;
        const int b = k & 1;
        const double t = (a ? -e1 : e1) + (b ? -e2 : e2);
        Statevector row(3);
        const std::size_t base = static_cast<std::size_t>(k) << 1;
        row[base | static_cast<std::size_t>(a ^ b)] = std::cos(t);
        row[base | static_cast<std::size_t>(1 - (a ^ b))] = Complex(0.0, std::sin(t));
        worst_row = std::max(worst_row, 1.0 - std::abs(overlap(row, out)));
      }
      worst = std::max(worst, oracle::distance_up_to_phase(actual, expected));
    }
  }
  return {worst < 1e-12 && worst_row < 1e-12,
          "max distance to matrix oracle " + fmt(worst) + ", row-form defect " + fmt(worst_row)};
}

Outcome decomposition() {
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double eps = -0.5 + k / 19.0;
    const oracle::Mat expected =
        oracle::expm(oracle::pauli_string(2, {{0, PauliAxis::Z}, {1, PauliAxis::X}}), -eps) *
        oracle::cnot(2, 0, 1);
    const oracle::Mat actual = oracle::matrix_of(2, [&](const Statevector& s) { return faulty_direct_cnot(s, 0, 1, eps); });
    worst = std::max(worst, oracle::distance_up_to_phase(actual, expected));
  }
  return {worst < 1e-10, "max distance up to phase " + fmt(worst) + " over 20 grid points"};
}

Outcome ideal_limit() {
  Rng rng(2024);
  IdealFaults ideal;
  double worst = 0.0;
  double weight_defect = 0.0;
  long branches = 0;
  for (int k = 0; k < 100; ++k) {
    const auto s2 = haar_random_state(2, rng);
    const auto target = ideal_cnot(s2, kCnotControl, kCnotTarget);
    ProtocolConfig cfg;
    cfg.n = 1 + k % 3;
    cfg.mode = k % 2 ? RepetitionMode::EarlyStop : RepetitionMode::Fixed;
    double total = 0.0;
    enumerate_cnot_branches(s2, cfg, ideal, [&](const Statevector& psi, const CnotRecord&) {
      ++branches;
      total += psi.norm_squared();
      worst = std::max(worst, 1.0 - std::abs(overlap(target, psi.normalized())));
    });
    weight_defect = std::max(weight_defect, std::abs(total - 1.0));
  }
  return {worst <= 1e-10 && weight_defect <= 1e-12,
          std::to_string(branches) + " branches, min fidelity 1 - " + fmt(worst)};
}

Outcome propagation() {
  const auto r = cli::run_propagation(cli::PropagationOptions{});
  std::string detail;
  for (const auto& c : r.checks) detail += c.name + " (" + c.detail + ") ";
  return {r.passed(), detail};
}

Outcome scaling() {
  const auto r = cli::run_scaling(cli::ScalingOptions{});
  const auto j = cli::Json::parse(r.artifacts.at(0).content);
  std::string detail;
  for (const auto& fit : j["fits"]) {
    detail += "n=" + std::to_string(fit["n"].get<int>()) + " slope " + fmt(fit["slope"].get<double>()) + "; ";
  }
  return {r.passed(), detail};
}

Outcome repetitions() {
  ProtocolConfig cfg;
  cfg.n = 2;
  cfg.mode = RepetitionMode::EarlyStop;
  EstimatorOptions o;
  o.trials = 100000;
  const auto r = estimate_measurement_fidelity(table_input(), ParityKind::ZZ, cfg, NoiseParams{0.3, 0.0, 1}, o);
  return {std::abs(r.mean_repetitions - 2.12) <= 0.02,
          "mean " + fmt(r.mean_repetitions) + " +- " + fmt(r.repetitions_std_error) + " (exact law " +
              fmt(analytics::expected_repetitions_exact(0.3, 2)) + ")"};
}

Outcome state_dependence() {
  const std::array<Complex, 4> amps{0.5, 0.5, Complex(0, 0.5), Complex(0, 0.5)};
  const Statevector s2 = cli::state_from_cnot_amplitudes(amps);
  bool ok = true;
  std::string detail;
  for (int n : {1, 2}) {
    ProtocolConfig cfg;
    cfg.n = n;
    EstimatorOptions o;
    o.trials = n == 1 ? 100000 : 200000;
    const NoiseParams params{0.1, 0.0, 11};
    const auto cnot = estimate_cnot_fidelity(s2, cfg, params, o);
    const auto meas = estimate_measurement_fidelity(table_input(), ParityKind::ZZ, cfg, params, o);
    const double ratio = cnot.infidelity / meas.infidelity;
    ok = ok && std::abs(ratio - 2.0) <= 0.3;
    detail += "n=" + std::to_string(n) + ": cnot " + fmt(cnot.infidelity) + ", measurement " +
              fmt(meas.infidelity) + ", ratio " + fmt(ratio) + "; ";
  }
  return {ok, detail};
}

Outcome threshold() {
  const double target = 1e-4;
  const double endpoint = target / 17.0;
  const std::vector<double> probe{endpoint - 1e-8, endpoint, endpoint + 1e-8};
  const auto p = analytics::threshold_curve(target, probe);
  cli::ThresholdCommandOptions o;
  o.target = target;
  const auto r = cli::run_threshold(o);
  const auto rows = parse_csv(r.artifacts.at(0).content);
  bool monotone = true;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    monotone = monotone && std::stod(rows[i][1]) <= std::stod(rows[i - 1][1]);
  }
  const double at_zero = std::stod(rows.at(1)[1]);
  const double last = std::stod(rows.back()[1]);
  // Shape: near 1/16 without single-body faults, falling to zero at T/17.
  const bool shape = std::abs(at_zero - 0.0625) <= 0.002 && last == 0.0 &&
                     std::stod(rows[rows.size() / 2][1]) > 0.0;
  const bool endpoint_ok = p[0].threshold > 0.0 && p[1].threshold <= 1e-8 && p[2].threshold == 0.0;
  return {monotone && shape && endpoint_ok && r.passed(),
          "threshold(0) " + fmt(at_zero) + ", threshold(T/17 - 1e-8) " + fmt(p[0].threshold) +
              ", threshold(T/17) " + fmt(p[1].threshold) + ", threshold(T/17 + 1e-8) " +
              fmt(p[2].threshold) + (monotone ? ", monotone" : ", NOT monotone")};
}

Outcome determinism() {
  bool ok = true;
  std::vector<std::string> failed;
  auto compare = [&](const char* name, const cli::CommandResult& a, const cli::CommandResult& b) {
    bool same = a.artifacts.size() == b.artifacts.size();
    for (std::size_t i = 0; same && i < a.artifacts.size(); ++i) {
      same = a.artifacts[i].content == b.artifacts[i].content;
    }
    if (!same) failed.push_back(name);
    ok = ok && same;
  };
  cli::Table1Options t;
  t.trials = 20000;
  t.input_sweep = 2;
  t.sweep_trials = 2000;
  t.workers = 1;
  const auto t1 = cli::run_table1(t);
  t.workers = 3;
  compare("table1", t1, cli::run_table1(t));

  cli::ScalingOptions s;
  s.trials = 5000;
  s.workers = 1;
  const auto s1 = cli::run_scaling(s);
  s.workers = 2;
  compare("scaling", s1, cli::run_scaling(s));

  cli::CnotDemoOptions c;
  c.state = {0.5, 0.5, Complex(0, 0.5), Complex(0, 0.5)};
  c.n = 2;
  c.eps2 = 0.01;
  compare("cnot-demo", cli::run_cnot_demo(c), cli::run_cnot_demo(c));
  compare("propagation", cli::run_propagation({}), cli::run_propagation({}));
  compare("threshold", cli::run_threshold({}), cli::run_threshold({}));

  std::string detail = "table1, scaling (workers 1 vs 3/2), cnot-demo, propagation, threshold";
  if (!failed.empty()) {
    detail += "; differing:";
    for (const auto& f : failed) detail += " " + f;
  }
  return {ok, detail};
}

}  // namespace
}  // namespace refocus

int main() {
  using refocus::Outcome;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"table_i_infidelities", refocus::table_i},
      {"parity_table_two_faulty_cnots", refocus::parity_table},
      {"five_gate_decomposition", refocus::decomposition},
      {"noise_off_equals_ideal_cnot", refocus::ideal_limit},
      {"single_stage_error_propagation", refocus::propagation},
      {"scaling_exponent_2n", refocus::scaling},
      {"early_stop_mean_repetitions", refocus::repetitions},
      {"cnot_state_dependence", refocus::state_dependence},
      {"threshold_curve", refocus::threshold},
      {"seeded_determinism", refocus::determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    if (!out.passed) ++failures;
    std::printf("%s %2d %s: %s\n", out.passed ? "PASS" : "FAIL", index, c.name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
