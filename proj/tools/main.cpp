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

#include <chrono>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "experiments.hpp"

namespace {

using refocus::cli::CommandResult;

constexpr int kExitChecksFailed = 1;
constexpr int kExitError = 2;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// "dir/table1.csv" + ".sweep" -> "dir/table1.sweep.csv"
std::string artifact_path(const std::string& out, const std::string& suffix) {
  if (suffix.empty()) return out;
  const std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + suffix + p.extension().string())).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

int execute(const std::function<CommandResult()>& run, const std::string& out) {
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const CommandResult result = run();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<std::string> paths;
  for (const auto& artifact : result.artifacts) {
    paths.push_back(artifact_path(out, artifact.suffix));
    write_file(paths.back(), artifact.content);
  }
  const std::string manifest_path = out + ".manifest.json";
  write_file(manifest_path, refocus::cli::build_manifest(result, refocus::cli::kVersion, seconds,
                                                         started, paths));

  std::cout << result.summary;
  for (const auto& check : result.checks) {
    std::cout << (check.passed ? "  [PASS] " : "  [FAIL] ") << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
  }
  for (const auto& p : paths) std::cout << "wrote " << p << "\n";
  std::cout << "wrote " << manifest_path << "\n";
  return result.passed() ? 0 : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refocused parity measurements and measurement-based CNOT experiments"};
  app.set_version_flag("--version", std::string(refocus::cli::kVersion));
  app.require_subcommand(1);

  std::function<CommandResult()> run;
  std::string out;

  refocus::cli::Table1Options table1;
  auto* t1 = app.add_subcommand("table1", "Measurement infidelity for 3 and 5 repetitions");
  t1->add_option("--e", table1.e, "Amplitude-error half-width")->capture_default_str();
  t1->add_option("--trials", table1.trials, "Monte Carlo trajectories")->capture_default_str();
  t1->add_option("--seed", table1.seed, "Master seed")->capture_default_str();
  t1->add_option("--out", out, "Output CSV")->default_val("table1.csv");
  t1->add_option("--input-sweep", table1.input_sweep,
                 "Also estimate this many random inputs with equal even/odd weight")
      ->capture_default_str();
  t1->add_option("--sweep-trials", table1.sweep_trials, "Trajectories per sweep input")
      ->capture_default_str();
  t1->callback([&] { run = [&] { return refocus::cli::run_table1(table1); }; });

  refocus::cli::ThresholdCommandOptions threshold;
  auto* th = app.add_subcommand("threshold", "Largest tolerable gate error vs eps2");
  th->add_option("--T", threshold.target, "Target CNOT infidelity")->capture_default_str();
  th->add_option("--eps2-min", threshold.eps2_min, "Smallest eps2")->capture_default_str();
  th->add_option("--eps2-max", threshold.eps2_max, "Largest eps2")->capture_default_str();
  th->add_option("--points", threshold.points, "Grid points")->capture_default_str();
  th->add_option("--n-max", threshold.n_max, "Largest majority count considered")
      ->capture_default_str();
  th->add_option("--out", out, "Output CSV")->default_val("threshold.csv");
  th->callback([&] { run = [&] { return refocus::cli::run_threshold(threshold); }; });

  refocus::cli::ScalingOptions scaling;
  std::string scaling_kind = "ZZ";
  auto* sc = app.add_subcommand("scaling", "Fit the exponent of infidelity vs e");
  sc->add_option("--n", scaling.n_values, "Majority counts")->delimiter(',')->capture_default_str();
  sc->add_option("--e-values", scaling.e_values, "Error half-widths")
      ->delimiter(',')
      ->capture_default_str();
  sc->add_option("--kind", scaling_kind, "ZZ or XX")->capture_default_str();
  sc->add_option("--trials", scaling.trials, "Trajectories per point")->capture_default_str();
  sc->add_option("--seed", scaling.seed, "Master seed")->capture_default_str();
  sc->add_option("--tolerance", scaling.tolerance, "Allowed relative slope deviation")
      ->capture_default_str();
  sc->add_option("--out", out, "Output JSON")->default_val("scaling.json");
  sc->callback([&] {
    run = [&] {
      scaling.kind = refocus::parse_parity_kind(scaling_kind);
      return refocus::cli::run_scaling(scaling);
    };
  });

  refocus::cli::PropagationOptions propagation;
  auto* pr = app.add_subcommand("propagation", "Check where single-stage errors propagate");
  pr->add_option("--epsilon", propagation.epsilon, "Largest fixed amplitude error")
      ->capture_default_str();
  pr->add_option("--n", propagation.n, "Majority count")->capture_default_str();
  pr->add_option("--states", propagation.states, "Random inputs")->capture_default_str();
  pr->add_option("--seed", propagation.seed, "Seed for inputs and errors")->capture_default_str();
  pr->add_option("--out", out, "Output JSON")->default_val("propagation.json");
  pr->callback([&] { run = [&] { return refocus::cli::run_propagation(propagation); }; });

  refocus::cli::CnotDemoOptions demo;
  std::string state_text = "1,0,0,0";
  std::string mode_text = "fixed";
  auto* cd = app.add_subcommand("cnot-demo", "Per-branch trace of the measurement-based CNOT");
  cd->add_option("--state", state_text, "alpha,beta,gamma,delta on |11>,|00>,|10>,|01>")
      ->capture_default_str();
  cd->add_flag("--noise-off", demo.noise_off, "Disable all noise");
  cd->add_option("--e", demo.e, "Amplitude-error half-width")->capture_default_str();
  cd->add_option("--eps2", demo.eps2, "Single-body fault probability")->capture_default_str();
  cd->add_option("--n", demo.n, "Majority count")->capture_default_str();
  cd->add_option("--mode", mode_text, "fixed or early-stop")->capture_default_str();
  cd->add_option("--seed", demo.seed, "Seed")->capture_default_str();
  cd->add_option("--out", out, "Output JSON")->default_val("cnot_demo.json");
  cd->callback([&] {
    run = [&] {
      demo.state = refocus::cli::parse_state_list(state_text);
      demo.mode = refocus::parse_repetition_mode(mode_text);
      return refocus::cli::run_cnot_demo(demo);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return execute(run, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
