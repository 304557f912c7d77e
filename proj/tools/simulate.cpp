// SPDX-License-Identifier: Apache-2.0
//
// losence: link-level simulation of LoS-sensing-aided channel estimation
// for OFDM downlinks over sparse Rician multipath channels.
// Copyright (C) 2026 the losence authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "losence/cli.hpp"
#include "losence/harness.hpp"

namespace {

losence::harness::SweepKind parse_kind(const std::string& s) {
  if (s == "snr") return losence::harness::SweepKind::snr;
  if (s == "r") return losence::harness::SweepKind::r;
  if (s == "p") return losence::harness::SweepKind::p;
  throw std::invalid_argument("unknown sweep kind: " + s);
}

std::string resolve_out_dir(const std::string& cli_value) {
  if (!cli_value.empty()) return cli_value;
  if (const char* env = std::getenv("LOSENCE_OUT_DIR");
      env != nullptr && env[0] != '\0') {
    return env;
  }
  return "out";
}

losence::harness::SimConfig load_or_default(const std::string& path) {
  if (path.empty()) {
    losence::harness::SimConfig cfg;
    cfg.validate();
    return cfg;
  }
  return losence::cli::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "link-level simulator for LoS-sensing-aided OFDM channel estimation"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand(
      "sweep", "run a Monte Carlo sweep and write CSV plus run manifest");
  std::string sweep_kind;
  std::string sweep_config;
  std::string sweep_out;
  std::uint64_t sweep_seed = 0;
  std::vector<double> sweep_values;
  sweep->add_option("--kind", sweep_kind, "swept parameter")
      ->required()
      ->check(CLI::IsMember({"snr", "r", "p"}));
  sweep->add_option("--config", sweep_config, "JSON config file")->required();
  sweep->add_option("--out", sweep_out,
                    "output directory (default: $LOSENCE_OUT_DIR, else ./out)");
  auto* sweep_seed_opt =
      sweep->add_option("--seed", sweep_seed, "master seed override");
  sweep->add_option("--values", sweep_values,
                    "override the swept values (space separated)");

  auto* cal = app.add_subcommand(
      "calibrate-zeta",
      "search for the kurtosis threshold separating LoS from NLoS frames");
  std::string cal_config;
  double cal_snr = 0.0;
  std::size_t cal_trials = 0;
  std::uint64_t cal_seed = 0;
  cal->add_option("--snr", cal_snr, "SNR in dB")->required();
  cal->add_option("--trials", cal_trials, "frames to simulate per class")
      ->required();
  cal->add_option("--config", cal_config, "JSON config file");
  auto* cal_seed_opt =
      cal->add_option("--seed", cal_seed, "master seed override");

  auto* demo = app.add_subcommand(
      "demo", "print a one-frame walkthrough of the estimation chain");
  std::string demo_config;
  double demo_snr = 0.0;
  std::uint64_t demo_seed = 1;
  demo->add_option("--snr", demo_snr, "SNR in dB")->required();
  demo->add_option("--seed", demo_seed, "seed for the demo frame")->required();
  demo->add_option("--config", demo_config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sweep) {
      losence::harness::SimConfig cfg = losence::cli::load_config(sweep_config);
      if (sweep_seed_opt->count() > 0) {
        cfg.master_seed = sweep_seed;
      }
      const std::optional<std::vector<double>> values =
          sweep_values.empty()
              ? std::nullopt
              : std::optional<std::vector<double>>(sweep_values);
      const losence::cli::SweepArtifacts artifacts = losence::cli::cmd_sweep(
          cfg, parse_kind(sweep_kind), resolve_out_dir(sweep_out), values);
      std::printf("wrote %s\n", artifacts.csv_path.c_str());
      std::printf("wrote %s\n", artifacts.manifest_path.c_str());
    } else if (*cal) {
      losence::harness::SimConfig cfg = load_or_default(cal_config);
      if (cal_seed_opt->count() > 0) {
        cfg.master_seed = cal_seed;
      }
      const losence::cli::CalibrationResult res =
          losence::cli::cmd_calibrate_zeta(cfg, cal_snr, cal_trials);
      std::printf("zeta=%.6g\naccuracy=%.4f\nseparable=%s\n"
                  "trials_per_class=%zu\n",
                  res.zeta, res.accuracy, res.separable ? "yes" : "no",
                  res.trials_per_class);
    } else if (*demo) {
      const losence::harness::SimConfig cfg = load_or_default(demo_config);
      const std::string report =
          losence::cli::cmd_demo(cfg, demo_snr, demo_seed);
      std::fputs(report.c_str(), stdout);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
