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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "losence/channel.hpp"
#include "losence/estimation.hpp"
#include "losence/rng.hpp"
#include "losence/types.hpp"

namespace losence::harness {

/// Estimator variants under comparison. Each one is a pair of per-branch
/// denoising rules (sensed-NLoS rule, sensed-LoS rule):
///   ls            raw LS, no thresholding in either branch
///   prop          CFAR in sensed NLoS, LoS-aided in sensed LoS
///   cfar_cfar     CFAR in both branches
///   none_cfar     raw in sensed NLoS, CFAR in sensed LoS
///   none_losaid   raw in sensed NLoS, LoS-aided in sensed LoS
///   cfar_none     CFAR in sensed NLoS, raw in sensed LoS
enum class Method { ls, prop, cfar_cfar, none_cfar, none_losaid, cfar_none };

inline constexpr std::size_t kNumMethods = 6;

inline constexpr std::array<Method, kNumMethods> kAllMethods = {
    Method::ls,          Method::prop,        Method::cfar_cfar,
    Method::none_cfar,   Method::none_losaid, Method::cfar_none};

/// Display / CSV names, by enum value.
std::string_view method_name(Method m);

/// Inverse of method_name; throws std::invalid_argument on unknown names.
Method parse_method(std::string_view name);

/// Full simulation setup for one run.
struct SimConfig {
  channel::ChannelConfig channel;
  estimation::SensingConfig sensing;
  std::vector<double> snr_grid_db = {0, 5, 10, 15, 20, 25, 30};
  std::size_t trials_per_point = 10000;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::uint64_t master_seed = 1;

  /// Cross-field checks; throws std::invalid_argument naming the field.
  void validate() const;
};

/// Mean result of one (method, sweep value, SNR) cell.
struct SweepRecord {
  Method method;
  double snr_db = 0.0;
  std::string param_tag;  // "base", "r=0.4", "P=9", ...
  double mean_nmse = 0.0;
  std::size_t trials = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::size_t failed_trials = 0;
  std::size_t total_trials = 0;
};

/// Swept parameter: the SNR grid itself, the LoS probability r, or the
/// number of active paths P.
enum class SweepKind { snr, r, p };

std::string_view sweep_kind_name(SweepKind k);

/// Everything one trial produces, for every method at once. All methods
/// see the same bits, channel, and noise, so comparisons are paired.
struct TrialOutcome {
  Scenario true_scenario = Scenario::NLoS;
  estimation::EstimationResult est;
  channel::ChannelRealization channel;
  double noise_var = 0.0;
  double received_power = 0.0;
  std::array<double, kNumMethods> nmse{};  // indexed by Method value
  bool failed = false;
};

/// Frame-level normalized squared error ||est - truth||^2 / ||truth||^2.
/// Throws std::domain_error when truth is all zero.
double nmse(const ComplexVector& est, const ComplexVector& truth);

/// One full frame through the chain: bits -> 4-QAM -> unitary IDFT -> CP ->
/// tap line -> AWGN -> CP removal -> unitary DFT -> sensing-aided
/// estimation, then per-method denoising and NMSE against the true padded
/// CIR. The AWGN level is referenced to the measured mean power of the
/// received frame before noise. Estimation failures mark the trial failed
/// instead of throwing. `forced` pins the scenario (used for calibration);
/// otherwise it is drawn with probability r.
TrialOutcome run_trial_full(const SimConfig& cfg, double snr_db, RandomSource& rng,
                            std::optional<Scenario> forced = std::nullopt);

/// Single-method wrapper around run_trial_full; consumes the same
/// randomness for every method, so results pair across calls made with
/// identical seeds.
double run_trial(const SimConfig& cfg, double snr_db, Method method,
                 RandomSource& rng);

/// Monte Carlo sweep over `values` of the swept parameter (for SweepKind::snr
/// the values are the SNR points themselves; for r and p each value runs the
/// whole SNR grid). Per-trial seeds derive from (master_seed, kind, value,
/// snr, trial), so results are reproducible regardless of scheduling. Trials
/// that fail are excluded from the mean; the sweep aborts if they reach 0.1%
/// of any point.
SweepResult run_sweep(const SimConfig& cfg, SweepKind kind,
                      const std::vector<double>& values);

/// Fraction of trials whose sensed scenario matches the generated one.
double sensing_accuracy(const SimConfig& cfg, double snr_db, std::size_t trials);

}  // namespace losence::harness
