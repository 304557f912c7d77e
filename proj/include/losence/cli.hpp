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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "losence/harness.hpp"

namespace losence::cli {

/// Parses a flat JSON object into a simulation config. Unset keys keep
/// their defaults; an empty file yields the default config. Unknown keys
/// and out-of-range values raise with the offending key named.
harness::SimConfig load_config(const std::string& path);

/// Same parser, applied to an in-memory JSON document.
harness::SimConfig parse_config(const std::string& json_text);

/// 16-hex-digit digest of the canonical config serialization. Two configs
/// digest equal exactly when every simulation-relevant field matches.
std::string config_digest(const harness::SimConfig& cfg);

/// Default sweep values when the caller gives none: the config's SNR grid
/// for snr sweeps, {0.4, 0.7, 1.0} for r, {5, 9, 13} for p.
std::vector<double> default_sweep_values(const harness::SimConfig& cfg,
                                         harness::SweepKind kind);

/// Renders sweep results as CSV: header `method,param_tag,snr_db,mean_nmse,
/// trials`, rows sorted by (method name, param tag, SNR). Deterministic and
/// timestamp-free, so equal results render byte-identical.
std::string sweep_csv(const harness::SweepResult& result);

/// Run manifest written next to each CSV. The timestamp lives here and
/// only here; data artifacts stay byte-reproducible.
std::string manifest_json(const harness::SimConfig& cfg,
                          harness::SweepKind kind,
                          const std::vector<double>& values,
                          const std::vector<std::string>& outputs,
                          const std::string& timestamp);

/// ISO-8601 UTC wall-clock time, e.g. "2026-08-19T12:00:00Z".
std::string iso8601_utc_now();

struct SweepArtifacts {
  std::string csv_path;
  std::string manifest_path;
};

/// Runs a sweep and writes sweep_<kind>.csv plus manifest_<kind>.json into
/// out_dir (created if missing). `values` overrides the defaults.
SweepArtifacts cmd_sweep(const harness::SimConfig& cfg, harness::SweepKind kind,
                         const std::string& out_dir,
                         const std::optional<std::vector<double>>& values);

struct CalibrationResult {
  double zeta = 0.0;
  double accuracy = 0.0;
  bool separable = false;
  std::size_t trials_per_class = 0;
};

/// Searches for the decision threshold on the magnitude-kurtosis statistic
/// that best separates forced-LoS from forced-NLoS trials at the given SNR.
/// `trials` frames are simulated per class; at least 100 are required. When
/// the classes overlap, the returned threshold minimizes the error count
/// and `separable` is false.
CalibrationResult cmd_calibrate_zeta(const harness::SimConfig& cfg,
                                     double snr_db, std::size_t trials);

/// Renders one fully-worked trial as a plain-text report: drawn taps, the
/// sensing statistic and decision, thresholds, retained tap positions, and
/// the raw versus enhanced NMSE. Byte-identical for identical inputs.
std::string cmd_demo(const harness::SimConfig& cfg, double snr_db,
                     std::uint64_t seed);

}  // namespace losence::cli
