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

#include <cstddef>
#include <optional>

#include "losence/types.hpp"

namespace losence::estimation {

/// Parameters of the sensing-aided estimator.
struct SensingConfig {
  double zeta = 50.0;          // kurtosis decision threshold
  double p_f = 1e-3;           // false-alarm probability of the CFAR rule
  std::size_t ref_window = 4;  // reference-window parameter L; L^2 - 1 cells
  std::size_t l_cp = 64;       // cyclic prefix length (noise-only tail start)
  std::size_t n = 512;         // subcarriers / CIR length

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Everything the estimator derives from one frame.
struct EstimationResult {
  ComplexVector h_ls;                  // time-domain least-squares CIR
  double kurtosis = 0.0;               // 0 when degenerate
  Scenario sensed = Scenario::NLoS;
  bool degenerate = false;             // constant-magnitude CIR, forced NLoS
  double sigma2_hat = 0.0;             // per-component noise variance estimate
  double cfar_threshold = 0.0;
  std::optional<double> los_threshold; // present iff sensed LoS
  ComplexVector h_enhanced;            // thresholded CIR
};

/// Per-subcarrier least-squares frequency response: y_fd[i] / x_fd[i].
/// Throws std::invalid_argument on length mismatch or a zero pilot entry.
ComplexVector ls_estimate(const ComplexVector& y_fd, const ComplexVector& x_fd);

/// Time-domain CIR from a frequency response: (1/N) sum_k H[k] e^{+j2pi kn/N},
/// i.e. the unitary inverse transform divided by sqrt(N). With that scaling a
/// noiseless estimate reproduces the physical padded CIR, and frequency-flat
/// noise of per-bin variance s^2 lands as per-tap variance s^2/N.
ComplexVector cir_from_fd(const ComplexVector& h_fd);

/// Sample kurtosis of the tap magnitudes: E[(|h| - mu)^4] / sigma^4 with
/// biased (1/N) moments. Throws std::invalid_argument for fewer than two
/// taps and std::domain_error when the magnitudes are constant.
double kurtosis(const ComplexVector& cir);

/// LoS decision: kurtosis strictly above zeta.
Scenario sense_los(double kurt, double zeta);

/// Per-component noise variance from the noise-only CIR tail:
/// (1/(N - l_cp)) * sum_{n >= l_cp} |h[n]|^2 / 2. Requires l_cp < N.
double estimate_noise_var(const ComplexVector& cir, std::size_t l_cp);

/// CFAR magnitude threshold sqrt(-2 sigma2 ln p_f): a noise-only tap with
/// per-component variance sigma2 exceeds it with probability exactly p_f.
double cfar_threshold(double sigma2, double p_f);

/// Scaling factor of the LoS-aided threshold: p_f^(-1/(L^2 - 1)) - 1.
/// Requires p_f in (0, 1) and L >= 2.
double threshold_factor(double p_f, std::size_t ref_window);

/// Fraction of total CIR magnitude that lies in the noise-only tail:
/// sum_{n >= l_cp} |h[n]| / sum_n |h[n]|. Throws on an all-zero CIR.
double delta_noise(const ComplexVector& cir, std::size_t l_cp);

/// Dominance of the strongest early tap. With w = l_cp / 2:
/// max_{n < w} |h[n]| / sum_{n < w} |h[n]| + delta_noise^2.
/// Throws std::domain_error when the early window is all zero.
double delta_los(const ComplexVector& cir, std::size_t l_cp);

/// LoS-aided threshold: epsilon * t_cfar * (1 + d_los).
double los_aided_threshold(double t_cfar, double epsilon, double d_los);

/// Zero every tap with |h[n]| < threshold; taps exactly at the threshold
/// are kept.
ComplexVector denoise(const ComplexVector& cir, double threshold);

/// Full sensing-aided estimate of one frame: LS, time-domain CIR, kurtosis
/// sensing, then CFAR (sensed NLoS) or LoS-aided (sensed LoS) denoising.
/// A degenerate constant-magnitude CIR is classified NLoS and flagged
/// instead of aborting; other sub-operation failures propagate.
EstimationResult los_ence(const ComplexVector& x_fd, const ComplexVector& y_fd,
                          const SensingConfig& cfg);

}  // namespace losence::estimation
