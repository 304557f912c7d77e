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
#include <vector>

#include "losence/rng.hpp"
#include "losence/types.hpp"

namespace losence::channel {

/// Sparse Rician tapped-delay-line parameters for a UAV-to-ground downlink.
struct ChannelConfig {
  std::size_t n = 512;                // subcarriers per OFDM frame
  std::size_t l_cp = 64;              // cyclic prefix length
  std::size_t tap_line_length = 20;   // delay spread in samples
  std::size_t num_paths = 10;         // active taps per realization (P)
  double los_probability = 0.8;       // per-frame LoS probability (r)
  double k_min = 3.0;                 // Rician K factor range for LoS frames
  double k_max = 13.0;
  double g_min = 0.1;                 // large-scale gain range
  double g_max = 1.0;
  // Scattered taps default to per-tap variance 1/P so the scattered power
  // budget stays fixed as num_paths changes; true reads the per-tap
  // variance as 1 instead.
  bool nlos_unit_tap_variance = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ChannelTap {
  std::size_t delay;
  std::complex<double> gain;
};

/// One channel draw: num_paths taps at distinct delays, ascending,
/// always including delay 0.
struct ChannelRealization {
  std::vector<ChannelTap> taps;
  Scenario scenario = Scenario::NLoS;
  double rician_k = 0.0;      // 0 for NLoS frames
  double large_scale_g = 0.0;
};

/// Bernoulli scenario draw: LoS with probability r. Requires r in [0, 1].
Scenario sample_scenario(RandomSource& rng, double r);

/// Draw a tapped-delay-line realization. The LoS component is a random-phase
/// unit ray on tap 0 with power k/(k+1) of g^2; the scattered component is
/// i.i.d. circular Gaussian on the active taps with total power g^2/(k+1).
/// Draw order is fixed: g, k (LoS only), delays, LoS phase (LoS only), then
/// per-tap scattered gains in ascending delay order.
ChannelRealization sample_channel(RandomSource& rng, const ChannelConfig& cfg,
                                  Scenario scenario);

/// Dense impulse response of length n with the taps placed by delay.
ComplexVector to_padded_cir(const ChannelRealization& ch, std::size_t n);

/// Linear convolution of the tap line with a CP-extended frame of length
/// n + l_cp, truncated to the frame length. Every tap delay must be <= l_cp
/// so that prefix removal restores circularity exactly.
ComplexVector apply_channel(const ChannelRealization& ch, const ComplexVector& frame,
                            std::size_t n, std::size_t l_cp);

struct NoisyFrame {
  ComplexVector samples;
  double noise_var = 0.0;  // total complex variance per sample
};

/// Complex AWGN at the requested SNR: noise_var = signal_power / 10^(snr/10),
/// split evenly between the real and imaginary components. A positive
/// infinite snr_db returns the input unchanged with noise_var 0.
NoisyFrame add_awgn(const ComplexVector& x, double snr_db, double signal_power,
                    RandomSource& rng);

}  // namespace losence::channel
