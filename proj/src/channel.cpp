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

#include "losence/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace losence::channel {

void ChannelConfig::validate() const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (l_cp == 0 || l_cp >= n)
    throw std::invalid_argument("l_cp must satisfy 0 < l_cp < n");
  if (tap_line_length == 0 || tap_line_length > l_cp)
    throw std::invalid_argument("tap_line_length must satisfy 0 < tap_line_length <= l_cp");
  if (num_paths == 0 || num_paths > tap_line_length)
    throw std::invalid_argument("p must satisfy 1 <= p <= tap_line_length");
  if (!(los_probability >= 0.0 && los_probability <= 1.0))
    throw std::invalid_argument("r outside valid range [0, 1]");
  if (!(k_min >= 0.0) || !(k_min <= k_max))
    throw std::invalid_argument("k_min/k_max must satisfy 0 <= k_min <= k_max");
  if (!(g_min > 0.0) || !(g_min <= g_max))
    throw std::invalid_argument("g_min/g_max must satisfy 0 < g_min <= g_max");
}

Scenario sample_scenario(RandomSource& rng, double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("r outside valid range [0, 1]");
  return rng.uniform01() < r ? Scenario::LoS : Scenario::NLoS;
}

ChannelRealization sample_channel(RandomSource& rng, const ChannelConfig& cfg,
                                  Scenario scenario) {
  cfg.validate();

  ChannelRealization ch;
  ch.scenario = scenario;
  ch.large_scale_g = rng.uniform(cfg.g_min, cfg.g_max);
  ch.rician_k = scenario == Scenario::LoS ? rng.uniform(cfg.k_min, cfg.k_max) : 0.0;

  // Tap 0 is always active; the remaining num_paths - 1 delays are a
  // partial Fisher-Yates draw without replacement from {1 .. L_tap - 1}.
  std::vector<std::size_t> pool(cfg.tap_line_length - 1);
  std::iota(pool.begin(), pool.end(), std::size_t{1});
  std::vector<std::size_t> delays{0};
  delays.reserve(cfg.num_paths);
  for (std::size_t i = 0; i + 1 < cfg.num_paths; ++i) {
    const std::size_t j = i + rng.uniform_int(pool.size() - i);
    std::swap(pool[i], pool[j]);
    delays.push_back(pool[i]);
  }
  std::sort(delays.begin(), delays.end());

  const double k = ch.rician_k;
  const double g = ch.large_scale_g;
  const double los_scale = g * std::sqrt(k / (k + 1.0));
  const double scatter_scale = g * std::sqrt(1.0 / (k + 1.0));
  const double tap_var =
      cfg.nlos_unit_tap_variance ? 1.0 : 1.0 / static_cast<double>(cfg.num_paths);
  const std::complex<double> los_ray =
      scenario == Scenario::LoS
          ? std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi))
          : std::complex<double>{0.0, 0.0};

  ch.taps.reserve(delays.size());
  for (const std::size_t d : delays) {
    std::complex<double> gain = scatter_scale * rng.complex_gaussian(tap_var);
    if (d == 0) gain += los_scale * los_ray;
    ch.taps.push_back({d, gain});
  }
  return ch;
}

ComplexVector to_padded_cir(const ChannelRealization& ch, std::size_t n) {
  ComplexVector cir(n, {0.0, 0.0});
  for (const auto& tap : ch.taps) {
    if (tap.delay >= n)
      throw std::invalid_argument("to_padded_cir: tap delay outside [0, n)");
    cir[tap.delay] = tap.gain;
  }
  return cir;
}

ComplexVector apply_channel(const ChannelRealization& ch, const ComplexVector& frame,
                            std::size_t n, std::size_t l_cp) {
  if (frame.size() != n + l_cp)
    throw std::invalid_argument("apply_channel: frame length is not n + l_cp");
  for (const auto& tap : ch.taps)
    if (tap.delay > l_cp)
      throw std::invalid_argument("apply_channel: tap delay exceeds l_cp");

  ComplexVector y(frame.size());
  for (std::size_t m = 0; m < y.size(); ++m) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [d, gain] : ch.taps)
      if (d <= m) acc += gain * frame[m - d];
    y[m] = acc;
  }
  return y;
}

NoisyFrame add_awgn(const ComplexVector& x, double snr_db, double signal_power,
                    RandomSource& rng) {
  if (!(signal_power > 0.0))
    throw std::invalid_argument("add_awgn: signal_power must be positive");
  if (std::isinf(snr_db) && snr_db > 0.0) return {x, 0.0};
  const double sigma2 = signal_power / std::pow(10.0, snr_db / 10.0);
  NoisyFrame out{x, sigma2};
  for (auto& v : out.samples) v += rng.complex_gaussian(sigma2);
  return out;
}

}  // namespace losence::channel
