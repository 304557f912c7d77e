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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "losence/channel.hpp"
#include "losence/core_dsp.hpp"
#include "losence/estimation.hpp"
#include "losence/rng.hpp"
#include "oracles.hpp"

using losence::BitBlock;
using losence::ComplexVector;
using losence::RandomSource;
using losence::Scenario;
namespace channel = losence::channel;
namespace dsp = losence::dsp;
namespace est = losence::estimation;

namespace {

struct NoiselessFrame {
  ComplexVector pilot_fd;
  ComplexVector rx_fd;
  ComplexVector truth;
  channel::ChannelRealization ch;
};

// One clean frame through modulation, prefix transmission, and the channel.
NoiselessFrame make_noiseless_frame(RandomSource& rng, Scenario sc) {
  const channel::ChannelConfig cfg;
  NoiselessFrame f;
  f.ch = channel::sample_channel(rng, cfg, sc);

  BitBlock bits(2 * cfg.n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
  f.pilot_fd = dsp::qam4_modulate(bits);

  const ComplexVector tx =
      dsp::add_cyclic_prefix(dsp::idft(f.pilot_fd), cfg.l_cp);
  f.rx_fd = dsp::dft(dsp::remove_cyclic_prefix(
      channel::apply_channel(f.ch, tx, cfg.n, cfg.l_cp), cfg.n, cfg.l_cp));
  f.truth = channel::to_padded_cir(f.ch, cfg.n);
  return f;
}

}  // namespace

TEST_CASE("sensing config validation names the offending field") {
  est::SensingConfig cfg;
  cfg.zeta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = {};
  cfg.p_f = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = {};
  cfg.ref_window = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = {};
  cfg.l_cp = 512;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("ls_estimate divides received by transmitted per subcarrier") {
  RandomSource rng(41);
  ComplexVector x(8);
  for (auto& z : x) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

  const ComplexVector ones = est::ls_estimate(x, x);
  for (const auto& z : ones) CHECK(std::abs(z - std::complex<double>{1, 0}) < 1e-14);

  ComplexVector y(8);
  const std::complex<double> c{0, 2};
  for (std::size_t i = 0; i < 8; ++i) y[i] = c * x[i];
  const ComplexVector h = est::ls_estimate(y, x);
  for (const auto& z : h) CHECK(std::abs(z - c) < 1e-14);
}

TEST_CASE("ls_estimate validates input") {
  CHECK_THROWS_AS(est::ls_estimate(ComplexVector(3, {1, 0}),
                                   ComplexVector(4, {1, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(est::ls_estimate({{1, 0}}, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("ls_estimate recovers the unnormalized channel response") {
  RandomSource rng(42);
  const NoiselessFrame f = make_noiseless_frame(rng, Scenario::LoS);
  const ComplexVector h_fd = est::ls_estimate(f.rx_fd, f.pilot_fd);
  const ComplexVector want = dsp::dft(f.truth);
  const double root_n = std::sqrt(512.0);
  for (std::size_t k = 0; k < 512; ++k) {
    CHECK(std::abs(h_fd[k] - root_n * want[k]) < 1e-10);
  }
}

TEST_CASE("cir_from_fd maps a flat response to a leading unit tap") {
  const ComplexVector cir = est::cir_from_fd(ComplexVector(16, {1, 0}));
  CHECK(std::abs(cir[0] - std::complex<double>{1, 0}) < 1e-12);
  for (std::size_t i = 1; i < 16; ++i) CHECK(std::abs(cir[i]) < 1e-12);
}

TEST_CASE("cir_from_fd spreads FD noise variance over the taps") {
  RandomSource rng(43);
  const std::size_t n = 512;
  const double fd_var = 0.04;
  std::vector<double> powers;
  powers.reserve(n * 500);
  for (int frame = 0; frame < 500; ++frame) {
    ComplexVector noise(n);
    for (auto& z : noise) z = rng.complex_gaussian(fd_var);
    for (const auto& z : est::cir_from_fd(noise)) powers.push_back(std::norm(z));
  }
  CHECK(oracle::mean(powers) ==
        doctest::Approx(fd_var / static_cast<double>(n)).epsilon(0.05));
}

TEST_CASE("end-to-end noiseless estimate equals the true padded CIR") {
  RandomSource rng(44);
  for (int i = 0; i < 20; ++i) {
    const NoiselessFrame f = make_noiseless_frame(
        rng, i % 2 == 0 ? Scenario::LoS : Scenario::NLoS);
    const ComplexVector h =
        est::cir_from_fd(est::ls_estimate(f.rx_fd, f.pilot_fd));
    CHECK(oracle::max_abs_diff(h, f.truth) < 1e-10);
  }
}

TEST_CASE("kurtosis of a one-hot magnitude vector matches the closed form") {
  ComplexVector cir(512, {0, 0});
  cir[37] = {1, 0};
  const double p = 1.0 / 512.0;
  const double q = 1.0 - p;
  const double want = (1.0 - 3.0 * p * q) / (p * q);  // about 510.0
  CHECK(est::kurtosis(cir) == doctest::Approx(want).epsilon(1e-9));
  CHECK(est::kurtosis(cir) == doctest::Approx(510.0).epsilon(1e-3));
}

TEST_CASE("kurtosis of Rayleigh magnitudes approaches the distribution value") {
  RandomSource rng(45);
  ComplexVector v(1000000);
  for (auto& z : v) z = rng.complex_gaussian(1.0);
  CHECK(est::kurtosis(v) == doctest::Approx(3.245).epsilon(0.0062));
}

TEST_CASE("kurtosis is invariant under positive scaling") {
  RandomSource rng(46);
  ComplexVector v(256);
  for (auto& z : v) z = rng.complex_gaussian(1.0);
  const double base = est::kurtosis(v);
  for (auto& z : v) z *= 7.25;
  CHECK(est::kurtosis(v) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("kurtosis rejects degenerate input") {
  CHECK_THROWS_AS(est::kurtosis(ComplexVector(4, {1, 0})), std::domain_error);
  CHECK_THROWS_AS(est::kurtosis({{1, 0}}), std::invalid_argument);
  // Equal magnitudes with different phases are still degenerate.
  CHECK_THROWS_AS(est::kurtosis({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}),
                  std::domain_error);
}

TEST_CASE("sense_los applies a strict threshold") {
  CHECK(est::sense_los(510.0, 50.0) == Scenario::LoS);
  CHECK(est::sense_los(3.2, 50.0) == Scenario::NLoS);
  CHECK(est::sense_los(50.0, 50.0) == Scenario::NLoS);
}

TEST_CASE("estimate_noise_var averages the tail beyond the prefix") {
  ComplexVector cir(512, {0, 0});
  for (std::size_t i = 0; i < 64; ++i) cir[i] = {3, 0};
  CHECK(est::estimate_noise_var(cir, 64) == 0.0);

  for (std::size_t i = 64; i < 512; ++i) cir[i] = {1, 0};
  CHECK(est::estimate_noise_var(cir, 64) == 0.5);  // 448 unit powers over 2*448

  CHECK_THROWS_AS(est::estimate_noise_var(ComplexVector(4, {1, 0}), 4),
                  std::invalid_argument);
}

TEST_CASE("estimate_noise_var is consistent on Gaussian tails") {
  RandomSource rng(47);
  double acc = 0.0;
  const int frames = 2000;
  for (int f = 0; f < frames; ++f) {
    ComplexVector cir(512, {0, 0});
    for (std::size_t i = 64; i < 512; ++i) cir[i] = rng.complex_gaussian(0.02);
    acc += est::estimate_noise_var(cir, 64);
  }
  CHECK(acc / frames == doctest::Approx(0.01).epsilon(0.01));
}

TEST_CASE("cfar_threshold evaluates the false-alarm formula") {
  CHECK(est::cfar_threshold(1.0, 1e-3) == doctest::Approx(3.7169).epsilon(1e-4));
  CHECK(est::cfar_threshold(0.0, 1e-3) == 0.0);
  CHECK_THROWS_AS(est::cfar_threshold(-1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(est::cfar_threshold(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(est::cfar_threshold(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("cfar_threshold hits the configured exceedance rate") {
  RandomSource rng(48);
  const double sigma2 = 0.005;  // per real component
  const double t = est::cfar_threshold(sigma2, 1e-3);
  const std::size_t n = 1000000;
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(rng.complex_gaussian(2.0 * sigma2)) > t) ++exceed;
  }
  const double rate = static_cast<double>(exceed) / n;
  CHECK(rate > 1e-3 / 3.0);
  CHECK(rate < 3e-3);
}

TEST_CASE("threshold_factor evaluates the reference-window formula") {
  CHECK(est::threshold_factor(1e-3, 4) == doctest::Approx(0.5849).epsilon(2e-4));
  CHECK(est::threshold_factor(1e-2, 2) == doctest::Approx(3.6416).epsilon(1e-4));
  CHECK(est::threshold_factor(1e-3, 100) < 0.001);  // widens toward zero
  CHECK_THROWS_AS(est::threshold_factor(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(est::threshold_factor(1e-3, 1), std::invalid_argument);
}

TEST_CASE("delta_noise is the tail share of total magnitude") {
  ComplexVector cir(512, {0, 0});
  cir[3] = {2, 0};
  CHECK(est::delta_noise(cir, 64) == 0.0);

  ComplexVector tail_only(512, {0, 0});
  tail_only[100] = {0, 5};
  CHECK(est::delta_noise(tail_only, 64) == 1.0);

  CHECK(est::delta_noise(ComplexVector(512, {1, 0}), 64) == 0.875);

  CHECK_THROWS_AS(est::delta_noise(ComplexVector(512, {0, 0}), 64),
                  std::domain_error);
}

TEST_CASE("delta_los relates the window peak to the window sum") {
  ComplexVector lone(512, {0, 0});
  lone[0] = {1, 0};
  CHECK(est::delta_los(lone, 64) == 1.0);

  ComplexVector pair(512, {0, 0});
  pair[0] = {0.5, 0};
  pair[7] = {0, 0.5};
  CHECK(est::delta_los(pair, 64) == 0.5);

  ComplexVector spread(512, {0, 0});
  spread[0] = {0.9, 0};
  for (std::size_t i = 1; i <= 9; ++i) spread[i] = {0.1, 0};
  CHECK(est::delta_los(spread, 64) == doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(est::delta_los(ComplexVector(512, {0, 0}), 64),
                  std::domain_error);
}

TEST_CASE("delta_los adds the squared tail share") {
  ComplexVector cir(512, {0, 0});
  cir[0] = {1, 0};
  cir[100] = {1, 0};  // tail magnitude equals window magnitude
  // peak/head = 1, tail share = 1/2, squared = 1/4.
  CHECK(est::delta_los(cir, 64) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("los_aided_threshold scales the CFAR threshold") {
  CHECK(est::los_aided_threshold(3.7169, 0.6, 1.0) ==
        doctest::Approx(4.460).epsilon(1e-3));
  CHECK(est::los_aided_threshold(2.0, 0.7, 0.0) == doctest::Approx(1.4));
  CHECK(est::los_aided_threshold(2.0, 0.0, 5.0) == 0.0);
  CHECK_THROWS_AS(est::los_aided_threshold(-1.0, 0.6, 0.0),
                  std::invalid_argument);
}

TEST_CASE("los-aided exceeds plain CFAR whenever the path factor is large") {
  RandomSource rng(49);
  for (int i = 0; i < 1000; ++i) {
    const double eps = rng.uniform(0.1, 2.0);
    const double d = rng.uniform(0.0, 3.0);
    const double t = rng.uniform(0.0, 5.0);
    if (d >= 1.0 / eps - 1.0) {
      CHECK(est::los_aided_threshold(t, eps, d) >= t * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("denoise zeroes magnitudes below the threshold") {
  const ComplexVector cir = {{0.5, 0}, {0.1, 0}, {0.9, 0}};
  CHECK(est::denoise(cir, 0.4) == ComplexVector{{0.5, 0}, {0, 0}, {0.9, 0}});
  CHECK(est::denoise(cir, 0.0) == cir);
  CHECK(est::denoise(cir, 1.0) == ComplexVector(3, {0, 0}));
  CHECK(est::denoise({{0.5, 0}}, 0.5) == ComplexVector{{0.5, 0}});  // keeps ties
  CHECK_THROWS_AS(est::denoise(cir, -0.1), std::invalid_argument);
}

TEST_CASE("denoise only ever zeroes, never modifies") {
  RandomSource rng(50);
  ComplexVector cir(128);
  for (auto& z : cir) z = rng.complex_gaussian(1.0);
  const ComplexVector out = est::denoise(cir, 0.8);
  for (std::size_t i = 0; i < cir.size(); ++i) {
    CHECK((out[i] == cir[i] || out[i] == std::complex<double>{0, 0}));
  }
}

TEST_CASE("noiseless LoS frames sense LoS and keep every true tap") {
  RandomSource rng(51);
  const est::SensingConfig cfg;
  for (int i = 0; i < 10; ++i) {
    const NoiselessFrame f = make_noiseless_frame(rng, Scenario::LoS);
    const est::EstimationResult res = est::los_ence(f.pilot_fd, f.rx_fd, cfg);

    CHECK(res.sensed == Scenario::LoS);
    CHECK(res.kurtosis > cfg.zeta);
    CHECK(res.los_threshold.has_value());

    // Thresholding may only pass taps through or zero them.
    double err2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t k = 0; k < f.truth.size(); ++k) {
      CHECK((res.h_enhanced[k] == res.h_ls[k] ||
             res.h_enhanced[k] == std::complex<double>{0, 0}));
      if (f.truth[k] != std::complex<double>{0, 0}) {
        // True taps tower over the rounding-noise floor and must survive.
        CHECK(res.h_enhanced[k] == res.h_ls[k]);
      }
      err2 += std::norm(res.h_enhanced[k] - f.truth[k]);
      ref2 += std::norm(f.truth[k]);
    }
    CHECK(err2 / ref2 < 1e-18);
  }
}

TEST_CASE("all-zero received frames take the degenerate path") {
  RandomSource rng(52);
  BitBlock bits(1024);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
  const ComplexVector pilot = dsp::qam4_modulate(bits);

  const est::SensingConfig cfg;
  const est::EstimationResult res =
      est::los_ence(pilot, ComplexVector(512, {0, 0}), cfg);
  CHECK(res.degenerate);
  CHECK(res.sensed == Scenario::NLoS);
  CHECK(res.kurtosis == 0.0);
  CHECK(!res.los_threshold.has_value());
}

TEST_CASE("sensed NLoS results never carry a LoS threshold") {
  RandomSource rng(53);
  const est::SensingConfig scfg;
  const channel::ChannelConfig ccfg;
  int nlos_seen = 0;
  for (int i = 0; i < 40; ++i) {
    NoiselessFrame f = make_noiseless_frame(rng, Scenario::NLoS);
    // Heavy noise drives the kurtosis toward the dense-vector regime.
    const auto noisy = channel::add_awgn(f.rx_fd, -20.0, 1.0, rng);
    const est::EstimationResult res =
        est::los_ence(f.pilot_fd, noisy.samples, scfg);
    if (res.sensed == Scenario::NLoS) {
      ++nlos_seen;
      CHECK(!res.los_threshold.has_value());
      CHECK(res.cfar_threshold > 0.0);
    }
    CHECK(res.h_ls.size() == ccfg.n);
    CHECK(res.h_enhanced.size() == ccfg.n);
  }
  CHECK(nlos_seen > 0);
}

TEST_CASE("los_ence rejects frames of the wrong length") {
  const est::SensingConfig cfg;
  CHECK_THROWS_AS(est::los_ence(ComplexVector(8, {1, 0}),
                                ComplexVector(8, {1, 0}), cfg),
                  std::invalid_argument);
}
