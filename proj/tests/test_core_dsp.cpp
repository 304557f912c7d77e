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

#include "losence/core_dsp.hpp"
#include "losence/rng.hpp"
#include "oracles.hpp"

using losence::BitBlock;
using losence::ComplexVector;
using losence::RandomSource;
namespace dsp = losence::dsp;

namespace {

ComplexVector random_vector(RandomSource& rng, std::size_t n) {
  ComplexVector v(n);
  for (auto& z : v) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return v;
}

}  // namespace

TEST_CASE("dft maps a unit impulse to a flat spectrum") {
  const ComplexVector y = dsp::dft({{1, 0}, {0, 0}, {0, 0}, {0, 0}});
  REQUIRE(y.size() == 4);
  for (const auto& z : y) {
    CHECK(z.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(z.imag()) < 1e-14);
  }
}

TEST_CASE("dft concentrates a constant input at DC") {
  const std::complex<double> c{0.3, -0.7};
  const ComplexVector y = dsp::dft(ComplexVector(8, c));
  CHECK(std::abs(y[0] - c * std::sqrt(8.0)) < 1e-13);
  for (std::size_t k = 1; k < 8; ++k) {
    CHECK(std::abs(y[k]) < 1e-13);
  }
}

TEST_CASE("dft preserves the l2 norm") {
  RandomSource rng(11);
  for (const std::size_t n : {8u, 64u, 512u, 4096u}) {
    const ComplexVector x = random_vector(rng, n);
    const ComplexVector y = dsp::dft(x);
    CHECK(oracle::l2_norm(y) ==
          doctest::Approx(oracle::l2_norm(x)).epsilon(1e-12));
  }
}

TEST_CASE("idft inverts dft") {
  RandomSource rng(12);
  // Includes non-power-of-two lengths, which take the direct-summation path.
  for (const std::size_t n : {1u, 2u, 3u, 12u, 64u, 100u, 512u, 4096u}) {
    const ComplexVector x = random_vector(rng, n);
    const ComplexVector back = dsp::idft(dsp::dft(x));
    CHECK(oracle::max_abs_diff(back, x) < 1e-12 * std::max(1.0, oracle::l2_norm(x)));
  }
}

TEST_CASE("idft maps a flat spectrum back to an impulse") {
  const ComplexVector y = dsp::idft({{0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}});
  CHECK(std::abs(y[0] - std::complex<double>{1, 0}) < 1e-14);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(std::abs(y[i]) < 1e-14);
  }
}

TEST_CASE("transforms match the direct-summation reference") {
  RandomSource rng(13);
  for (const std::size_t n : {12u, 512u}) {
    const ComplexVector x = random_vector(rng, n);
    CHECK(oracle::max_abs_diff(dsp::dft(x), oracle::naive_dft(x)) < 1e-10);
    CHECK(oracle::max_abs_diff(dsp::idft(x), oracle::naive_idft(x)) < 1e-10);
  }
}

TEST_CASE("transforms reject empty input") {
  CHECK_THROWS_AS(dsp::dft({}), std::invalid_argument);
  CHECK_THROWS_AS(dsp::idft({}), std::invalid_argument);
}

TEST_CASE("add_cyclic_prefix prepends the frame tail") {
  const std::complex<double> a{1, 0}, b{2, 0}, c{3, 0}, d{4, 0};
  const ComplexVector framed = dsp::add_cyclic_prefix({a, b, c, d}, 2);
  CHECK(framed == ComplexVector{c, d, a, b, c, d});
}

TEST_CASE("add_cyclic_prefix handles the full-length prefix") {
  const ComplexVector x = {{1, 1}, {2, 2}};
  const ComplexVector framed = dsp::add_cyclic_prefix(x, 2);
  CHECK(framed == ComplexVector{{1, 1}, {2, 2}, {1, 1}, {2, 2}});
}

TEST_CASE("add_cyclic_prefix produces the configured frame length") {
  RandomSource rng(14);
  const ComplexVector x = random_vector(rng, 512);
  CHECK(dsp::add_cyclic_prefix(x, 64).size() == 576);
}

TEST_CASE("add_cyclic_prefix validates the prefix length") {
  const ComplexVector x(4, {1, 0});
  CHECK_THROWS_AS(dsp::add_cyclic_prefix(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(dsp::add_cyclic_prefix(x, 5), std::invalid_argument);
}

TEST_CASE("remove_cyclic_prefix returns the last n samples") {
  const std::complex<double> a{1, 0}, b{2, 0}, c{3, 0}, d{4, 0};
  CHECK(dsp::remove_cyclic_prefix({c, d, a, b, c, d}, 4, 2) ==
        ComplexVector{a, b, c, d});
}

TEST_CASE("remove_cyclic_prefix inverts add_cyclic_prefix exactly") {
  RandomSource rng(15);
  for (const std::size_t l_cp : {1u, 7u, 64u}) {
    const ComplexVector x = random_vector(rng, 128);
    CHECK(dsp::remove_cyclic_prefix(dsp::add_cyclic_prefix(x, l_cp), 128,
                                    l_cp) == x);
  }
}

TEST_CASE("remove_cyclic_prefix rejects a mismatched frame length") {
  const ComplexVector frame(575, {0, 0});
  CHECK_THROWS_AS(dsp::remove_cyclic_prefix(frame, 512, 64),
                  std::invalid_argument);
}

TEST_CASE("qam4_modulate anchors 00 to the first-quadrant symbol") {
  const ComplexVector sym = dsp::qam4_modulate({0, 0});
  const double a = 1.0 / std::sqrt(2.0);
  CHECK(sym[0].real() == doctest::Approx(a).epsilon(1e-15));
  CHECK(sym[0].imag() == doctest::Approx(a).epsilon(1e-15));
}

TEST_CASE("qam4 symbols have unit modulus and unit mean power") {
  RandomSource rng(16);
  BitBlock bits(1024);
  for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
  const ComplexVector syms = dsp::qam4_modulate(bits);
  REQUIRE(syms.size() == 512);
  double power = 0.0;
  for (const auto& s : syms) {
    CHECK(std::abs(s) == doctest::Approx(1.0).epsilon(1e-14));
    power += std::norm(s);
  }
  CHECK(power / 512.0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("qam4 round-trips all four bit patterns") {
  const BitBlock bits = {0, 0, 0, 1, 1, 0, 1, 1};
  CHECK(dsp::qam4_demodulate(dsp::qam4_modulate(bits)) == bits);
}

TEST_CASE("qam4_modulate rejects an odd bit count") {
  CHECK_THROWS_AS(dsp::qam4_modulate({1}), std::invalid_argument);
}

TEST_CASE("qam4_demodulate picks the nearest symbol") {
  CHECK(dsp::qam4_demodulate({{0.9, 0.8}}) == BitBlock{0, 0});
  CHECK(dsp::qam4_demodulate({{-0.1, -0.05}}) == BitBlock{1, 1});
}

TEST_CASE("circular_convolve with a unit tap is the identity") {
  RandomSource rng(17);
  const ComplexVector x = random_vector(rng, 16);
  CHECK(dsp::circular_convolve({{1, 0}}, x) == x);
}

TEST_CASE("circular_convolve with a delayed tap cyclically shifts") {
  const std::complex<double> a{1, 0}, b{2, 0}, c{3, 0}, d{4, 0};
  CHECK(dsp::circular_convolve({{0, 0}, {1, 0}}, {a, b, c, d}) ==
        ComplexVector{d, a, b, c});
}

TEST_CASE("circular_convolve satisfies the convolution theorem") {
  RandomSource rng(18);
  ComplexVector h(512, {0, 0});
  for (std::size_t p = 0; p < 10; ++p) {
    h[p] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  const ComplexVector x = random_vector(rng, 512);
  const ComplexVector y = dsp::circular_convolve(h, x);

  const ComplexVector yf = dsp::dft(y);
  const ComplexVector xf = dsp::dft(x);
  const ComplexVector hf = dsp::dft(h);
  const double root_n = std::sqrt(512.0);
  for (std::size_t k = 0; k < 512; ++k) {
    CHECK(std::abs(yf[k] - root_n * hf[k] * xf[k]) < 1e-10);
  }
}

TEST_CASE("circular_convolve matches the reference on dense filters") {
  // 100 nonzero taps forces the transform route; the sparse route is the
  // one the reference checks elsewhere.
  RandomSource rng(19);
  ComplexVector h(512, {0, 0});
  for (std::size_t p = 0; p < 100; ++p) {
    h[p] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  const ComplexVector x = random_vector(rng, 512);
  CHECK(oracle::max_abs_diff(dsp::circular_convolve(h, x),
                             oracle::naive_circular_convolve(h, x)) < 1e-10);
}

TEST_CASE("circular_convolve matches the reference on sparse filters") {
  RandomSource rng(20);
  ComplexVector h(20, {0, 0});
  for (const std::size_t p : {0u, 3u, 7u, 19u}) {
    h[p] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  const ComplexVector x = random_vector(rng, 64);
  CHECK(oracle::max_abs_diff(dsp::circular_convolve(h, x),
                             oracle::naive_circular_convolve(h, x)) < 1e-12);
}

TEST_CASE("circular_convolve rejects a filter longer than the frame") {
  CHECK_THROWS_AS(dsp::circular_convolve(ComplexVector(5, {1, 0}),
                                         ComplexVector(4, {1, 0})),
                  std::invalid_argument);
}
