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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace losence {

/// Deterministic random source. One instance per Monte Carlo trial, never
/// shared between threads. std::mt19937_64 supplies the raw 64-bit words
/// (its output sequence is mandated by the standard); every value mapping
/// below is explicit, so realization sequences do not depend on the
/// standard library's distribution implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller. Values are produced in pairs; the
  /// second one is cached, so the cache is part of the source's state.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u lies in (0, 1], which keeps the logarithm finite.
    const double u = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Circular complex Gaussian with E|z|^2 = total_variance
  /// (each component has variance total_variance / 2).
  std::complex<double> complex_gaussian(double total_variance) {
    const double s = std::sqrt(total_variance / 2.0);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
  }

  /// Uniform integer on [0, n), n >= 1. Rejection sampling, unbiased.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t rem = (~std::uint64_t{0} % n + 1) % n;
    const std::uint64_t zone = ~std::uint64_t{0} - rem;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x > zone);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// FNV-1a over a byte string; used to fold text labels into seeds.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// SplitMix64 finalizer; a well-mixed 64 -> 64 bit hash step.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Stable per-trial seed. Depends only on the tuple
/// (master, label, value, snr_db, trial), so any subset of a sweep can be
/// reproduced without running the rest, independent of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 double value, double snr_db, std::uint64_t trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ fnv1a64(label));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(value));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(snr_db));
  h = splitmix64(h ^ trial);
  return h;
}

}  // namespace losence
