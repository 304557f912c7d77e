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

#include "losence/core_dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace losence::dsp {
namespace {

constexpr double kPi = std::numbers::pi;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 transform, in place, unscaled.
// sign = -1 gives the forward kernel exp(-j2pi k n / N), +1 the inverse.
void fft_pow2(ComplexVector& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  ComplexVector w(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j)
    w[j] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> t = w[k * stride] * a[i + k + len / 2];
        a[i + k] = u + t;
        a[i + k + len / 2] = u - t;
      }
    }
  }
}

// O(n^2) fallback for lengths that are not a power of two.
ComplexVector transform_direct(const ComplexVector& x, int sign) {
  const std::size_t n = x.size();
  ComplexVector y(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m)
      acc += x[m] * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k * m % n) /
                                        static_cast<double>(n));
    y[k] = acc;
  }
  return y;
}

ComplexVector transform(const ComplexVector& x, int sign) {
  if (x.empty()) throw std::invalid_argument("dft/idft: empty input");
  ComplexVector y;
  if (power_of_two(x.size())) {
    y = x;
    fft_pow2(y, sign);
  } else {
    y = transform_direct(x, sign);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
  for (auto& v : y) v *= scale;
  return y;
}

}  // namespace

ComplexVector dft(const ComplexVector& x) { return transform(x, -1); }

ComplexVector idft(const ComplexVector& x) { return transform(x, +1); }

ComplexVector add_cyclic_prefix(const ComplexVector& x, std::size_t l_cp) {
  if (l_cp == 0 || l_cp > x.size())
    throw std::invalid_argument("add_cyclic_prefix: l_cp must lie in [1, x.size()]");
  ComplexVector frame;
  frame.reserve(x.size() + l_cp);
  frame.insert(frame.end(), x.end() - static_cast<std::ptrdiff_t>(l_cp), x.end());
  frame.insert(frame.end(), x.begin(), x.end());
  return frame;
}

ComplexVector remove_cyclic_prefix(const ComplexVector& frame, std::size_t n,
                                   std::size_t l_cp) {
  if (frame.size() != n + l_cp)
    throw std::invalid_argument("remove_cyclic_prefix: frame length is not n + l_cp");
  return ComplexVector(frame.begin() + static_cast<std::ptrdiff_t>(l_cp), frame.end());
}

ComplexVector qam4_modulate(const BitBlock& bits) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("qam4_modulate: odd number of bits");
  constexpr double a = 1.0 / std::numbers::sqrt2;
  // Index is (first bit << 1) | second bit; adjacent symbols differ in one bit.
  static constexpr std::complex<double> table[4] = {{a, a}, {-a, a}, {a, -a}, {-a, -a}};
  ComplexVector out(bits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const unsigned b0 = bits[2 * i] ? 1u : 0u;
    const unsigned b1 = bits[2 * i + 1] ? 1u : 0u;
    out[i] = table[(b0 << 1) | b1];
  }
  return out;
}

BitBlock qam4_demodulate(const ComplexVector& symbols) {
  BitBlock bits(2 * symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols[i].imag() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = symbols[i].real() < 0.0 ? 1 : 0;
  }
  return bits;
}

ComplexVector circular_convolve(const ComplexVector& h, const ComplexVector& x) {
  if (h.empty() || x.empty())
    throw std::invalid_argument("circular_convolve: empty input");
  if (h.size() > x.size())
    throw std::invalid_argument("circular_convolve: h longer than x");
  const std::size_t n = x.size();

  std::vector<std::pair<std::size_t, std::complex<double>>> taps;
  for (std::size_t p = 0; p < h.size(); ++p)
    if (h[p] != std::complex<double>{0.0, 0.0}) taps.emplace_back(p, h[p]);

  if (taps.size() <= 64) {
    ComplexVector y(n, {0.0, 0.0});
    for (std::size_t m = 0; m < n; ++m) {
      std::complex<double> acc{0.0, 0.0};
      for (const auto& [p, g] : taps) acc += g * x[(m + n - p) % n];
      y[m] = acc;
    }
    return y;
  }

  // Transform route: pointwise product with the unnormalized response of h.
  ComplexVector hp(n, {0.0, 0.0});
  std::copy(h.begin(), h.end(), hp.begin());
  ComplexVector filt = dft(hp);
  ComplexVector spectrum = dft(x);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) spectrum[k] *= root_n * filt[k];
  return idft(spectrum);
}

}  // namespace losence::dsp
