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

#include "losence/types.hpp"

namespace losence::dsp {

/// Unitary DFT, scaling 1/sqrt(N). Radix-2 FFT for power-of-two lengths,
/// direct summation otherwise. Throws std::invalid_argument on empty input.
ComplexVector dft(const ComplexVector& x);

/// Unitary inverse DFT, scaling 1/sqrt(N); exact inverse of dft up to
/// floating-point rounding.
ComplexVector idft(const ComplexVector& x);

/// Prepend the last l_cp samples of x. Requires 1 <= l_cp <= x.size().
ComplexVector add_cyclic_prefix(const ComplexVector& x, std::size_t l_cp);

/// Drop the first l_cp samples of an n + l_cp frame.
ComplexVector remove_cyclic_prefix(const ComplexVector& frame, std::size_t n,
                                   std::size_t l_cp);

/// Gray-coded 4-QAM, unit symbol energy. Bit pairs map as
/// 00 -> (+1+j)/sqrt2, 01 -> (-1+j)/sqrt2, 11 -> (-1-j)/sqrt2,
/// 10 -> (+1-j)/sqrt2. Requires an even bit count.
ComplexVector qam4_modulate(const BitBlock& bits);

/// Hard nearest-neighbor decisions back to bit pairs. Quadrant boundaries
/// (zero real or imaginary part) resolve deterministically to the
/// nonnegative side.
BitBlock qam4_demodulate(const ComplexVector& symbols);

/// Circular convolution of h with x over x.size() samples. Requires
/// h.size() <= x.size(). Sparse h uses direct summation over its nonzero
/// taps; dense h goes through the transform domain.
ComplexVector circular_convolve(const ComplexVector& h, const ComplexVector& x);

}  // namespace losence::dsp
