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

#include <complex>
#include <cstdint>
#include <vector>

namespace losence {

/// Complex baseband samples, time or frequency domain.
using ComplexVector = std::vector<std::complex<double>>;

/// Data bits, one per entry, each 0 or 1.
using BitBlock = std::vector<std::uint8_t>;

/// Propagation scenario of a channel realization.
enum class Scenario { LoS, NLoS };

inline const char* to_string(Scenario s) { return s == Scenario::LoS ? "LoS" : "NLoS"; }

}  // namespace losence
