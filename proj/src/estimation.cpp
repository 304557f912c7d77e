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

#include "losence/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "losence/core_dsp.hpp"

namespace losence::estimation {
namespace {

// Constant-magnitude inputs leave only rounding residue in the second
// central moment; anything below this relative floor counts as degenerate.
bool degenerate_spread(double m2, double mean) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return !(m2 > 64.0 * eps * eps * mean * mean);
}

}  // namespace

void SensingConfig::validate() const {
  if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
  if (!(p_f > 0.0 && p_f < 1.0))
    throw std::invalid_argument("p_f outside valid range (0, 1)");
  if (ref_window < 2) throw std::invalid_argument("l must be at least 2");
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (l_cp == 0 || l_cp >= n)
    throw std::invalid_argument("l_cp must satisfy 0 < l_cp < n");
}

ComplexVector ls_estimate(const ComplexVector& y_fd, const ComplexVector& x_fd) {
  if (y_fd.size() != x_fd.size() || x_fd.empty())
    throw std::invalid_argument("ls_estimate: length mismatch");
  ComplexVector h(x_fd.size());
  for (std::size_t i = 0; i < x_fd.size(); ++i) {
    if (x_fd[i] == std::complex<double>{0.0, 0.0})
      throw std::invalid_argument("ls_estimate: zero pilot entry");
    h[i] = y_fd[i] / x_fd[i];
  }
  return h;
}

ComplexVector cir_from_fd(const ComplexVector& h_fd) {
  ComplexVector cir = dsp::idft(h_fd);
  const double scale = 1.0 / std::sqrt(static_cast<double>(h_fd.size()));
  for (auto& v : cir) v *= scale;
  return cir;
}

double kurtosis(const ComplexVector& cir) {
  if (cir.size() < 2)
    throw std::invalid_argument("kurtosis: need at least two taps");
  const std::size_t n = cir.size();
  std::vector<double> mag(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::abs(cir[i]);
    mean += mag[i];
  }
  mean /= static_cast<double>(n);
  double m2 = 0.0;
  double m4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = mag[i] - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (degenerate_spread(m2, mean))
    throw std::domain_error("kurtosis: constant tap magnitudes");
  return m4 / (m2 * m2);
}

Scenario sense_los(double kurt, double zeta) {
  return kurt > zeta ? Scenario::LoS : Scenario::NLoS;
}

double estimate_noise_var(const ComplexVector& cir, std::size_t l_cp) {
  if (l_cp >= cir.size())
    throw std::invalid_argument("estimate_noise_var: no tail beyond l_cp");
  double acc = 0.0;
  for (std::size_t i = l_cp; i < cir.size(); ++i) acc += std::norm(cir[i]);
  return acc / (2.0 * static_cast<double>(cir.size() - l_cp));
}

double cfar_threshold(double sigma2, double p_f) {
  if (!(sigma2 >= 0.0))
    throw std::invalid_argument("cfar_threshold: sigma2 must be nonnegative");
  if (!(p_f > 0.0 && p_f < 1.0))
    throw std::invalid_argument("cfar_threshold: p_f outside (0, 1)");
  return std::sqrt(-2.0 * sigma2 * std::log(p_f));
}

double threshold_factor(double p_f, std::size_t ref_window) {
  if (!(p_f > 0.0 && p_f < 1.0))
    throw std::invalid_argument("threshold_factor: p_f outside (0, 1)");
  if (ref_window < 2)
    throw std::invalid_argument("threshold_factor: l must be at least 2");
  const double cells = static_cast<double>(ref_window * ref_window - 1);
  return std::pow(p_f, -1.0 / cells) - 1.0;
}

double delta_noise(const ComplexVector& cir, std::size_t l_cp) {
  if (l_cp >= cir.size())
    throw std::invalid_argument("delta_noise: no tail beyond l_cp");
  double tail = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < cir.size(); ++i) {
    const double m = std::abs(cir[i]);
    total += m;
    if (i >= l_cp) tail += m;
  }
  if (!(total > 0.0)) throw std::domain_error("delta_noise: all-zero CIR");
  return tail / total;
}

double delta_los(const ComplexVector& cir, std::size_t l_cp) {
  const std::size_t window = l_cp / 2;
  if (window == 0 || window > cir.size())
    throw std::invalid_argument("delta_los: early window empty or too long");
  double peak = 0.0;
  double head = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    const double m = std::abs(cir[i]);
    peak = std::max(peak, m);
    head += m;
  }
  if (!(head > 0.0)) throw std::domain_error("delta_los: zero early window");
  const double dn = delta_noise(cir, l_cp);
  return peak / head + dn * dn;
}

double los_aided_threshold(double t_cfar, double epsilon, double d_los) {
  if (!(t_cfar >= 0.0) || !(epsilon >= 0.0) || !(d_los >= 0.0))
    throw std::invalid_argument("los_aided_threshold: negative input");
  return epsilon * t_cfar * (1.0 + d_los);
}

ComplexVector denoise(const ComplexVector& cir, double threshold) {
  if (!(threshold >= 0.0))
    throw std::invalid_argument("denoise: threshold must be nonnegative");
  ComplexVector out(cir.size(), {0.0, 0.0});
  for (std::size_t i = 0; i < cir.size(); ++i)
    if (std::abs(cir[i]) >= threshold) out[i] = cir[i];
  return out;
}

EstimationResult los_ence(const ComplexVector& x_fd, const ComplexVector& y_fd,
                          const SensingConfig& cfg) {
  if (x_fd.size() != cfg.n || y_fd.size() != cfg.n)
    throw std::invalid_argument("los_ence: frame length is not n");

  EstimationResult res;
  res.h_ls = cir_from_fd(ls_estimate(y_fd, x_fd));
  try {
    res.kurtosis = kurtosis(res.h_ls);
    res.sensed = sense_los(res.kurtosis, cfg.zeta);
  } catch (const std::domain_error&) {
    res.degenerate = true;
    res.kurtosis = 0.0;
    res.sensed = Scenario::NLoS;
  }
  res.sigma2_hat = estimate_noise_var(res.h_ls, cfg.l_cp);
  res.cfar_threshold = cfar_threshold(res.sigma2_hat, cfg.p_f);
  if (res.sensed == Scenario::LoS) {
    const double eps = threshold_factor(cfg.p_f, cfg.ref_window);
    const double d_los = delta_los(res.h_ls, cfg.l_cp);
    res.los_threshold = los_aided_threshold(res.cfar_threshold, eps, d_los);
    res.h_enhanced = denoise(res.h_ls, *res.los_threshold);
  } else {
    res.h_enhanced = denoise(res.h_ls, res.cfar_threshold);
  }
  return res;
}

}  // namespace losence::estimation
