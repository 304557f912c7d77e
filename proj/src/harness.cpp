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

#include "losence/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "losence/core_dsp.hpp"

namespace losence::harness {

namespace {

enum class Rule { none, cfar, los_aid };

struct RulePair {
  Rule nlos;
  Rule los;
};

RulePair rule_pair(Method m) {
  switch (m) {
    case Method::ls:
      return {Rule::none, Rule::none};
    case Method::prop:
      return {Rule::cfar, Rule::los_aid};
    case Method::cfar_cfar:
      return {Rule::cfar, Rule::cfar};
    case Method::none_cfar:
      return {Rule::none, Rule::cfar};
    case Method::none_losaid:
      return {Rule::none, Rule::los_aid};
    case Method::cfar_none:
      return {Rule::cfar, Rule::none};
  }
  throw std::invalid_argument("unknown method");
}

// Applies one variant's branch rule to the raw estimate. LoS-aided
// thresholding is only ever selected in the sensed-LoS branch, where the
// threshold is guaranteed to have been computed.
ComplexVector apply_rule(const estimation::EstimationResult& est, Method m) {
  const RulePair pair = rule_pair(m);
  const Rule rule = est.sensed == Scenario::LoS ? pair.los : pair.nlos;
  switch (rule) {
    case Rule::none:
      return est.h_ls;
    case Rule::cfar:
      return estimation::denoise(est.h_ls, est.cfar_threshold);
    case Rule::los_aid:
      if (!est.los_threshold) {
        throw std::logic_error("LoS-aided rule selected without a threshold");
      }
      return estimation::denoise(est.h_ls, *est.los_threshold);
  }
  throw std::logic_error("unknown rule");
}

std::string format_value_tag(SweepKind kind, double value) {
  char buf[64];
  switch (kind) {
    case SweepKind::snr:
      return "base";
    case SweepKind::r:
      std::snprintf(buf, sizeof buf, "r=%g", value);
      return buf;
    case SweepKind::p:
      std::snprintf(buf, sizeof buf, "P=%g", value);
      return buf;
  }
  throw std::invalid_argument("unknown sweep kind");
}

// Builds the per-point configuration for one swept value, validating it
// before any trials run.
SimConfig point_config(const SimConfig& base, SweepKind kind, double value) {
  SimConfig cfg = base;
  switch (kind) {
    case SweepKind::snr:
      if (!std::isfinite(value)) {
        throw std::invalid_argument("snr sweep value must be finite");
      }
      break;
    case SweepKind::r:
      cfg.channel.los_probability = value;
      break;
    case SweepKind::p: {
      if (!(std::floor(value) == value)) {
        throw std::invalid_argument("p sweep value must be an integer");
      }
      if (value < 1 ||
          value > static_cast<double>(cfg.channel.tap_line_length)) {
        throw std::invalid_argument(
            "p sweep value must satisfy 1 <= p <= tap_line_length");
      }
      cfg.channel.num_paths = static_cast<std::size_t>(value);
      break;
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::ls:
      return "LS";
    case Method::prop:
      return "Prop";
    case Method::cfar_cfar:
      return "c_NLoS+c_LoS";
    case Method::none_cfar:
      return "n_NLoS+c_LoS";
    case Method::none_losaid:
      return "n_NLoS+l_LoS";
    case Method::cfar_none:
      return "c_NLoS+n_LoS";
  }
  throw std::invalid_argument("unknown method");
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) {
      return m;
    }
  }
  throw std::invalid_argument("unknown method name: " + std::string(name));
}

std::string_view sweep_kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::snr:
      return "snr";
    case SweepKind::r:
      return "r";
    case SweepKind::p:
      return "p";
  }
  throw std::invalid_argument("unknown sweep kind");
}

void SimConfig::validate() const {
  channel.validate();
  sensing.validate();
  if (sensing.n != channel.n) {
    throw std::invalid_argument("sensing.n must match channel.n");
  }
  if (sensing.l_cp != channel.l_cp) {
    throw std::invalid_argument("sensing.l_cp must match channel.l_cp");
  }
  if (trials_per_point == 0) {
    throw std::invalid_argument("trials_per_point must be positive");
  }
  if (snr_grid_db.empty()) {
    throw std::invalid_argument("snr_grid_db must not be empty");
  }
  for (double s : snr_grid_db) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("snr_grid_db values must be finite");
    }
  }
  if (methods.empty()) {
    throw std::invalid_argument("methods must not be empty");
  }
  std::set<Method> seen(methods.begin(), methods.end());
  if (seen.size() != methods.size()) {
    throw std::invalid_argument("methods must not contain duplicates");
  }
}

double nmse(const ComplexVector& est, const ComplexVector& truth) {
  if (est.size() != truth.size()) {
    throw std::invalid_argument("nmse operands must have equal length");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    num += std::norm(est[i] - truth[i]);
    den += std::norm(truth[i]);
  }
  if (den == 0.0) {
    throw std::domain_error("nmse reference must not be all zero");
  }
  return num / den;
}

TrialOutcome run_trial_full(const SimConfig& cfg, double snr_db,
                            RandomSource& rng,
                            std::optional<Scenario> forced) {
  TrialOutcome out;
  const std::size_t n = cfg.channel.n;

  out.true_scenario =
      forced ? *forced
             : channel::sample_scenario(rng, cfg.channel.los_probability);
  out.channel = channel::sample_channel(rng, cfg.channel, out.true_scenario);

  BitBlock bits(2 * n);
  for (auto& b : bits) {
    b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
  }
  const ComplexVector pilot_fd = dsp::qam4_modulate(bits);
  const ComplexVector tx_td = dsp::idft(pilot_fd);
  const ComplexVector tx_frame = dsp::add_cyclic_prefix(tx_td, cfg.channel.l_cp);

  const ComplexVector rx_clean =
      channel::apply_channel(out.channel, tx_frame, n, cfg.channel.l_cp);
  double p_rx = 0.0;
  for (const auto& s : rx_clean) {
    p_rx += std::norm(s);
  }
  p_rx /= static_cast<double>(rx_clean.size());
  out.received_power = p_rx;

  const channel::NoisyFrame rx = channel::add_awgn(rx_clean, snr_db, p_rx, rng);
  out.noise_var = rx.noise_var;

  const ComplexVector rx_td =
      dsp::remove_cyclic_prefix(rx.samples, n, cfg.channel.l_cp);
  const ComplexVector rx_fd = dsp::dft(rx_td);

  const ComplexVector truth = channel::to_padded_cir(out.channel, n);

  try {
    out.est = estimation::los_ence(pilot_fd, rx_fd, cfg.sensing);
    for (Method m : kAllMethods) {
      const ComplexVector enhanced = apply_rule(out.est, m);
      out.nmse[static_cast<std::size_t>(m)] = nmse(enhanced, truth);
    }
  } catch (const std::exception&) {
    out.failed = true;
  }
  return out;
}

double run_trial(const SimConfig& cfg, double snr_db, Method method,
                 RandomSource& rng) {
  const TrialOutcome out = run_trial_full(cfg, snr_db, rng);
  if (out.failed) {
    throw std::runtime_error("trial failed during estimation");
  }
  return out.nmse[static_cast<std::size_t>(method)];
}

SweepResult run_sweep(const SimConfig& cfg, SweepKind kind,
                      const std::vector<double>& values) {
  cfg.validate();
  if (values.empty()) {
    throw std::invalid_argument("sweep values must not be empty");
  }

  // Validate every point configuration up front so a bad value aborts
  // before any trial has run.
  std::vector<SimConfig> configs;
  configs.reserve(values.size());
  for (double v : values) {
    configs.push_back(point_config(cfg, kind, v));
  }

  const std::string_view label = sweep_kind_name(kind);
  SweepResult result;

  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    const double value = values[vi];
    const SimConfig& pt = configs[vi];
    const std::string tag = format_value_tag(kind, value);
    const std::vector<double> snrs =
        kind == SweepKind::snr ? std::vector<double>{value} : pt.snr_grid_db;

    for (double snr_db : snrs) {
      std::array<double, kNumMethods> sums{};
      std::size_t failed = 0;

      for (std::size_t trial = 0; trial < pt.trials_per_point; ++trial) {
        RandomSource rng(
            derive_seed(pt.master_seed, label, value, snr_db, trial));
        const TrialOutcome out = run_trial_full(pt, snr_db, rng);
        if (out.failed) {
          ++failed;
          continue;
        }
        for (Method m : pt.methods) {
          sums[static_cast<std::size_t>(m)] +=
              out.nmse[static_cast<std::size_t>(m)];
        }
      }

      result.total_trials += pt.trials_per_point;
      result.failed_trials += failed;
      if (failed > 0 && failed * 1000 >= pt.trials_per_point) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "sweep aborted: %zu of %zu trials failed at %s snr=%g",
                      failed, pt.trials_per_point, tag.c_str(), snr_db);
        throw std::runtime_error(msg);
      }
      const std::size_t good = pt.trials_per_point - failed;

      for (Method m : pt.methods) {
        SweepRecord rec;
        rec.method = m;
        rec.snr_db = snr_db;
        rec.param_tag = tag;
        rec.mean_nmse =
            sums[static_cast<std::size_t>(m)] / static_cast<double>(good);
        rec.trials = pt.trials_per_point;
        result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

double sensing_accuracy(const SimConfig& cfg, double snr_db,
                        std::size_t trials) {
  cfg.validate();
  if (trials == 0) {
    throw std::invalid_argument("trials must be positive");
  }
  std::size_t correct = 0;
  std::size_t good = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomSource rng(
        derive_seed(cfg.master_seed, "sensing", 0.0, snr_db, trial));
    const TrialOutcome out = run_trial_full(cfg, snr_db, rng);
    if (out.failed) {
      continue;
    }
    ++good;
    if (out.est.sensed == out.true_scenario) {
      ++correct;
    }
  }
  if (good == 0) {
    throw std::runtime_error("all sensing trials failed");
  }
  return static_cast<double>(correct) / static_cast<double>(good);
}

}  // namespace losence::harness
