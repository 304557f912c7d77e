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

#include "losence/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "losence/rng.hpp"

namespace losence::cli {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t get_uint(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) {
    throw std::invalid_argument("config key '" + key +
                                "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw std::invalid_argument("config key '" + key + "' must be a number");
  }
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) {
    throw std::invalid_argument("config key '" + key + "' must be a boolean");
  }
  return v.get<bool>();
}

bool is_blank(const std::string& text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.flush();
  if (!f.good()) {
    throw std::runtime_error("failed to write " + path.string());
  }
}

double median_of_sorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

harness::SimConfig parse_config(const std::string& json_text) {
  harness::SimConfig cfg;
  if (is_blank(json_text)) {
    cfg.validate();
    return cfg;
  }

  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config is not valid JSON: ") +
                             e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config root must be a JSON object");
  }

  for (const auto& [key, value] : doc.items()) {
    if (key == "n") {
      cfg.channel.n = static_cast<std::size_t>(get_uint(value, key));
      cfg.sensing.n = cfg.channel.n;
    } else if (key == "l_cp") {
      cfg.channel.l_cp = static_cast<std::size_t>(get_uint(value, key));
      cfg.sensing.l_cp = cfg.channel.l_cp;
    } else if (key == "tap_line_length") {
      cfg.channel.tap_line_length =
          static_cast<std::size_t>(get_uint(value, key));
    } else if (key == "p") {
      cfg.channel.num_paths = static_cast<std::size_t>(get_uint(value, key));
    } else if (key == "r") {
      cfg.channel.los_probability = get_number(value, key);
    } else if (key == "k_min") {
      cfg.channel.k_min = get_number(value, key);
    } else if (key == "k_max") {
      cfg.channel.k_max = get_number(value, key);
    } else if (key == "g_min") {
      cfg.channel.g_min = get_number(value, key);
    } else if (key == "g_max") {
      cfg.channel.g_max = get_number(value, key);
    } else if (key == "nlos_unit_tap_variance") {
      cfg.channel.nlos_unit_tap_variance = get_bool(value, key);
    } else if (key == "p_f") {
      cfg.sensing.p_f = get_number(value, key);
    } else if (key == "l") {
      cfg.sensing.ref_window = static_cast<std::size_t>(get_uint(value, key));
    } else if (key == "zeta") {
      cfg.sensing.zeta = get_number(value, key);
    } else if (key == "snr_grid_db") {
      if (!value.is_array() || value.empty()) {
        throw std::invalid_argument(
            "config key 'snr_grid_db' must be a non-empty array of numbers");
      }
      cfg.snr_grid_db.clear();
      for (const auto& elem : value) {
        cfg.snr_grid_db.push_back(get_number(elem, key));
      }
    } else if (key == "trials") {
      cfg.trials_per_point = static_cast<std::size_t>(get_uint(value, key));
    } else if (key == "methods") {
      if (!value.is_array() || value.empty()) {
        throw std::invalid_argument(
            "config key 'methods' must be a non-empty array of method names");
      }
      cfg.methods.clear();
      for (const auto& elem : value) {
        if (!elem.is_string()) {
          throw std::invalid_argument(
              "config key 'methods' must contain strings");
        }
        cfg.methods.push_back(
            harness::parse_method(elem.get<std::string>()));
      }
    } else if (key == "seed") {
      cfg.master_seed = get_uint(value, key);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }

  cfg.validate();
  return cfg;
}

harness::SimConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f.is_open()) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string config_digest(const harness::SimConfig& cfg) {
  std::string canon;
  canon += "n=" + std::to_string(cfg.channel.n);
  canon += ";l_cp=" + std::to_string(cfg.channel.l_cp);
  canon += ";tap_line_length=" + std::to_string(cfg.channel.tap_line_length);
  canon += ";p=" + std::to_string(cfg.channel.num_paths);
  canon += ";r=" + fmt_double(cfg.channel.los_probability);
  canon += ";k_min=" + fmt_double(cfg.channel.k_min);
  canon += ";k_max=" + fmt_double(cfg.channel.k_max);
  canon += ";g_min=" + fmt_double(cfg.channel.g_min);
  canon += ";g_max=" + fmt_double(cfg.channel.g_max);
  canon += ";nlos_unit_tap_variance=";
  canon += cfg.channel.nlos_unit_tap_variance ? "1" : "0";
  canon += ";p_f=" + fmt_double(cfg.sensing.p_f);
  canon += ";l=" + std::to_string(cfg.sensing.ref_window);
  canon += ";zeta=" + fmt_double(cfg.sensing.zeta);
  canon += ";snr_grid_db=";
  for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
    if (i > 0) canon += ",";
    canon += fmt_double(cfg.snr_grid_db[i]);
  }
  canon += ";trials=" + std::to_string(cfg.trials_per_point);
  canon += ";methods=";
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    if (i > 0) canon += ",";
    canon += std::string(harness::method_name(cfg.methods[i]));
  }
  canon += ";seed=" + std::to_string(cfg.master_seed);

  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

std::vector<double> default_sweep_values(const harness::SimConfig& cfg,
                                         harness::SweepKind kind) {
  switch (kind) {
    case harness::SweepKind::snr:
      return cfg.snr_grid_db;
    case harness::SweepKind::r:
      return {0.4, 0.7, 1.0};
    case harness::SweepKind::p:
      return {5, 9, 13};
  }
  throw std::invalid_argument("unknown sweep kind");
}

std::string sweep_csv(const harness::SweepResult& result) {
  std::vector<harness::SweepRecord> rows = result.records;
  std::sort(rows.begin(), rows.end(),
            [](const harness::SweepRecord& a, const harness::SweepRecord& b) {
              const std::string_view an = harness::method_name(a.method);
              const std::string_view bn = harness::method_name(b.method);
              if (an != bn) return an < bn;
              if (a.param_tag != b.param_tag) return a.param_tag < b.param_tag;
              return a.snr_db < b.snr_db;
            });

  std::string out = "method,param_tag,snr_db,mean_nmse,trials\n";
  char buf[160];
  for (const auto& rec : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.9g,%zu\n",
                  std::string(harness::method_name(rec.method)).c_str(),
                  rec.param_tag.c_str(), rec.snr_db, rec.mean_nmse,
                  rec.trials);
    out += buf;
  }
  return out;
}

std::string manifest_json(const harness::SimConfig& cfg,
                          harness::SweepKind kind,
                          const std::vector<double>& values,
                          const std::vector<std::string>& outputs,
                          const std::string& timestamp) {
  nlohmann::ordered_json j;
  j["artifact_version"] = "0.1.0";
  j["generated_at"] = timestamp;
  j["config_digest"] = config_digest(cfg);
  j["master_seed"] = cfg.master_seed;
  j["sweep_kind"] = std::string(harness::sweep_kind_name(kind));
  j["values"] = values;
  j["trials_per_point"] = cfg.trials_per_point;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[24];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SweepArtifacts cmd_sweep(const harness::SimConfig& cfg, harness::SweepKind kind,
                         const std::string& out_dir,
                         const std::optional<std::vector<double>>& values) {
  const std::vector<double> vals =
      values ? *values : default_sweep_values(cfg, kind);
  const harness::SweepResult result = harness::run_sweep(cfg, kind, vals);

  const std::string kind_name{harness::sweep_kind_name(kind)};
  const std::string csv_name = "sweep_" + kind_name + ".csv";
  const std::string manifest_name = "manifest_" + kind_name + ".json";

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  SweepArtifacts artifacts;
  artifacts.csv_path = (dir / csv_name).string();
  artifacts.manifest_path = (dir / manifest_name).string();

  write_text_file(dir / csv_name, sweep_csv(result));
  write_text_file(dir / manifest_name,
                  manifest_json(cfg, kind, vals, {csv_name},
                                iso8601_utc_now()));
  return artifacts;
}

CalibrationResult cmd_calibrate_zeta(const harness::SimConfig& cfg,
                                     double snr_db, std::size_t trials) {
  cfg.validate();
  if (trials < 100) {
    throw std::invalid_argument("calibration needs at least 100 trials");
  }
  const std::size_t per_class = trials;

  auto collect = [&](Scenario forced, std::string_view label) {
    std::vector<double> ks;
    ks.reserve(per_class);
    for (std::size_t t = 0; t < per_class; ++t) {
      RandomSource rng(derive_seed(cfg.master_seed, label, 0.0, snr_db, t));
      const harness::TrialOutcome out =
          harness::run_trial_full(cfg, snr_db, rng, forced);
      if (out.failed || out.est.degenerate) {
        continue;
      }
      ks.push_back(out.est.kurtosis);
    }
    if (ks.empty()) {
      throw std::runtime_error("calibration produced no usable trials");
    }
    std::sort(ks.begin(), ks.end());
    return ks;
  };

  const std::vector<double> los_k = collect(Scenario::LoS, "calibrate-los");
  const std::vector<double> nlos_k = collect(Scenario::NLoS, "calibrate-nlos");

  // Error count for threshold z under the strict-greater decision rule:
  // LoS trials with kurtosis <= z plus NLoS trials with kurtosis > z.
  const auto error_count = [&](double z) {
    const std::size_t los_missed =
        std::upper_bound(los_k.begin(), los_k.end(), z) - los_k.begin();
    const std::size_t nlos_missed =
        nlos_k.end() - std::upper_bound(nlos_k.begin(), nlos_k.end(), z);
    return los_missed + nlos_missed;
  };

  std::vector<double> candidates;
  candidates.reserve(los_k.size() + nlos_k.size() + 1);
  const double min_seen = std::min(los_k.front(), nlos_k.front());
  candidates.push_back(min_seen * 0.5);
  candidates.insert(candidates.end(), los_k.begin(), los_k.end());
  candidates.insert(candidates.end(), nlos_k.begin(), nlos_k.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::size_t best_err = los_k.size() + nlos_k.size();
  for (double c : candidates) {
    best_err = std::min(best_err, error_count(c));
  }

  const double geomean =
      std::sqrt(median_of_sorted(nlos_k) * median_of_sorted(los_k));

  CalibrationResult res;
  res.trials_per_class = per_class;
  res.separable = best_err == 0;

  if (res.separable) {
    // Any threshold in the gap works; prefer the geometric mean of the
    // class medians, falling back to the geometric midpoint of the gap.
    if (error_count(geomean) == 0) {
      res.zeta = geomean;
    } else {
      res.zeta = std::sqrt(nlos_k.back() * los_k.front());
    }
  } else {
    double best_c = candidates.front();
    double best_dist = std::numeric_limits<double>::infinity();
    for (double c : candidates) {
      if (error_count(c) != best_err) continue;
      const double dist = std::fabs(std::log(c) - std::log(geomean));
      if (dist < best_dist) {
        best_dist = dist;
        best_c = c;
      }
    }
    res.zeta = best_c;
    std::fprintf(stderr,
                 "warning: kurtosis classes overlap at snr=%g dB; best "
                 "achievable accuracy %.4f\n",
                 snr_db,
                 1.0 - static_cast<double>(best_err) /
                           static_cast<double>(los_k.size() + nlos_k.size()));
  }

  res.accuracy = 1.0 - static_cast<double>(error_count(res.zeta)) /
                           static_cast<double>(los_k.size() + nlos_k.size());
  return res;
}

std::string cmd_demo(const harness::SimConfig& cfg, double snr_db,
                     std::uint64_t seed) {
  cfg.validate();
  RandomSource rng(derive_seed(seed, "demo", 0.0, snr_db, 0));
  const harness::TrialOutcome out = harness::run_trial_full(cfg, snr_db, rng);
  if (out.failed) {
    throw std::runtime_error("demo trial failed during estimation");
  }

  std::string rep;
  char buf[192];
  const auto add = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    rep += buf;
  };

  add("one-frame walkthrough at snr=%g dB (seed %llu)\n", snr_db,
      static_cast<unsigned long long>(seed));
  add("true scenario: %s\n", to_string(out.true_scenario));
  add("large-scale gain g=%.6f, rician k=%.6f, active taps=%zu\n",
      out.channel.large_scale_g, out.channel.rician_k,
      out.channel.taps.size());
  for (const auto& tap : out.channel.taps) {
    add("  delay %2zu: %+.6f%+.6fj  (mag %.6f)\n", tap.delay,
        tap.gain.real(), tap.gain.imag(), std::abs(tap.gain));
  }

  if (out.est.degenerate) {
    rep += "sensing: degenerate magnitude spread, defaulting to NLoS\n";
  } else {
    add("sensing: kurtosis=%.6f, zeta=%g, decision=%s\n", out.est.kurtosis,
        cfg.sensing.zeta, to_string(out.est.sensed));
  }
  add("noise estimate: sigma2_hat=%.6e\n", out.est.sigma2_hat);
  add("cfar threshold: %.6e\n", out.est.cfar_threshold);
  if (out.est.los_threshold) {
    add("los-aided threshold: %.6e\n", *out.est.los_threshold);
  }

  std::vector<std::size_t> retained;
  for (std::size_t i = 0; i < out.est.h_enhanced.size(); ++i) {
    if (std::abs(out.est.h_enhanced[i]) > 0.0) {
      retained.push_back(i);
    }
  }
  add("retained taps after denoising: %zu\n", retained.size());
  rep += "  indices:";
  const std::size_t cap = 40;
  for (std::size_t i = 0; i < retained.size() && i < cap; ++i) {
    add(" %zu", retained[i]);
  }
  if (retained.size() > cap) {
    rep += " ...";
  }
  rep += "\n";

  add("nmse raw=%.6e, enhanced=%.6e\n",
      out.nmse[static_cast<std::size_t>(harness::Method::ls)],
      out.nmse[static_cast<std::size_t>(harness::Method::prop)]);
  return rep;
}

}  // namespace losence::cli
