/*
 * Copyright 2026 The noma-jspa Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef NOMA_CHANNEL_HPP
#define NOMA_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noma/config.hpp"
#include "noma/model.hpp"

namespace noma {

/// Physical and algorithmic parameters of a simulated cell. Defaults are the
/// reference simulation setup: hexagonal cell of radius 1000 m, 20
/// subcarriers over 5 MHz, P_max = 10 W, delta = 0.01 W.
struct InstanceConfig {
  int num_users = 10;
  int num_carriers = 20;
  int max_multiplexed = 2;
  double cell_radius_m = 1000.0;
  double min_distance_m = 35.0;
  double carrier_frequency_ghz = 2.0;     // informational; folded into the path-loss law
  double path_loss_intercept_db = 128.1;  // at 1 km
  double path_loss_slope_db = 37.6;       // per decade of km
  double shadowing_std_db = 10.0;
  double rayleigh_variance = 1.0;
  double noise_psd_dbm_hz = -174.0;
  double bandwidth_hz = 5e6;
  double p_max_w = 10.0;
  std::optional<double> p_max_carrier_w;  // unset: per-subcarrier budget equals P_max
  double power_step_w = 0.01;
  double tolerance = 1e-4;                // Grad-JSPA termination tolerance xi
  std::uint64_t seed = 1;

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  /// Reads every key listed in instance_config_keys(); missing keys keep
  /// their defaults.
  static InstanceConfig from(const KeyValueConfig& cfg);
};

const std::vector<std::string>& instance_config_keys();

/// 128.1 + 37.6 log10(d) dB with d in km, for the default coefficients.
double path_loss_db(const InstanceConfig& config, double distance_m);

/// Draws one instance: users uniform in the hexagonal cell outside the
/// minimum distance, weights uniform in [0, 1] clamped below by 1e-6, and
/// gains combining path loss, per-user log-normal shadowing and per
/// user-subcarrier Rayleigh fading. Deterministic given `seed`.
Instance generate_instance(const InstanceConfig& config, std::uint64_t seed);

inline Instance generate_instance(const InstanceConfig& config) {
  return generate_instance(config, config.seed);
}

} // namespace noma

#endif
