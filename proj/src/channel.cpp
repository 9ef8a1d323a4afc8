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


#include "noma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "noma/errors.hpp"

namespace noma {

namespace {

constexpr double kMinWeight = 1e-6;

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool inside_hexagon(double x, double y, double radius) {
  const double s3 = std::sqrt(3.0);
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  return ay <= s3 / 2.0 * radius && s3 * ax + ay <= s3 * radius;
}

} // namespace

void InstanceConfig::validate() const {
  check(num_users >= 1, "num_users must be >= 1");
  check(num_carriers >= 1, "num_subcarriers must be >= 1");
  check(max_multiplexed >= 1 && max_multiplexed <= num_users, "max_multiplexed must lie in [1, K]");
  check(cell_radius_m > 0.0, "cell_radius_m must be positive");
  check(min_distance_m >= 0.0 && min_distance_m < cell_radius_m * std::sqrt(3.0) / 2.0,
        "min_distance_m must be non-negative and inside the cell");
  check(shadowing_std_db >= 0.0, "shadowing_std_db must be non-negative");
  check(rayleigh_variance > 0.0, "rayleigh_variance must be positive");
  check(bandwidth_hz > 0.0, "bandwidth_hz must be positive");
  check(p_max_w > 0.0, "p_max_w must be positive");
  check(power_step_w > 0.0 && power_step_w <= p_max_w, "power_step_w must lie in (0, p_max_w]");
  if (p_max_carrier_w) {
    check(*p_max_carrier_w > 0.0 && *p_max_carrier_w <= p_max_w,
          "p_max_subcarrier_w must lie in (0, p_max_w]");
  }
  check(tolerance > 0.0, "tolerance_xi must be positive");
}

const std::vector<std::string>& instance_config_keys() {
  static const std::vector<std::string> keys = {
      "num_users",          "num_subcarriers",       "max_multiplexed",   "cell_radius_m",
      "min_distance_m",     "carrier_frequency_ghz", "path_loss_intercept_db",
      "path_loss_slope_db", "shadowing_std_db",      "rayleigh_variance", "noise_psd_dbm_hz",
      "bandwidth_hz",       "p_max_w",               "p_max_subcarrier_w", "power_step_w",
      "tolerance_xi",       "seed"};
  return keys;
}

InstanceConfig InstanceConfig::from(const KeyValueConfig& cfg) {
  InstanceConfig c;
  c.num_users = cfg.get_int("num_users", c.num_users);
  c.num_carriers = cfg.get_int("num_subcarriers", c.num_carriers);
  c.max_multiplexed = cfg.get_int("max_multiplexed", c.max_multiplexed);
  c.cell_radius_m = cfg.get_double("cell_radius_m", c.cell_radius_m);
  c.min_distance_m = cfg.get_double("min_distance_m", c.min_distance_m);
  c.carrier_frequency_ghz = cfg.get_double("carrier_frequency_ghz", c.carrier_frequency_ghz);
  c.path_loss_intercept_db = cfg.get_double("path_loss_intercept_db", c.path_loss_intercept_db);
  c.path_loss_slope_db = cfg.get_double("path_loss_slope_db", c.path_loss_slope_db);
  c.shadowing_std_db = cfg.get_double("shadowing_std_db", c.shadowing_std_db);
  c.rayleigh_variance = cfg.get_double("rayleigh_variance", c.rayleigh_variance);
  c.noise_psd_dbm_hz = cfg.get_double("noise_psd_dbm_hz", c.noise_psd_dbm_hz);
  c.bandwidth_hz = cfg.get_double("bandwidth_hz", c.bandwidth_hz);
  c.p_max_w = cfg.get_double("p_max_w", c.p_max_w);
  if (const auto v = cfg.get("p_max_subcarrier_w")) {
    c.p_max_carrier_w = parse_double(*v, "p_max_subcarrier_w");
  }
  c.power_step_w = cfg.get_double("power_step_w", c.power_step_w);
  c.tolerance = cfg.get_double("tolerance_xi", c.tolerance);
  c.seed = cfg.get_u64("seed", c.seed);
  c.validate();
  return c;
}

double path_loss_db(const InstanceConfig& config, double distance_m) {
  return config.path_loss_intercept_db + config.path_loss_slope_db * std::log10(distance_m / 1000.0);
}

Instance generate_instance(const InstanceConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> standard_normal(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0 / config.rayleigh_variance);

  const int users = config.num_users;
  const int carriers = config.num_carriers;
  const double radius = config.cell_radius_m;
  const double half_height = std::sqrt(3.0) / 2.0 * radius;

  Instance inst;
  inst.num_users = users;
  inst.num_carriers = carriers;
  inst.max_multiplexed = config.max_multiplexed;
  inst.p_max = config.p_max_w;
  inst.power_step = config.power_step_w;
  inst.p_max_carrier.assign(carriers, config.p_max_carrier_w.value_or(config.p_max_w));
  inst.bandwidth.assign(carriers, config.bandwidth_hz / carriers);
  inst.gain = CarrierGrid(users, carriers);
  inst.noise = CarrierGrid(users, carriers);

  const double noise_dbm = config.noise_psd_dbm_hz + 10.0 * std::log10(config.bandwidth_hz / carriers);
  const double noise_w = std::pow(10.0, (noise_dbm - 30.0) / 10.0);

  inst.weights.resize(users);
  for (int k = 0; k < users; ++k) {
    double x = 0.0;
    double y = 0.0;
    double d = 0.0;
    do {
      x = (2.0 * unit(rng) - 1.0) * radius;
      y = (2.0 * unit(rng) - 1.0) * half_height;
      d = std::hypot(x, y);
    } while (!inside_hexagon(x, y, radius) || d < config.min_distance_m);

    inst.weights[k] = std::max(unit(rng), kMinWeight);
    const double large_scale_db = path_loss_db(config, d) + config.shadowing_std_db * standard_normal(rng);
    const double large_scale = std::pow(10.0, -large_scale_db / 10.0);
    for (int n = 0; n < carriers; ++n) {
      double h2 = 0.0;
      while (h2 <= 0.0) h2 = fading(rng);
      inst.gain(k, n) = large_scale * h2;
      inst.noise(k, n) = noise_w;
    }
  }
  inst.validate();
  return inst;
}

} // namespace noma
