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


#include "noma/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "noma/errors.hpp"
#include "noma/op_counter.hpp"

namespace noma {

namespace {

// Guards floor(p / delta) against p = J * delta landing a hair below J.
constexpr double kLevelSlack = 1e-9;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstraintViolation(what);
}

} // namespace

std::vector<double> CarrierGrid::column(int n) const {
  std::vector<double> out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, n);
  return out;
}

void CarrierGrid::set_column(int n, std::span<const double> values) {
  for (int r = 0; r < rows_; ++r) (*this)(r, n) = values[r];
}

int Instance::levels() const {
  return static_cast<int>(std::floor(p_max / power_step + kLevelSlack));
}

int Instance::carrier_level_cap(int n) const {
  const int own = static_cast<int>(std::floor(p_max_carrier[n] / power_step + kLevelSlack));
  return std::min(own, levels());
}

void Instance::validate() const {
  require(num_users >= 1, "instance needs at least one user");
  require(num_carriers >= 1, "instance needs at least one subcarrier");
  require(max_multiplexed >= 1 && max_multiplexed <= num_users, "M must lie in [1, K]");
  require(static_cast<int>(weights.size()) == num_users, "weights must have K entries");
  require(static_cast<int>(bandwidth.size()) == num_carriers, "bandwidth must have N entries");
  require(gain.rows() == num_users && gain.carriers() == num_carriers, "gain must be K x N");
  require(noise.rows() == num_users && noise.carriers() == num_carriers, "noise must be K x N");
  require(static_cast<int>(p_max_carrier.size()) == num_carriers,
          "per-subcarrier budgets must have N entries");
  for (double w : weights) require(w > 0.0, "weights must be positive");
  for (double b : bandwidth) require(b > 0.0, "bandwidths must be positive");
  for (int k = 0; k < num_users; ++k) {
    for (int n = 0; n < num_carriers; ++n) {
      require(gain(k, n) > 0.0, "channel gains must be positive");
      require(noise(k, n) > 0.0, "noise powers must be positive");
    }
  }
  require(p_max > 0.0, "P_max must be positive");
  require(power_step > 0.0 && power_step <= p_max, "power step must lie in (0, P_max]");
  for (double cap : p_max_carrier) {
    require(cap > 0.0 && cap <= p_max, "per-subcarrier budgets must lie in (0, P_max]");
  }
}

DecodingOrder::DecodingOrder(const Instance& instance) {
  const int users = instance.num_users;
  perm_.resize(instance.num_carriers);
  inverse_.resize(instance.num_carriers);
  for (int n = 0; n < instance.num_carriers; ++n) {
    auto& perm = perm_[n];
    perm.resize(users);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
      return instance.normalized_noise(a, n) > instance.normalized_noise(b, n);
    });
    auto& inv = inverse_[n];
    inv.resize(users);
    for (int i = 0; i < users; ++i) inv[perm[i]] = i;
  }
}

Carrier Carrier::from(const Instance& instance, const DecodingOrder& order, int n) {
  Carrier c;
  c.bandwidth = instance.bandwidth[n];
  c.weight.resize(instance.num_users);
  c.noise.resize(instance.num_users);
  for (int i = 0; i < instance.num_users; ++i) {
    const int k = order.user_at(n, i);
    c.weight[i] = instance.weights[k];
    c.noise[i] = instance.normalized_noise(k, n);
  }
  return c;
}

XAllocation x_from_p(const PowerAllocation& power, const DecodingOrder& order) {
  const int users = power.p.rows();
  const int carriers = power.p.carriers();
  XAllocation out{CarrierGrid(users, carriers)};
  for (int n = 0; n < carriers; ++n) {
    double acc = 0.0;
    for (int i = users - 1; i >= 0; --i) {
      acc += power.p(order.user_at(n, i), n);
      out.x(i, n) = acc;
    }
  }
  return out;
}

PowerAllocation p_from_x(const XAllocation& x, const DecodingOrder& order) {
  const int users = x.x.rows();
  const int carriers = x.x.carriers();
  PowerAllocation out{CarrierGrid(users, carriers)};
  for (int n = 0; n < carriers; ++n) {
    for (int i = 0; i < users; ++i) {
      const double next = i + 1 < users ? x.x(i + 1, n) : 0.0;
      if (x.x(i, n) < next) {
        throw ConstraintViolation("cumulative powers must be non-increasing and non-negative "
                                  "(subcarrier " + std::to_string(n) + ", position " +
                                  std::to_string(i) + ")");
      }
      out.p(order.user_at(n, i), n) = x.x(i, n) - next;
    }
  }
  return out;
}

double rate(const Instance& instance, const DecodingOrder& order, const PowerAllocation& power,
            int k, int n) {
  const double own = power.p(k, n);
  if (own <= 0.0) return 0.0;
  double interference = 0.0;
  for (int j = order.position_of(n, k) + 1; j < instance.num_users; ++j) {
    interference += power.p(order.user_at(n, j), n);
  }
  return instance.bandwidth[n] *
         std::log2(1.0 + own / (interference + instance.normalized_noise(k, n)));
}

double wsr_direct(const Instance& instance, const DecodingOrder& order,
                  const PowerAllocation& power) {
  double total = 0.0;
  for (int k = 0; k < instance.num_users; ++k) {
    double user = 0.0;
    for (int n = 0; n < instance.num_carriers; ++n) user += rate(instance, order, power, k, n);
    total += instance.weights[k] * user;
  }
  return total;
}

double wsr_separable(const Instance& instance, const DecodingOrder& order, const XAllocation& x) {
  double total = 0.0;
  for (int n = 0; n < instance.num_carriers; ++n) {
    const Carrier carrier = Carrier::from(instance, order, n);
    total += column_value(carrier, x.x.column(n));
  }
  return total;
}

bool is_feasible(const Instance& instance, const XAllocation& x, double tol) {
  double used = 0.0;
  for (int n = 0; n < instance.num_carriers; ++n) {
    int active = 0;
    for (int i = 0; i < instance.num_users; ++i) {
      const double next = i + 1 < instance.num_users ? x.x(i + 1, n) : 0.0;
      if (x.x(i, n) < next) return false;
      if (x.x(i, n) > next) ++active;
    }
    if (active > instance.max_multiplexed) return false;
    if (x.x(0, n) > instance.p_max_carrier[n] + tol) return false;
    used += x.x(0, n);
  }
  return used <= instance.p_max + tol;
}

double f_eval(const Carrier& carrier, int first, int last, double x) {
  const double head = carrier.weight[last] * std::log2(x + carrier.noise[last]);
  if (first == 0) {
    count_ops(3);
    return carrier.bandwidth * head;
  }
  count_ops(6);
  const double tail = carrier.weight[first - 1] * std::log2(x + carrier.noise[first - 1]);
  return carrier.bandwidth * (head - tail);
}

double argmax_f(const Carrier& carrier, int first, int last, double budget) {
  count_ops(1);
  if (first == 0) return budget;
  const double wa = carrier.weight[last];
  const double wb = carrier.weight[first - 1];
  if (wa >= wb) return budget;
  count_ops(6);
  const double na = carrier.noise[last];
  const double nb = carrier.noise[first - 1];
  const double stationary = (wb * na - wa * nb) / (wa - wb);
  return std::max(0.0, std::min(stationary, budget));
}

double constant_offset(const Carrier& carrier) {
  const int last = carrier.size() - 1;
  return -(carrier.bandwidth * (carrier.weight[last] * std::log2(carrier.noise[last])));
}

double column_value(const Carrier& carrier, std::span<const double> x) {
  const int users = carrier.size();
  double total = constant_offset(carrier);
  int first = 0;
  while (first < users) {
    int last = first;
    while (last + 1 < users && x[last + 1] == x[first]) ++last;
    total += f_eval(carrier, first, last, x[first]);
    first = last + 1;
  }
  return total;
}

} // namespace noma
