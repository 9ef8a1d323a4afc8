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


#include "noma/single_carrier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "noma/errors.hpp"
#include "noma/op_counter.hpp"

namespace noma {

namespace {

// Budgets a few ulps above the precomputed one are rounding noise.
constexpr double kBudgetSlack = 1e-12;

int block_start(std::span<const int> active, int t) { return t == 0 ? 0 : active[t - 1] + 1; }

} // namespace

void validate_active_set(std::span<const int> active, int users, int max_active) {
  if (static_cast<int>(active.size()) > max_active) {
    throw ConstraintViolation("active set holds more than M users");
  }
  for (std::size_t t = 0; t < active.size(); ++t) {
    if (active[t] < 0 || active[t] >= users) {
      throw ConstraintViolation("active position out of range");
    }
    if (t > 0 && active[t] <= active[t - 1]) {
      throw ConstraintViolation("active positions must be strictly increasing");
    }
  }
}

ActiveSet active_positions(std::span<const double> x) {
  ActiveSet out;
  const int users = static_cast<int>(x.size());
  for (int i = 0; i < users; ++i) {
    const double next = i + 1 < users ? x[i + 1] : 0.0;
    if (x[i] > next) out.push_back(i);
  }
  return out;
}

std::vector<double> expand_active(std::span<const int> active, std::span<const double> values,
                                  int users) {
  std::vector<double> x(static_cast<std::size_t>(users), 0.0);
  for (std::size_t t = 0; t < active.size(); ++t) {
    for (int l = block_start(active, static_cast<int>(t)); l <= active[t]; ++l) x[l] = values[t];
  }
  return x;
}

std::vector<double> scpc(const Carrier& carrier, std::span<const int> active, double budget) {
  const int count = static_cast<int>(active.size());
  std::vector<double> x(static_cast<std::size_t>(count), 0.0);
  for (int t = 0; t < count; ++t) {
    double best = argmax_f(carrier, block_start(active, t), active[t], budget);
    int j = t - 1;
    // Merge backwards while the new block would rise above its predecessor.
    while (j >= 0 && x[j] < best) {
      count_ops(1);
      best = argmax_f(carrier, block_start(active, j), active[t], budget);
      --j;
    }
    count_ops(1);
    for (int q = j + 1; q <= t; ++q) {
      count_ops(1);
      x[q] = best;
    }
  }
  return x;
}

PrecomputedScpc::PrecomputedScpc(const Carrier& carrier, ActiveSet active, double p_max)
    : active_(std::move(active)), p_max_(p_max), ready_(true) {
  validate_active_set(active_, carrier.size(), carrier.size());
  stored_ = scpc(carrier, active_, p_max_);
}

std::vector<double> PrecomputedScpc::eval(double budget) const {
  if (!ready_) throw UsageError("PrecomputedScpc::eval called before precomputation");
  if (budget < 0.0 || budget > p_max_ * (1.0 + kBudgetSlack)) {
    throw ConstraintViolation("budget outside [0, precomputed budget]");
  }
  std::vector<double> out(stored_.size());
  for (std::size_t t = 0; t < stored_.size(); ++t) {
    count_ops(1);
    out[t] = std::min(stored_[t], budget);
  }
  return out;
}

ScusTables::ScusTables(int max_active, int users, double budget)
    : max_active_(max_active), users_(users), budget_(budget) {
  const std::size_t cells = static_cast<std::size_t>(max_active + 1) *
                            static_cast<std::size_t>(users) * static_cast<std::size_t>(users);
  value_.assign(cells, 0.0);
  power_.assign(cells, 0.0);
  link_.assign(cells, ScusLink{});
}

std::vector<double> ScusTables::backtrack(int m, int j, int i) const {
  std::vector<double> x(static_cast<std::size_t>(users_), 0.0);
  ScusLink at{m, j, i};
  while (!at.terminal()) {
    const double p = power(at.m, at.j, at.i);
    for (int l = at.j; l <= at.i; ++l) x[l] = p;
    at = link(at.m, at.j, at.i);
  }
  return x;
}

void ScusTables::dump_csv(std::ostream& out) const {
  out << "m,j,i,value,power,link_m,link_j,link_i\n";
  for (int m = 0; m <= max_active_; ++m) {
    for (int j = 0; j < users_; ++j) {
      for (int i = j; i < users_; ++i) {
        const ScusLink& l = link(m, j, i);
        out << m << ',' << j << ',' << i << ',' << value(m, j, i) << ',' << power(m, j, i) << ','
            << l.m << ',' << l.j << ',' << l.i << '\n';
      }
    }
  }
}

ScusTables build_scus_tables(const Carrier& carrier, int max_active, double budget) {
  const int users = carrier.size();
  if (max_active < 1) throw ConstraintViolation("M must be at least 1");
  const int top = std::min(max_active, users);
  ScusTables t(top, users, budget);
  const int last = users - 1;

  // No active user: every position from j on carries zero power.
  for (int j = 0; j < users; ++j) {
    const double idle = f_eval(carrier, j, last, 0.0);
    for (int i = j; i < users; ++i) {
      count_ops(1);
      t.value(0, j, i) = idle;
      t.power(0, j, i) = 0.0;
      t.link(0, j, i) = ScusLink{};
    }
  }

  // Blocks reaching the last position have nothing after them.
  for (int m = 1; m <= top; ++m) {
    for (int j = last; j >= 0; --j) {
      const double x = argmax_f(carrier, j, last, budget);
      t.value(m, j, last) = f_eval(carrier, j, last, x);
      t.power(m, j, last) = x;
      t.link(m, j, last) = ScusLink{};
    }
  }

  for (int i = last - 1; i >= 0; --i) {
    for (int m = 1; m <= top; ++m) {
      const double next_value = t.value(m - 1, i + 1, i + 1);
      const double next_power = t.power(m - 1, i + 1, i + 1);
      for (int j = i; j >= 0; --j) {
        const double x = argmax_f(carrier, j, i, budget);
        const double v_act = f_eval(carrier, j, i, x) + next_value;
        const double v_inact = t.value(m, j, i + 1);
        count_ops(3);
        if (v_act > v_inact && x > next_power) {
          t.value(m, j, i) = v_act;
          t.power(m, j, i) = x;
          t.link(m, j, i) = ScusLink{m - 1, i + 1, i + 1};
        } else {
          t.value(m, j, i) = v_inact;
          t.power(m, j, i) = t.power(m, j, i + 1);
          t.link(m, j, i) = ScusLink{m, j, i + 1};
        }
      }
    }
  }
  return t;
}

std::vector<double> scus(const Carrier& carrier, int max_active, double budget) {
  const ScusTables t = build_scus_tables(carrier, max_active, budget);
  return t.backtrack(t.max_active(), 0, 0);
}

PrecomputedScus::PrecomputedScus(Carrier carrier, int max_active, double p_max)
    : carrier_(std::move(carrier)), p_max_(p_max), ready_(true) {
  tables_ = build_scus_tables(carrier_, max_active, p_max_);
  const int users = carrier_.size();
  const double offset = constant_offset(carrier_);
  collection_.reserve(users);
  for (int i = 0; i < users; ++i) {
    CollectionEntry e;
    e.x = tables_.backtrack(tables_.max_active(), 0, i);
    e.active = active_positions(e.x);
    int first = 0;
    while (first < users && e.x[first] > 0.0) {
      int end = first;
      while (end + 1 < users && e.x[end + 1] == e.x[first]) ++end;
      e.runs.push_back({first, end, e.x[first]});
      first = end + 1;
    }
    e.tail = offset + (first < users ? f_eval(carrier_, first, users - 1, 0.0) : 0.0);
    collection_.push_back(std::move(e));
  }
}

void PrecomputedScus::require_ready() const {
  if (!ready_) throw UsageError("PrecomputedScus used before precomputation");
}

double PrecomputedScus::checked_budget(double budget) const {
  require_ready();
  if (budget < 0.0 || budget > p_max_ * (1.0 + kBudgetSlack)) {
    throw ConstraintViolation("budget " + std::to_string(budget) +
                              " outside [0, precomputed budget]");
  }
  return std::min(budget, p_max_);
}

double PrecomputedScus::entry_value(const CollectionEntry& entry, double budget) const {
  double total = entry.tail;
  for (const auto& run : entry.runs) {
    count_ops(2);
    total += f_eval(carrier_, run.first, run.last, std::min(run.power, budget));
  }
  return total;
}

CarrierEval PrecomputedScus::eval(double budget) const {
  budget = checked_budget(budget);
  CarrierEval out;
  const int users = carrier_.size();
  if (budget <= 0.0) {
    out.x.assign(static_cast<std::size_t>(users), 0.0);
    out.value = 0.0;
    out.entry = 0;
    return out;
  }
  double best = 0.0;
  int best_entry = -1;
  for (int e = 0; e < static_cast<int>(collection_.size()); ++e) {
    const double v = entry_value(collection_[e], budget);
    count_ops(1);
    if (best_entry < 0 || v > best) {
      best = v;
      best_entry = e;
    }
  }
  out.entry = best_entry;
  out.value = best;
  out.x = collection_[best_entry].x;
  for (double& v : out.x) v = std::min(v, budget);
  return out;
}

double PrecomputedScus::value(double budget) const { return eval(budget).value; }

double PrecomputedScus::left_derivative(double budget) const {
  budget = checked_budget(budget);
  const double scale = carrier_.bandwidth / std::numbers::ln2;
  if (budget <= 0.0) {
    double best = 0.0;
    for (const auto& e : collection_) {
      if (e.runs.empty()) continue;
      const int l = e.runs.back().last;
      best = std::max(best, scale * carrier_.weight[l] / carrier_.noise[l]);
    }
    return best;
  }
  const CollectionEntry& e = collection_[eval(budget).entry];
  int l = 0;
  for (const auto& run : e.runs) {
    if (run.power >= budget) l = run.last;
  }
  return scale * carrier_.weight[l] / (budget + carrier_.noise[l]);
}

} // namespace noma
