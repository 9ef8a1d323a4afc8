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


#include "noma/jspa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "noma/errors.hpp"
#include "noma/knapsack.hpp"
#include "noma/op_counter.hpp"

namespace noma {

namespace {

constexpr int kProjectionSteps = 100;
constexpr double kBruteForceLimit = 1e7;
constexpr int kBracketHalvings = 30;

std::vector<double> carrier_caps(const Instance& inst) { return inst.p_max_carrier; }

double level_budget(const Instance& inst, int n, int level) {
  return std::min(static_cast<double>(level) * inst.power_step, inst.p_max_carrier[n]);
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

JspaSolution from_levels(const JspaContext& ctx, std::span<const int> levels, std::string solver) {
  const Instance& inst = ctx.instance();
  std::vector<double> budgets(static_cast<std::size_t>(inst.num_carriers), 0.0);
  for (int n = 0; n < inst.num_carriers; ++n) budgets[n] = level_budget(inst, n, levels[n]);
  return make_solution(ctx, std::move(budgets), std::move(solver));
}

struct LevelItem {
  int level;
  double profit;
  std::int64_t scaled;
};

// Selected levels of one class with their true and scaled profits.
std::vector<LevelItem> selected_items(const JspaContext& ctx, int n, double upper_bound, double eps,
                                      int* evaluations) {
  if (!(eps > 0.0)) throw ConstraintViolation("eps must be positive");
  std::vector<LevelItem> items;
  if (evaluations) *evaluations = 0;
  if (!(upper_bound > 0.0)) return items;

  const Instance& inst = ctx.instance();
  const int classes = inst.num_carriers;
  const double unit = eps * upper_bound / (4.0 * classes);
  const auto max_key = static_cast<std::int64_t>(std::floor(4.0 * classes / eps));
  std::vector<std::pair<int, double>> seen;
  auto key_of = [&](int l) {
    const double c = ctx.carrier(n).value(level_budget(inst, n, l));
    seen.emplace_back(l, c);
    return scaled_profit(c, unit);
  };
  const std::vector<int> levels =
      multi_key_search(key_of, inst.carrier_level_cap(n), max_key, evaluations);

  items.push_back({0, 0.0, 0});
  for (int l : levels) {
    if (l == 0) continue;
    const auto it = std::find_if(seen.begin(), seen.end(), [l](const auto& s) { return s.first == l; });
    items.push_back({l, it->second, scaled_profit(it->second, unit)});
  }
  return items;
}

} // namespace

JspaContext::JspaContext(Instance instance) : instance_(std::move(instance)) {
  instance_.validate();
  order_ = DecodingOrder(instance_);
  carriers_.reserve(instance_.num_carriers);
  for (int n = 0; n < instance_.num_carriers; ++n) {
    carriers_.emplace_back(Carrier::from(instance_, order_, n), instance_.max_multiplexed,
                           instance_.p_max);
  }
}

double JspaContext::objective(std::span<const double> budgets) const {
  double total = 0.0;
  for (int n = 0; n < num_carriers(); ++n) total += carriers_[n].value(budgets[n]);
  return total;
}

JspaSolution make_solution(const JspaContext& ctx, std::vector<double> budgets,
                           std::string solver) {
  const Instance& inst = ctx.instance();
  JspaSolution sol;
  sol.x.x = CarrierGrid(inst.num_users, inst.num_carriers);
  for (int n = 0; n < inst.num_carriers; ++n) {
    const CarrierEval e = ctx.carrier(n).eval(budgets[n]);
    sol.x.x.set_column(n, e.x);
    sol.wsr += e.value;
  }
  sol.budgets = std::move(budgets);
  sol.solver = std::move(solver);
  return sol;
}

std::vector<double> project_budgets(std::span<const double> v, double total,
                                    std::span<const double> caps) {
  const std::size_t count = v.size();
  std::vector<double> out(count);
  auto fill = [&](double lambda) {
    double sum = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
      count_ops(3);
      out[n] = std::clamp(v[n] - lambda, 0.0, caps[n]);
      sum += out[n];
    }
    return sum;
  };
  if (fill(0.0) <= total) return out;

  double lo = 0.0;
  double hi = *std::max_element(v.begin(), v.end());
  for (int step = 0; step < kProjectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (fill(mid) > total) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  fill(hi);
  return out;
}

JspaSolution grad_jspa(const JspaContext& ctx, const GradOptions& options,
                       std::vector<double>* trace) {
  if (!(options.tolerance > 0.0)) throw ConstraintViolation("tolerance must be positive");
  OpCounter counter;
  OpCountScope scope(counter);

  const Instance& inst = ctx.instance();
  const int count = inst.num_carriers;
  const std::vector<double> caps = carrier_caps(inst);
  int cap = options.max_iterations;
  if (cap <= 0) {
    const double ratio = std::max(inst.p_max / options.tolerance, 2.0);
    cap = 10 * static_cast<int>(std::ceil(std::log2(ratio))) + 100;
  }

  std::vector<double> budgets(static_cast<std::size_t>(count), 0.0);
  double current = ctx.objective(budgets);
  if (trace) trace->assign(1, current);

  std::vector<double> delta(static_cast<std::size_t>(count));
  std::vector<double> moved(static_cast<std::size_t>(count));
  auto point = [&](double alpha) {
    for (int n = 0; n < count; ++n) moved[n] = budgets[n] + alpha * delta[n];
    return project_budgets(moved, inst.p_max, caps);
  };

  bool converged = false;
  int iterations = 0;
  constexpr double kInvPhi = 0.6180339887498949;
  while (iterations < cap) {
    ++iterations;
    for (int n = 0; n < count; ++n) delta[n] = ctx.carrier(n).left_derivative(budgets[n]);
    const double length = norm(delta);
    if (!(length > 0.0)) {
      converged = true;
      break;
    }

    std::vector<double> best_point = budgets;
    double best_value = current;
    auto probe = [&](double alpha) {
      std::vector<double> p = point(alpha);
      const double v = ctx.objective(p);
      if (v > best_value) {
        best_value = v;
        best_point = std::move(p);
      }
      return v;
    };

    // Bracket the step on a halving scale first: along the projected ray
    // the objective can dip where a budget reaches zero and rise again.
    const double top = inst.p_max / length;
    double bracket = 0.0;
    double bracket_value = current;
    for (int k = 0; k < kBracketHalvings; ++k) {
      const double alpha = std::ldexp(top, -k);
      const double v = probe(alpha);
      if (v > bracket_value) {
        bracket_value = v;
        bracket = alpha;
      }
    }
    if (bracket > 0.0) {
      double a = 0.5 * bracket;
      double b = std::min(2.0 * bracket, top);
      double c = b - kInvPhi * (b - a);
      double d = a + kInvPhi * (b - a);
      double fc = probe(c);
      double fd = probe(d);
      for (int it = 0; it < options.line_search_iterations; ++it) {
        if (fc >= fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - kInvPhi * (b - a);
          fc = probe(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + kInvPhi * (b - a);
          fd = probe(d);
        }
      }
    }

    if (!(best_value > current)) {
      converged = true;
      break;
    }
    double step = 0.0;
    for (int n = 0; n < count; ++n) step += (best_point[n] - budgets[n]) * (best_point[n] - budgets[n]);
    budgets = std::move(best_point);
    current = best_value;
    if (trace) trace->push_back(current);
    if (std::sqrt(step) <= options.tolerance) {
      converged = true;
      break;
    }
  }

  JspaSolution sol = make_solution(ctx, std::move(budgets), "grad");
  sol.iterations = iterations;
  sol.converged = converged;
  sol.ops = counter.total();
  return sol;
}

KnapsackInstance build_knapsack(const JspaContext& ctx) {
  const Instance& inst = ctx.instance();
  KnapsackInstance k;
  k.levels = inst.levels();
  k.step = inst.power_step;
  k.profit.resize(inst.num_carriers);
  k.cap_level.resize(inst.num_carriers);
  for (int n = 0; n < inst.num_carriers; ++n) {
    const int top = inst.carrier_level_cap(n);
    k.cap_level[n] = top;
    auto& row = k.profit[n];
    row.resize(static_cast<std::size_t>(top) + 1);
    for (int l = 0; l <= top; ++l) row[l] = ctx.carrier(n).value(level_budget(inst, n, l));
  }
  return k;
}

JspaSolution opt_jspa(const JspaContext& ctx) {
  OpCounter counter;
  OpCountScope scope(counter);
  const KnapsackInstance k = build_knapsack(ctx);

  std::vector<MckpClass> classes(k.profit.size());
  for (std::size_t n = 0; n < classes.size(); ++n) {
    for (int l = 0; l <= k.cap_level[n]; ++l) classes[n].push_back({l, k.profit[n][l]});
  }
  const MckpSelection sel = mckp_by_weights(classes, k.levels);
  std::vector<int> levels(classes.size(), 0);
  for (std::size_t n = 0; n < classes.size(); ++n) {
    if (sel.choice[n] >= 0) levels[n] = classes[n][sel.choice[n]].weight;
  }
  JspaSolution sol = from_levels(ctx, levels, "opt");
  sol.ops = counter.total();
  return sol;
}

JspaSolution brute_force_jspa(const JspaContext& ctx) {
  const Instance& inst = ctx.instance();
  const int count = inst.num_carriers;
  const int capacity = inst.levels();
  if (std::pow(static_cast<double>(capacity) + 1.0, count) > kBruteForceLimit) {
    throw SizeGuardError("brute force over (J + 1)^N budget vectors exceeds 1e7");
  }
  OpCounter counter;
  OpCountScope scope(counter);
  const KnapsackInstance k = build_knapsack(ctx);

  std::vector<int> levels(static_cast<std::size_t>(count), 0);
  std::vector<int> best_levels = levels;
  double best = -std::numeric_limits<double>::infinity();
  int used = 0;
  while (true) {
    count_ops(2);
    double value = 0.0;
    for (int n = 0; n < count; ++n) value += k.profit[n][levels[n]];
    if (value > best) {
      best = value;
      best_levels = levels;
    }
    // Odometer over levels with the budget and per-class caps enforced.
    int n = 0;
    while (n < count) {
      if (levels[n] < k.cap_level[n] && used < capacity) {
        ++levels[n];
        ++used;
        break;
      }
      used -= levels[n];
      levels[n] = 0;
      ++n;
    }
    if (n == count) break;
  }
  JspaSolution sol = from_levels(ctx, best_levels, "brute");
  sol.ops = counter.total();
  return sol;
}

double estimate_upper_bound(const JspaContext& ctx) {
  const Instance& inst = ctx.instance();
  const int count = inst.num_carriers;
  const int capacity = inst.levels();
  const int stride = std::max(1, capacity / count);

  std::vector<MckpClass> classes(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const int top = inst.carrier_level_cap(n);
    for (int l = 0; l <= 2 * count; ++l) {
      const int level = std::min(l * stride, top);
      classes[n].push_back({level, ctx.carrier(n).value(level_budget(inst, n, level))});
    }
  }
  return 2.0 * mckp_greedy_half(classes, 2 * capacity);
}

std::int64_t scaled_profit(double profit, double unit) {
  if (!(unit > 0.0) || !(profit > 0.0)) return 0;
  return static_cast<std::int64_t>(std::floor(profit / unit));
}

std::vector<int> select_levels(const JspaContext& ctx, int n, double upper_bound, double eps,
                               int* evaluations) {
  std::vector<int> out;
  for (const LevelItem& it : selected_items(ctx, n, upper_bound, eps, evaluations)) {
    out.push_back(it.level);
  }
  return out;
}

JspaSolution eps_jspa(const JspaContext& ctx, double eps) {
  if (!(eps > 0.0)) throw ConstraintViolation("eps must be positive");
  OpCounter counter;
  OpCountScope scope(counter);
  const Instance& inst = ctx.instance();
  const int count = inst.num_carriers;
  std::vector<int> levels(static_cast<std::size_t>(count), 0);

  const double upper = estimate_upper_bound(ctx);
  if (upper > 0.0) {
    const int max_scaled = static_cast<int>(std::floor(4.0 * count / eps));
    std::vector<std::vector<ScaledItem>> classes(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
      for (const LevelItem& it : selected_items(ctx, n, upper, eps, nullptr)) {
        const auto scaled = static_cast<int>(std::min<std::int64_t>(it.scaled, max_scaled + 1));
        classes[n].push_back({it.level, scaled, it.profit});
      }
    }
    const MckpSelection sel = mckp_by_profits(classes, inst.levels(), max_scaled);
    for (int n = 0; n < count; ++n) {
      if (sel.choice[n] >= 0) levels[n] = classes[n][sel.choice[n]].weight;
    }
  }
  JspaSolution sol = from_levels(ctx, levels, "eps");
  sol.ops = counter.total();
  return sol;
}

} // namespace noma
