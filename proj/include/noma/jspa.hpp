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


#ifndef NOMA_JSPA_HPP
#define NOMA_JSPA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noma/model.hpp"
#include "noma/single_carrier.hpp"

namespace noma {

/// An instance together with everything the joint allocators share: the
/// decoding order and one precomputed user-selection solver per subcarrier,
/// each built at the full budget P_max. Immutable after construction.
class JspaContext {
public:
  explicit JspaContext(Instance instance);

  const Instance& instance() const { return instance_; }
  const DecodingOrder& order() const { return order_; }
  const PrecomputedScus& carrier(int n) const { return carriers_[n]; }
  int num_carriers() const { return instance_.num_carriers; }

  /// Sum over subcarriers of F^n(budgets[n]).
  double objective(std::span<const double> budgets) const;

private:
  Instance instance_;
  DecodingOrder order_;
  std::vector<PrecomputedScus> carriers_;
};

/// Outcome of a joint allocator.
struct JspaSolution {
  std::vector<double> budgets;  // per-subcarrier power budget
  XAllocation x;                // cumulative powers, rows are decoding positions
  double wsr = 0.0;             // weighted sum-rate, bit/s
  std::string solver;
  std::uint64_t ops = 0;        // basic operations counted during the solve
  int iterations = 0;           // Grad-JSPA only
  bool converged = true;        // false when Grad-JSPA hit its iteration cap
};

/// Evaluates every subcarrier at `budgets` and assembles the solution.
JspaSolution make_solution(const JspaContext& ctx, std::vector<double> budgets,
                           std::string solver);

// ---------------------------------------------------------------------------
// Projected gradient ascent over budget vectors.

/// Euclidean projection onto {b : sum b <= total, 0 <= b[n] <= caps[n]},
/// by bisection on the multiplier of the sum constraint.
std::vector<double> project_budgets(std::span<const double> v, double total,
                                    std::span<const double> caps);

struct GradOptions {
  double tolerance = 1e-4;        // stop when an update moves less than this
  int max_iterations = 0;         // 0: 10 * ceil(log2(P_max / tolerance)) + 100
  int line_search_iterations = 40;
};

/// Starts from the zero budget vector and repeats: gradient of the left
/// derivatives, a step along the projected ray chosen by a halving scan of
/// [0, P_max / |gradient|] refined by golden-section search, projection. A
/// step that does not improve the objective ends the run. `trace` (optional) receives the objective after every iteration,
/// starting with the objective at zero.
JspaSolution grad_jspa(const JspaContext& ctx, const GradOptions& options,
                       std::vector<double>* trace = nullptr);

// ---------------------------------------------------------------------------
// Discretized budget split as a multiple-choice knapsack.

/// One class per subcarrier with items l = 0..cap_level[n]: weight l (units
/// of the power step) and profit F^n(l * step). Levels above a subcarrier's
/// own cap are not part of its class.
struct KnapsackInstance {
  std::vector<std::vector<double>> profit;  // [n][l], l = 0..cap_level[n]
  std::vector<int> cap_level;               // highest selectable level per class
  int levels = 0;                           // J, also the capacity in units
  double step = 0.0;                        // power per unit, W
};

KnapsackInstance build_knapsack(const JspaContext& ctx);

/// Optimal budget split on the discrete grid by DP over capacities.
JspaSolution opt_jspa(const JspaContext& ctx);

/// Exhaustive search over every discrete budget vector. Throws
/// SizeGuardError when (J + 1)^N exceeds 1e7.
JspaSolution brute_force_jspa(const JspaContext& ctx);

/// Coarse knapsack on 2N + 1 levels per class (multiples of floor(J/N)
/// steps, clamped to each class cap) with capacity 2 P_max, solved by the
/// factor-2 greedy. Returns twice the greedy value, which brackets the
/// discrete optimum F* as U >= F* >= U / 4.
double estimate_upper_bound(const JspaContext& ctx);

/// Scaled profit of a profit value for profit unit `unit`.
std::int64_t scaled_profit(double profit, double unit);

/// Levels of subcarrier `n` kept by the approximation scheme: for every
/// scaled-profit threshold q = 1..floor(4N / eps), the smallest level whose
/// scaled profit reaches q, with unit eps U / (4N). Level 0 is always
/// included. `evaluations` (optional) receives the number of F^n calls.
std::vector<int> select_levels(const JspaContext& ctx, int n, double upper_bound, double eps,
                               int* evaluations = nullptr);

/// (1 - eps)-approximation: estimate U, keep the selected levels, run the DP
/// by profits and report the true objective of the recovered split.
JspaSolution eps_jspa(const JspaContext& ctx, double eps);

} // namespace noma

#endif
