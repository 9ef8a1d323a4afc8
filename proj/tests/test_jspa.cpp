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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "noma/errors.hpp"
#include "noma/jspa.hpp"
#include "noma/knapsack.hpp"
#include "test_support.hpp"

namespace noma {
namespace {

using testing::Rng;
using testing::relative_gap;
using testing::synthetic_instance;
using testing::uniform;
using testing::uniform_int;

Instance small_instance(Rng& rng) {
  return synthetic_instance(rng, uniform_int(rng, 1, 4), uniform_int(rng, 1, 3),
                            1 + uniform_int(rng, 0, 1), 20);
}

Instance fix_m(Instance inst) {
  inst.max_multiplexed = std::min(inst.max_multiplexed, inst.num_users);
  return inst;
}

void expect_consistent(const JspaContext& ctx, const JspaSolution& sol) {
  const Instance& inst = ctx.instance();
  double used = 0.0;
  for (int n = 0; n < inst.num_carriers; ++n) {
    EXPECT_GE(sol.budgets[n], 0.0);
    EXPECT_LE(sol.budgets[n], inst.p_max_carrier[n] + 1e-12);
    used += sol.budgets[n];
  }
  EXPECT_LE(used, inst.p_max + 1e-9);
  EXPECT_TRUE(is_feasible(inst, sol.x, 1e-9));
  EXPECT_LE(relative_gap(sol.wsr, wsr_separable(inst, ctx.order(), sol.x)), 1e-9);
  const PowerAllocation p = p_from_x(sol.x, ctx.order());
  EXPECT_LE(relative_gap(sol.wsr, wsr_direct(inst, ctx.order(), p)), 1e-9);
}

TEST(Projection, FeasiblePointUnchanged) {
  const std::vector<double> v{1.0, 2.0, 3.0};
  const std::vector<double> caps{10.0, 10.0, 10.0};
  EXPECT_EQ(project_budgets(v, 10.0, caps), v);
}

TEST(Projection, SymmetricOverflowSplitsEvenly) {
  const std::vector<double> v{6.0, 6.0};
  const std::vector<double> caps{10.0, 10.0};
  const auto x = project_budgets(v, 10.0, caps);
  EXPECT_NEAR(x[0], 5.0, 1e-12);
  EXPECT_NEAR(x[1], 5.0, 1e-12);
}

TEST(Projection, KktAndDistanceDominance) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int count = uniform_int(rng, 1, 6);
    std::vector<double> v(count);
    std::vector<double> caps(count);
    for (int n = 0; n < count; ++n) {
      v[n] = uniform(rng, -2.0, 6.0);
      caps[n] = uniform(rng, 0.5, 4.0);
    }
    const double total = uniform(rng, 0.5, 8.0);
    const auto x = project_budgets(v, total, caps);

    // Recover the multiplier from a free coordinate, if any.
    double sum = 0.0;
    double lambda = 0.0;
    for (int n = 0; n < count; ++n) {
      sum += x[n];
      if (x[n] > 1e-9 && x[n] < caps[n] - 1e-9) lambda = v[n] - x[n];
    }
    EXPECT_LE(sum, total + 1e-9);
    EXPECT_GE(lambda, -1e-9);
    EXPECT_LT(std::abs(lambda * (sum - total)), 1e-9);
    for (int n = 0; n < count; ++n) {
      EXPECT_NEAR(x[n], std::clamp(v[n] - lambda, 0.0, caps[n]), 1e-9);
    }

    double dist = 0.0;
    for (int n = 0; n < count; ++n) dist += (x[n] - v[n]) * (x[n] - v[n]);
    for (int s = 0; s < 10000; ++s) {
      std::vector<double> y(count);
      double ysum = 0.0;
      for (int n = 0; n < count; ++n) {
        y[n] = uniform(rng, 0.0, caps[n]);
        ysum += y[n];
      }
      if (ysum > total) {
        for (double& e : y) e *= total / ysum;
      }
      double d = 0.0;
      for (int n = 0; n < count; ++n) d += (y[n] - v[n]) * (y[n] - v[n]);
      ASSERT_GE(d, dist - 1e-9);
    }
  }
}

TEST(Knapsack, ProfitsStartAtZeroAndIncrease) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const JspaContext ctx(fix_m(small_instance(rng)));
    const KnapsackInstance k = build_knapsack(ctx);
    EXPECT_EQ(k.levels, 20);
    for (std::size_t n = 0; n < k.profit.size(); ++n) {
      EXPECT_EQ(k.profit[n][0], 0.0);
      for (std::size_t l = 1; l < k.profit[n].size(); ++l) {
        EXPECT_GE(k.profit[n][l], k.profit[n][l - 1] - 1e-12 * std::abs(k.profit[n][l]));
      }
    }
  }
}

TEST(Knapsack, ReferenceGridHasThousandLevels) {
  Rng rng(3);
  Instance inst = synthetic_instance(rng, 2, 2, 1, 10);
  inst.p_max = 10.0;
  inst.p_max_carrier = {10.0, 10.0};
  inst.power_step = 0.01;
  const KnapsackInstance k = build_knapsack(JspaContext(inst));
  EXPECT_EQ(k.levels, 1000);
  EXPECT_EQ(k.profit[0].size(), 1001u);
}

TEST(Knapsack, CarrierCapsLimitClasses) {
  Rng rng(4);
  Instance inst = synthetic_instance(rng, 3, 2, 2, 20);
  inst.p_max_carrier = {0.25, 1.0};
  const JspaContext ctx(inst);
  EXPECT_EQ(build_knapsack(ctx).cap_level[0], 5);
  const JspaSolution opt = opt_jspa(ctx);
  EXPECT_LE(opt.budgets[0], 0.25 + 1e-12);
  EXPECT_DOUBLE_EQ(opt.wsr, brute_force_jspa(ctx).wsr);
  const JspaSolution eps = eps_jspa(ctx, 0.1);
  EXPECT_LE(eps.budgets[0], 0.25 + 1e-12);
  EXPECT_GE(eps.wsr, 0.9 * opt.wsr);
}

TEST(OptJspa, SingleCarrierTakesWholeBudget) {
  Rng rng(5);
  const JspaContext ctx(synthetic_instance(rng, 3, 1, 2, 20));
  const JspaSolution sol = opt_jspa(ctx);
  EXPECT_DOUBLE_EQ(sol.budgets[0], 1.0);
  EXPECT_DOUBLE_EQ(sol.wsr, ctx.carrier(0).value(1.0));
  EXPECT_DOUBLE_EQ(sol.wsr, brute_force_jspa(ctx).wsr);
}

TEST(OptJspa, MatchesBruteForce) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const JspaContext ctx(fix_m(small_instance(rng)));
    const JspaSolution opt = opt_jspa(ctx);
    const JspaSolution brute = brute_force_jspa(ctx);
    EXPECT_LE(relative_gap(opt.wsr, brute.wsr), 1e-9);
    expect_consistent(ctx, opt);
    expect_consistent(ctx, brute);
  }
}

TEST(OptJspa, ThreeUsersTwoCarriersAgainstPairEnumeration) {
  Rng rng(7);
  const JspaContext ctx(synthetic_instance(rng, 3, 2, 2, 20));
  double best = 0.0;
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; a + b <= 20; ++b) {
      const double budgets[2] = {a / 20.0, b / 20.0};
      best = std::max(best, ctx.objective(budgets));
    }
  }
  EXPECT_LE(relative_gap(opt_jspa(ctx).wsr, best), 1e-12);
}

TEST(OptJspa, SwappingIdenticalCarriersPreservesValue) {
  Rng rng(8);
  Instance inst = synthetic_instance(rng, 3, 2, 2, 20);
  Instance swapped = inst;
  for (int k = 0; k < 3; ++k) {
    swapped.gain(k, 0) = inst.gain(k, 1);
    swapped.gain(k, 1) = inst.gain(k, 0);
  }
  std::swap(swapped.bandwidth[0], swapped.bandwidth[1]);
  EXPECT_LE(relative_gap(brute_force_jspa(JspaContext(inst)).wsr,
                         brute_force_jspa(JspaContext(swapped)).wsr),
            1e-12);
}

TEST(BruteForce, SizeGuard) {
  Rng rng(9);
  Instance inst = synthetic_instance(rng, 2, 20, 1, 1000);
  EXPECT_THROW(brute_force_jspa(JspaContext(inst)), SizeGuardError);
}

TEST(UpperBound, SingleCarrierTwiceBestItem) {
  Rng rng(10);
  const JspaContext ctx(synthetic_instance(rng, 3, 1, 2, 20));
  EXPECT_DOUBLE_EQ(estimate_upper_bound(ctx), 2.0 * ctx.carrier(0).value(1.0));
}

TEST(UpperBound, SandwichesOptimum) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const JspaContext ctx(fix_m(small_instance(rng)));
    const double u = estimate_upper_bound(ctx);
    const double opt = opt_jspa(ctx).wsr;
    EXPECT_GE(u, opt * (1.0 - 1e-12));
    EXPECT_LE(u / 4.0, opt * (1.0 + 1e-12));
  }
}

TEST(UpperBound, VanishingGainsGiveVanishingValues) {
  Rng rng(12);
  Instance inst = synthetic_instance(rng, 2, 2, 1, 20);
  for (int k = 0; k < 2; ++k) {
    for (int n = 0; n < 2; ++n) inst.gain(k, n) = 1e-30;
  }
  const JspaContext ctx(inst);
  EXPECT_LT(estimate_upper_bound(ctx), 1e-20);
  EXPECT_LT(opt_jspa(ctx).wsr, 1e-20);
  EXPECT_LT(eps_jspa(ctx, 0.1).wsr, 1e-20);
  EXPECT_LT(grad_jspa(ctx, {}).wsr, 1e-20);
}

TEST(SelectLevels, MatchesFullScan) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const JspaContext ctx(fix_m(small_instance(rng)));
    const KnapsackInstance k = build_knapsack(ctx);
    const double u = estimate_upper_bound(ctx);
    const double eps = uniform(rng, 0.05, 0.5);
    const int classes = ctx.num_carriers();
    const double unit = eps * u / (4.0 * classes);
    const auto max_key = static_cast<std::int64_t>(std::floor(4.0 * classes / eps));
    for (int n = 0; n < classes; ++n) {
      std::vector<int> expected{0};
      for (std::int64_t q = 1; q <= max_key; ++q) {
        for (int l = 0; l <= k.cap_level[n]; ++l) {
          if (scaled_profit(k.profit[n][l], unit) >= q) {
            if (expected.back() != l) expected.push_back(l);
            break;
          }
        }
      }
      int evaluations = 0;
      EXPECT_EQ(select_levels(ctx, n, u, eps, &evaluations), expected);
      EXPECT_LE(evaluations, k.cap_level[n] + 1);
      EXPECT_LE(static_cast<std::int64_t>(expected.size()) - 1,
                std::min<std::int64_t>(static_cast<std::int64_t>(std::ceil(4.0 * classes / eps)),
                                       k.levels));
    }
  }
}

TEST(SelectLevels, CoarseUnitKeepsOneThreshold) {
  Rng rng(14);
  const JspaContext ctx(synthetic_instance(rng, 3, 1, 2, 20));
  const double top = ctx.carrier(0).value(1.0);
  // One threshold equal to the whole value: only the full budget reaches it.
  const auto levels = select_levels(ctx, 0, top * 4.0 / 0.999999, 0.999999);
  ASSERT_LE(levels.size(), 2u);
  EXPECT_EQ(levels.front(), 0);
}

TEST(SelectLevels, NonPositiveBoundSelectsNothing) {
  Rng rng(15);
  const JspaContext ctx(synthetic_instance(rng, 2, 2, 1, 20));
  EXPECT_TRUE(select_levels(ctx, 0, 0.0, 0.1).empty());
}

TEST(EpsJspa, FineEpsilonEqualsOptimum) {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const JspaContext ctx(synthetic_instance(rng, 3, 2, 2, 20));
    const double opt = opt_jspa(ctx).wsr;
    const double eps = eps_jspa(ctx, 0.01).wsr;
    EXPECT_GE(eps, (1.0 - 0.01) * opt);
  }
}

TEST(EpsJspa, GuaranteeOnRandomInstances) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const JspaContext ctx(fix_m(small_instance(rng)));
    const double opt = opt_jspa(ctx).wsr;
    for (double eps : {0.5, 0.2, 0.1, 0.05}) {
      const JspaSolution sol = eps_jspa(ctx, eps);
      EXPECT_GE(sol.wsr, (1.0 - eps) * opt * (1.0 - 1e-12));
      expect_consistent(ctx, sol);
    }
  }
}

TEST(EpsJspa, SingleCarrierPicksTopSelectedLevel) {
  Rng rng(18);
  const JspaContext ctx(synthetic_instance(rng, 4, 1, 2, 20));
  const double opt = opt_jspa(ctx).wsr;
  const double u = estimate_upper_bound(ctx);
  for (double eps : {0.9, 0.5, 0.1}) {
    const JspaSolution sol = eps_jspa(ctx, eps);
    const auto levels = select_levels(ctx, 0, u, eps);
    EXPECT_DOUBLE_EQ(sol.budgets[0], levels.back() * ctx.instance().power_step);
    EXPECT_GE(sol.wsr, (1.0 - eps) * opt);
  }
  EXPECT_THROW(eps_jspa(ctx, 0.0), ConstraintViolation);
}

TEST(GradJspa, SingleCarrierGetsWholeBudget) {
  Rng rng(19);
  const JspaContext ctx(synthetic_instance(rng, 3, 1, 2, 20));
  const JspaSolution sol = grad_jspa(ctx, {});
  EXPECT_NEAR(sol.budgets[0], 1.0, 1e-12);
  EXPECT_TRUE(sol.converged);
}

TEST(GradJspa, IdenticalCarriersShareEvenly) {
  Rng rng(20);
  Instance inst = synthetic_instance(rng, 1, 4, 1, 20);
  for (int n = 1; n < 4; ++n) {
    inst.gain(0, n) = inst.gain(0, 0);
    inst.bandwidth[n] = inst.bandwidth[0];
  }
  GradOptions options;
  options.tolerance = 1e-6;
  const JspaSolution sol = grad_jspa(JspaContext(inst), options);
  for (int n = 1; n < 4; ++n) EXPECT_NEAR(sol.budgets[n], sol.budgets[0], options.tolerance);
}

TEST(GradJspa, CloseToFineGridOptimum) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = synthetic_instance(rng, 2, 2, 2, 10000);
    const JspaContext ctx(inst);
    GradOptions options;
    options.tolerance = inst.power_step / 2.0;
    const double grad = grad_jspa(ctx, options).wsr;
    const double opt = opt_jspa(ctx).wsr;
    EXPECT_LE(relative_gap(grad, opt), 1e-3);
  }
}

TEST(GradJspa, MonotoneAscentAndFeasibility) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const JspaContext ctx(fix_m(small_instance(rng)));
    std::vector<double> trace;
    const JspaSolution sol = grad_jspa(ctx, {}, &trace);
    ASSERT_FALSE(trace.empty());
    EXPECT_EQ(trace.front(), 0.0);
    for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_GE(trace[i], trace[i - 1] - 1e-12);
    EXPECT_DOUBLE_EQ(trace.back(), sol.wsr);
    expect_consistent(ctx, sol);
  }
}

TEST(GradJspa, IterationCapReportsWarning) {
  Rng rng(23);
  const JspaContext ctx(synthetic_instance(rng, 4, 3, 2, 20));
  GradOptions options;
  options.max_iterations = 1;
  options.tolerance = 1e-15;
  const JspaSolution sol = grad_jspa(ctx, options);
  EXPECT_EQ(sol.iterations, 1);
  EXPECT_FALSE(sol.converged);
  expect_consistent(ctx, sol);
}

TEST(GradJspa, DominatedByOptimumAtMatchingGrid) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const JspaContext ctx(fix_m(small_instance(rng)));
    const Instance& inst = ctx.instance();
    GradOptions options;
    options.tolerance = inst.power_step / 2.0;
    const double grad = grad_jspa(ctx, options).wsr;
    const double opt = opt_jspa(ctx).wsr;
    // Rounding the continuous budgets down to the grid costs at most one
    // step times the steepest slope of each subcarrier.
    double slack = 0.0;
    for (int n = 0; n < inst.num_carriers; ++n) {
      double steepest = 0.0;
      for (int k = 0; k < inst.num_users; ++k) {
        steepest = std::max(steepest, inst.bandwidth[n] * inst.weights[k] /
                                          (inst.normalized_noise(k, n) * std::numbers::ln2));
      }
      slack += inst.power_step * steepest;
    }
    EXPECT_GE(opt, grad - slack - 1e-9 * opt);
  }
}

TEST(MultiplexingNesting, OptimumNonDecreasingInM) {
  Rng rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = synthetic_instance(rng, 4, 2, 1, 20);
    double prev = 0.0;
    for (int m = 1; m <= 3; ++m) {
      inst.max_multiplexed = m;
      const double v = opt_jspa(JspaContext(inst)).wsr;
      EXPECT_GE(v, prev * (1.0 - 1e-12));
      prev = v;
    }
  }
}

TEST(OperationCounts, GrowWithProblemSize) {
  if (!NOMA_COUNT_OPS) GTEST_SKIP() << "built without operation counting";
  Rng rng(26);
  const Instance base = synthetic_instance(rng, 3, 2, 1, 20);
  std::uint64_t prev = 0;
  for (int levels : {20, 40, 80}) {
    Instance inst = base;
    inst.power_step = inst.p_max / levels;
    const auto ops = opt_jspa(JspaContext(inst)).ops;
    EXPECT_GT(ops, prev);
    prev = ops;
  }
}

} // namespace
} // namespace noma
