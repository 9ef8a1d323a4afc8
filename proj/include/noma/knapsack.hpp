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


#ifndef NOMA_KNAPSACK_HPP
#define NOMA_KNAPSACK_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace noma {

/// Multiple-choice knapsack item. Weights are integer capacity units.
struct MckpItem {
  int weight = 0;
  double profit = 0.0;
};

using MckpClass = std::vector<MckpItem>;

/// At most one item per class; `choice[n] == -1` means class n is empty.
struct MckpSelection {
  std::vector<int> choice;
  double profit = 0.0;
  int weight = 0;
};

/// Exact solution by dynamic programming over capacities:
/// best[n][c] = max(best[n-1][c], max over items of best[n-1][c - w] + p).
/// Items heavier than `capacity` are ignored.
MckpSelection mckp_by_weights(std::span<const MckpClass> classes, int capacity);

/// Greedy estimate with a factor-2 guarantee: fill the per-class upper
/// convex hulls by decreasing incremental efficiency until the first
/// increment that does not fit, then return the better of that integral
/// fill and the most profitable single item that fits.
double mckp_greedy_half(std::span<const MckpClass> classes, int capacity);

/// Item carrying an integer scaled profit for the DP by profits.
struct ScaledItem {
  int weight = 0;
  int scaled = 0;
  double profit = 0.0;
};

/// DP by profits: least[n][q] is the minimum weight reaching scaled profit
/// exactly q with the first n classes, for q in [0, max_scaled]. Returns
/// the selection with the largest reachable q whose weight fits
/// `capacity`; transitions above `max_scaled` are dropped. Every class must
/// contain a zero-weight zero-profit item or be allowed to stay empty; an
/// empty choice is always available.
MckpSelection mckp_by_profits(std::span<const std::vector<ScaledItem>> classes, int capacity,
                              int max_scaled);

/// For every key q = 1..max_key, the smallest level l in [0, max_level] with
/// key_of(l) >= q, where key_of is non-decreasing in l. Each key is located
/// by binary search over the range left after the previous key; levels are
/// memoized so no level is evaluated twice. Returns the distinct levels
/// found in increasing order; `evaluations` (optional) receives the number
/// of key_of calls.
std::vector<int> multi_key_search(const std::function<std::int64_t(int)>& key_of, int max_level,
                                  std::int64_t max_key, int* evaluations = nullptr);

} // namespace noma

#endif
