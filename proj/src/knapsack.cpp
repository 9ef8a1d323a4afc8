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


#include "noma/knapsack.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "noma/op_counter.hpp"

namespace noma {

MckpSelection mckp_by_weights(std::span<const MckpClass> classes, int capacity) {
  const int count = static_cast<int>(classes.size());
  const std::size_t width = static_cast<std::size_t>(capacity) + 1;
  std::vector<double> prev(width, 0.0);
  std::vector<double> cur(width, 0.0);
  std::vector<int> choice(static_cast<std::size_t>(count) * width, -1);

  for (int n = 0; n < count; ++n) {
    const MckpClass& items = classes[n];
    int* row = choice.data() + static_cast<std::size_t>(n) * width;
    for (int c = 0; c <= capacity; ++c) {
      double best = prev[c];
      int pick = -1;
      for (int it = 0; it < static_cast<int>(items.size()); ++it) {
        const int w = items[it].weight;
        if (w > c) continue;
        count_ops(2);
        const double v = prev[c - w] + items[it].profit;
        if (v > best) {
          best = v;
          pick = it;
        }
      }
      cur[c] = best;
      row[c] = pick;
    }
    std::swap(prev, cur);
  }

  MckpSelection sel;
  sel.choice.assign(count, -1);
  int c = capacity;
  for (int n = count - 1; n >= 0; --n) {
    const int pick = choice[static_cast<std::size_t>(n) * width + static_cast<std::size_t>(c)];
    sel.choice[n] = pick;
    if (pick >= 0) {
      const MckpItem& item = classes[n][pick];
      sel.profit += item.profit;
      sel.weight += item.weight;
      c -= item.weight;
    }
  }
  return sel;
}

double mckp_greedy_half(std::span<const MckpClass> classes, int capacity) {
  struct Increment {
    double efficiency;
    int weight;
    double profit;
    int cls;
    int step;
  };
  std::vector<Increment> increments;
  double best_single = 0.0;

  for (int n = 0; n < static_cast<int>(classes.size()); ++n) {
    std::vector<MckpItem> items;
    double base = 0.0;
    for (const MckpItem& it : classes[n]) {
      if (it.weight > capacity) continue;
      best_single = std::max(best_single, it.profit);
      if (it.weight == 0) {
        base = std::max(base, it.profit);
      } else {
        items.push_back(it);
      }
    }
    std::sort(items.begin(), items.end(), [](const MckpItem& a, const MckpItem& b) {
      return a.weight != b.weight ? a.weight < b.weight : a.profit > b.profit;
    });

    // Upper convex hull from (0, base), keeping only profit-improving items.
    std::vector<MckpItem> hull{{0, base}};
    for (const MckpItem& it : items) {
      if (it.profit <= hull.back().profit) continue;
      while (hull.size() >= 2) {
        const MckpItem& a = hull[hull.size() - 2];
        const MckpItem& b = hull.back();
        // Drop b when it lies on or below the segment a -> it.
        const double lhs = (b.profit - a.profit) * static_cast<double>(it.weight - a.weight);
        const double rhs = (it.profit - a.profit) * static_cast<double>(b.weight - a.weight);
        if (lhs <= rhs) {
          hull.pop_back();
        } else {
          break;
        }
      }
      hull.push_back(it);
    }
    for (std::size_t s = 1; s < hull.size(); ++s) {
      const int dw = hull[s].weight - hull[s - 1].weight;
      const double dp = hull[s].profit - hull[s - 1].profit;
      increments.push_back({dp / dw, dw, dp, n, static_cast<int>(s)});
    }
  }

  std::sort(increments.begin(), increments.end(), [](const Increment& a, const Increment& b) {
    if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.step < b.step;
  });

  double filled = 0.0;
  for (int n = 0; n < static_cast<int>(classes.size()); ++n) {
    double base = 0.0;
    for (const MckpItem& it : classes[n]) {
      if (it.weight == 0) base = std::max(base, it.profit);
    }
    filled += base;
  }
  int remaining = capacity;
  for (const Increment& inc : increments) {
    count_ops(2);
    if (inc.weight > remaining) break;
    remaining -= inc.weight;
    filled += inc.profit;
  }
  return std::max(filled, best_single);
}

MckpSelection mckp_by_profits(std::span<const std::vector<ScaledItem>> classes, int capacity,
                              int max_scaled) {
  constexpr int kUnreachable = std::numeric_limits<int>::max();
  const int count = static_cast<int>(classes.size());
  const std::size_t width = static_cast<std::size_t>(max_scaled) + 1;
  std::vector<int> prev(width, kUnreachable);
  std::vector<int> cur(width, kUnreachable);
  std::vector<int> choice(static_cast<std::size_t>(count) * width, -1);
  prev[0] = 0;

  for (int n = 0; n < count; ++n) {
    const auto& items = classes[n];
    int* row = choice.data() + static_cast<std::size_t>(n) * width;
    for (int q = 0; q <= max_scaled; ++q) {
      int best = prev[q];
      int pick = -1;
      for (int it = 0; it < static_cast<int>(items.size()); ++it) {
        const int s = items[it].scaled;
        if (s > q) continue;
        const int base = prev[q - s];
        count_ops(2);
        if (base == kUnreachable) continue;
        const int w = base + items[it].weight;
        if (w < best) {
          best = w;
          pick = it;
        }
      }
      cur[q] = best;
      row[q] = pick;
    }
    std::swap(prev, cur);
  }

  int top = -1;
  for (int q = max_scaled; q >= 0; --q) {
    if (prev[q] <= capacity) {
      top = q;
      break;
    }
  }
  MckpSelection sel;
  sel.choice.assign(count, -1);
  if (top < 0) return sel;
  int q = top;
  for (int n = count - 1; n >= 0; --n) {
    const int pick = choice[static_cast<std::size_t>(n) * width + static_cast<std::size_t>(q)];
    sel.choice[n] = pick;
    if (pick >= 0) {
      const ScaledItem& item = classes[n][pick];
      sel.profit += item.profit;
      sel.weight += item.weight;
      q -= item.scaled;
    }
  }
  return sel;
}

std::vector<int> multi_key_search(const std::function<std::int64_t(int)>& key_of, int max_level,
                                  std::int64_t max_key, int* evaluations) {
  std::unordered_map<int, std::int64_t> memo;
  int calls = 0;
  auto key = [&](int l) {
    const auto it = memo.find(l);
    if (it != memo.end()) return it->second;
    ++calls;
    const std::int64_t k = key_of(l);
    memo.emplace(l, k);
    return k;
  };

  std::vector<int> found;
  if (max_level >= 0 && max_key >= 1) {
    const std::int64_t top = std::min(key(max_level), max_key);
    std::int64_t q = 1;
    int lo = 0;
    while (q <= top) {
      int a = lo;
      int b = max_level;  // key(b) >= q holds since q <= top
      while (a < b) {
        const int mid = a + (b - a) / 2;
        if (key(mid) >= q) {
          b = mid;
        } else {
          a = mid + 1;
        }
      }
      found.push_back(a);
      q = key(a) + 1;
      lo = a + 1;
    }
  }
  if (evaluations) *evaluations = calls;
  return found;
}

} // namespace noma
