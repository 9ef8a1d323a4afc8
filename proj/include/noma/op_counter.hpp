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


#ifndef NOMA_OP_COUNTER_HPP
#define NOMA_OP_COUNTER_HPP

#include <cstdint>

#ifndef NOMA_COUNT_OPS
#define NOMA_COUNT_OPS 1
#endif

namespace noma {

/// Tally of basic operations (additions, multiplications, comparisons)
/// performed inside solver inner loops.
///
/// Counting is explicit: each instrumented site adds a fixed constant when a
/// counter is installed on the calling thread through OpCountScope. With no
/// scope installed every site is a single branch on a null thread-local
/// pointer, and with NOMA_COUNT_OPS=0 the sites compile away.
///
/// Instrumented sites and their charges:
///   argmax_f               1 (branch test) + 6 on the unimodal branch
///                          (closed-form stationary point and clamp)
///   f_eval                 3 when the block starts at position 0, else 6
///   scpc                   1 per backtracking test, 1 per assigned variable
///   SCUS table cell        3 (one addition, two comparisons) on top of its
///                          argmax_f / f_eval charges
///   SCUS initial cells     1 per cell
///   i-SCUS evaluation      2 per run (truncation and accumulation) on top of
///                          f_eval, plus 1 selection comparison per entry
///   DP by weights          2 per (capacity, item) transition
///   DP by profits          2 per (profit level, item) transition
///   greedy estimate        2 per hull increment considered
///   budget projection      3 per coordinate per bisection step
///   brute force            2 per enumerated budget vector
class OpCounter {
public:
  std::uint64_t total() const { return total_; }
  void add(std::uint64_t n) { total_ += n; }
  void reset() { total_ = 0; }

private:
  std::uint64_t total_ = 0;
};

namespace detail {
OpCounter*& active_counter();
}

/// Installs `counter` as the current thread's sink for the lifetime of the
/// scope. Scopes nest; the previous sink is restored on exit.
class OpCountScope {
public:
  explicit OpCountScope(OpCounter& counter);
  ~OpCountScope();
  OpCountScope(const OpCountScope&) = delete;
  OpCountScope& operator=(const OpCountScope&) = delete;

private:
  OpCounter* previous_;
};

inline void count_ops(std::uint64_t n) {
#if NOMA_COUNT_OPS
  if (OpCounter* c = detail::active_counter()) c->add(n);
#else
  (void)n;
#endif
}

/// Operations recorded on the current thread's active counter, or 0 when
/// counting is disabled.
std::uint64_t current_op_count();

} // namespace noma

#endif
