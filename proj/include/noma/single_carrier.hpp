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


#ifndef NOMA_SINGLE_CARRIER_HPP
#define NOMA_SINGLE_CARRIER_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "noma/model.hpp"

namespace noma {

/// Strictly increasing decoding positions of the active users on one
/// subcarrier.
using ActiveSet = std::vector<int>;

/// Throws ConstraintViolation unless `active` is strictly increasing inside
/// [0, users) and holds at most `max_active` positions.
void validate_active_set(std::span<const int> active, int users, int max_active);

/// Positions i with x[i] > x[i+1] (x past the end is zero).
ActiveSet active_positions(std::span<const double> x);

/// Full cumulative-power column from per-active-user values: positions of
/// the block ending at active[t] get values[t]; positions after the last
/// active user get zero.
std::vector<double> expand_active(std::span<const int> active, std::span<const double> values,
                                  int users);

/// Optimal power control for a fixed active set under a subcarrier budget.
///
/// Returns one cumulative power per active user, non-increasing and inside
/// [0, budget]. Each maximal run of equal values is the maximizer of the
/// merged block.
std::vector<double> scpc(const Carrier& carrier, std::span<const int> active, double budget);

/// Power control with a lookup table: solve once at the full budget, then
/// answer any smaller budget by truncation.
class PrecomputedScpc {
public:
  PrecomputedScpc() = default;
  PrecomputedScpc(const Carrier& carrier, ActiveSet active, double p_max);

  bool ready() const { return ready_; }
  const ActiveSet& active() const { return active_; }
  const std::vector<double>& stored() const { return stored_; }

  /// Throws UsageError before precomputation, ConstraintViolation when
  /// `budget` exceeds the precomputed budget.
  std::vector<double> eval(double budget) const;

private:
  ActiveSet active_;
  std::vector<double> stored_;
  double p_max_ = 0.0;
  bool ready_ = false;
};

/// Back-pointer of the user-selection DP; `m < 0` marks the end of a chain.
struct ScusLink {
  int m = -1;
  int j = -1;
  int i = -1;

  bool terminal() const { return m < 0; }
  bool operator==(const ScusLink&) const = default;
};

/// DP arrays of the single-carrier user selection.
///
/// value(m, j, i) is the best sum of the per-position terms over positions
/// j..K-1 with at most m active users and positions j..i sharing one
/// cumulative power, power(m, j, i) that common power, link(m, j, i) the
/// cell it was built from. The subcarrier offset is not included.
class ScusTables {
public:
  ScusTables() = default;
  ScusTables(int max_active, int users, double budget);

  int max_active() const { return max_active_; }
  int users() const { return users_; }
  double budget() const { return budget_; }

  double& value(int m, int j, int i) { return value_[index(m, j, i)]; }
  double value(int m, int j, int i) const { return value_[index(m, j, i)]; }
  double& power(int m, int j, int i) { return power_[index(m, j, i)]; }
  double power(int m, int j, int i) const { return power_[index(m, j, i)]; }
  ScusLink& link(int m, int j, int i) { return link_[index(m, j, i)]; }
  const ScusLink& link(int m, int j, int i) const { return link_[index(m, j, i)]; }

  /// Cumulative-power column recovered by following links from (m, j, i).
  std::vector<double> backtrack(int m, int j, int i) const;

  /// CSV dump of every filled cell: m,j,i,value,power,link_m,link_j,link_i.
  void dump_csv(std::ostream& out) const;

private:
  std::size_t index(int m, int j, int i) const {
    return (static_cast<std::size_t>(m) * static_cast<std::size_t>(users_) +
            static_cast<std::size_t>(j)) * static_cast<std::size_t>(users_) +
           static_cast<std::size_t>(i);
  }

  int max_active_ = 0;
  int users_ = 0;
  double budget_ = 0.0;
  std::vector<double> value_;
  std::vector<double> power_;
  std::vector<ScusLink> link_;
};

ScusTables build_scus_tables(const Carrier& carrier, int max_active, double budget);

/// Optimal joint user selection and power control on one subcarrier:
/// the cumulative-power column with at most `max_active` active users.
std::vector<double> scus(const Carrier& carrier, int max_active, double budget);

/// One candidate solution kept by PrecomputedScus.
struct CollectionEntry {
  struct Run {
    int first;
    int last;
    double power;
  };

  ActiveSet active;
  std::vector<double> x;  // full column at the precomputed budget
  std::vector<Run> runs;  // maximal runs of equal positive power
  double tail = 0.0;      // zero-power tail terms plus the subcarrier offset
};

struct CarrierEval {
  std::vector<double> x;  // truncated column
  double value = 0.0;     // F^n(budget), offset included
  int entry = 0;          // index into the collection
};

/// User selection with precomputation: the DP runs once at the full budget
/// and keeps the K candidates obtained from value(M, 0, i); any smaller
/// budget is answered by truncating each candidate and keeping the best.
class PrecomputedScus {
public:
  PrecomputedScus() = default;
  PrecomputedScus(Carrier carrier, int max_active, double p_max);

  bool ready() const { return ready_; }
  const Carrier& carrier() const { return carrier_; }
  const ScusTables& tables() const { return tables_; }
  const std::vector<CollectionEntry>& collection() const { return collection_; }
  double p_max() const { return p_max_; }

  /// Best truncated candidate. Ties go to the lower collection index.
  CarrierEval eval(double budget) const;

  /// F^n(budget): optimal single-carrier objective, offset included.
  double value(double budget) const;

  /// Left derivative of F^n at `budget` for the selected candidate. At zero
  /// it is the derivative of the candidate selected for an infinitesimal
  /// positive budget.
  double left_derivative(double budget) const;

  /// Candidate value at `budget`; exposed for tests.
  double entry_value(const CollectionEntry& entry, double budget) const;

private:
  void require_ready() const;
  double checked_budget(double budget) const;

  Carrier carrier_;
  ScusTables tables_;
  std::vector<CollectionEntry> collection_;
  double p_max_ = 0.0;
  bool ready_ = false;
};

} // namespace noma

#endif
