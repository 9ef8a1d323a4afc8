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


#ifndef NOMA_MODEL_HPP
#define NOMA_MODEL_HPP

#include <span>
#include <vector>

namespace noma {

/// Dense row-major table indexed by (row, subcarrier).
///
/// Rows are users for gains, noise and powers, and decoding positions for
/// cumulative powers.
class CarrierGrid {
public:
  CarrierGrid() = default;
  CarrierGrid(int rows, int carriers, double fill = 0.0)
      : rows_(rows), carriers_(carriers),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(carriers), fill) {}

  double& operator()(int row, int n) { return data_[index(row, n)]; }
  double operator()(int row, int n) const { return data_[index(row, n)]; }

  int rows() const { return rows_; }
  int carriers() const { return carriers_; }

  /// Column `n` copied out in row order.
  std::vector<double> column(int n) const;
  void set_column(int n, std::span<const double> values);

  bool operator==(const CarrierGrid&) const = default;

private:
  std::size_t index(int row, int n) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(carriers_) +
           static_cast<std::size_t>(n);
  }

  int rows_ = 0;
  int carriers_ = 0;
  std::vector<double> data_;
};

/// One downlink multi-carrier NOMA problem instance.
///
/// Powers are in watts, bandwidths in hertz. `gain(k, n)` is a linear power
/// ratio and `noise(k, n)` the received noise power of user k on subcarrier n.
struct Instance {
  int num_users = 0;
  int num_carriers = 0;
  int max_multiplexed = 1;            // M
  std::vector<double> weights;        // one per user, > 0
  std::vector<double> bandwidth;      // one per subcarrier
  CarrierGrid gain;                   // users x subcarriers
  CarrierGrid noise;                  // users x subcarriers
  double p_max = 0.0;                 // cellular budget
  std::vector<double> p_max_carrier;  // per-subcarrier budget, <= p_max
  double power_step = 0.0;            // delta

  double normalized_noise(int k, int n) const { return noise(k, n) / gain(k, n); }

  /// Number of non-zero discrete power values, floor(p_max / power_step).
  int levels() const;

  /// Highest discrete level allowed on subcarrier `n` by its own budget.
  int carrier_level_cap(int n) const;

  /// Throws ConstraintViolation when any invariant fails.
  void validate() const;
};

/// Per-subcarrier SIC decoding order: users sorted from the highest to the
/// lowest normalized noise, ties by ascending user index.
class DecodingOrder {
public:
  DecodingOrder() = default;
  explicit DecodingOrder(const Instance& instance);

  int user_at(int n, int position) const { return perm_[n][position]; }
  int position_of(int n, int user) const { return inverse_[n][user]; }
  std::span<const int> permutation(int n) const { return perm_[n]; }
  std::span<const int> inverse(int n) const { return inverse_[n]; }
  int num_carriers() const { return static_cast<int>(perm_.size()); }

private:
  std::vector<std::vector<int>> perm_;
  std::vector<std::vector<int>> inverse_;
};

/// A subcarrier's parameters laid out in decoding order: entry i belongs to
/// the user decoded i-th. This is all the single-carrier solvers need.
struct Carrier {
  double bandwidth = 0.0;
  std::vector<double> weight;  // w of the user at each position
  std::vector<double> noise;   // normalized noise of the user at each position

  int size() const { return static_cast<int>(weight.size()); }

  static Carrier from(const Instance& instance, const DecodingOrder& order, int n);
};

/// Cumulative powers x(i, n) = sum of the powers of the users decoded at
/// positions i..K-1 on subcarrier n. Rows are decoding positions.
struct XAllocation {
  CarrierGrid x;
};

/// Transmit powers p(k, n). Rows are users.
struct PowerAllocation {
  CarrierGrid p;
};

XAllocation x_from_p(const PowerAllocation& power, const DecodingOrder& order);

/// Throws ConstraintViolation when a column of `x` is not non-increasing and
/// non-negative.
PowerAllocation p_from_x(const XAllocation& x, const DecodingOrder& order);

/// Shannon rate of user `k` on subcarrier `n` under SIC, in bit/s.
double rate(const Instance& instance, const DecodingOrder& order,
            const PowerAllocation& power, int k, int n);

/// Weighted sum-rate summed user by user from the rate formula.
double wsr_direct(const Instance& instance, const DecodingOrder& order,
                  const PowerAllocation& power);

/// Weighted sum-rate through the separable cumulative-power form: the sum of
/// the per-position terms plus the constant offset of every subcarrier.
double wsr_separable(const Instance& instance, const DecodingOrder& order, const XAllocation& x);

/// True when `x` satisfies the budget, ordering and multiplexing constraints
/// up to an absolute slack `tol` on the budgets.
bool is_feasible(const Instance& instance, const XAllocation& x, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Separable terms. Positions are 0-based decoding positions; `first..last`
// is an inclusive block of positions sharing the same cumulative power.

/// Sum of the per-position terms over first..last evaluated at a common
/// cumulative power `x`.
double f_eval(const Carrier& carrier, int first, int last, double x);

/// Maximizer of f_eval(first, last, .) on [0, budget].
double argmax_f(const Carrier& carrier, int first, int last, double budget);

/// The constant that makes the separable form equal to the weighted
/// sum-rate on one subcarrier: -W w log2(noise) of the last decoded user.
double constant_offset(const Carrier& carrier);

/// Separable objective of one subcarrier column, offset included.
double column_value(const Carrier& carrier, std::span<const double> x);

} // namespace noma

#endif
