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


#ifndef NOMA_EXPERIMENT_HPP
#define NOMA_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "noma/channel.hpp"
#include "noma/config.hpp"

namespace noma {

/// A batch of simulated instances and the solvers to run on each.
///
/// Every (K, M, seed) triple in the sweeps is one instance; seeds run from
/// seed_base to seed_base + seeds - 1. Solver names are `opt`, `grad`,
/// `eps` (once per entry of `epsilons`) and `brute`.
struct ExperimentConfig {
  InstanceConfig instance;
  std::vector<std::string> solvers{"opt", "grad"};
  std::vector<int> k_sweep{5, 10, 20};
  std::vector<int> m_sweep{2};
  int seeds = 50;
  std::uint64_t seed_base = 1;
  std::vector<double> epsilons{0.1};
  std::filesystem::path output = "results.csv";
  bool count_ops = true;
  bool record_wall_time = true;  // false writes 0 seconds so reruns are byte-identical
  int threads = 1;

  /// Throws ConfigError on empty sweeps, unknown solvers or bad values.
  void validate() const;

  /// Reads the experiment keys and every instance key; unknown keys are
  /// errors.
  static ExperimentConfig from(const KeyValueConfig& cfg);
};

const std::vector<std::string>& experiment_config_keys();

/// One solver run on one instance.
struct RunRecord {
  std::uint64_t seed = 0;
  int users = 0;      // K
  int carriers = 0;   // N
  int multiplexed = 0;  // M
  std::string solver;
  double wsr = 0.0;   // bit/s
  std::optional<double> loss;  // (opt - wsr) / opt when `opt` ran on the instance
  std::uint64_t ops = 0;  // precomputation plus solve
  double seconds = 0.0;
  bool converged = true;
};

/// Runs every instance on a pool of `threads` workers. Records come back in
/// sweep order (K, then M, then seed, then solver list order) regardless of
/// scheduling.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "seed,K,N,M,solver,wsr,loss,ops,seconds";

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

/// Opens the output first so an unwritable path fails before any solve,
/// then runs the batch and writes the CSV.
std::vector<RunRecord> run_experiment_to_file(const ExperimentConfig& config);

} // namespace noma

#endif
