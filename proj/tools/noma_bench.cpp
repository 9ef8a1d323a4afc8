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


// Batch runner: generates random cells, runs the selected joint allocators
// on each and writes one CSV row per (instance, solver).

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noma/config.hpp"
#include "noma/errors.hpp"
#include "noma/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weighted sum-rate benchmark for multi-carrier NOMA allocators"};
  std::string config_path;
  std::string solvers;
  std::string out_path;
  std::string count_ops;
  std::uint64_t seed_base = 0;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed-base", seed_base, "first instance seed");
  auto* solvers_opt = app.add_option("--solvers", solvers, "comma separated: opt,grad,eps,brute");
  auto* out_opt = app.add_option("--out", out_path, "CSV output path");
  auto* ops_opt = app.add_option("--count-ops", count_ops, "record basic-operation counts (true/false)");
  CLI11_PARSE(app, argc, argv);

  try {
    noma::KeyValueConfig cfg;
    if (!config_path.empty()) cfg = noma::KeyValueConfig::load(config_path);
    if (*seed_opt) cfg.set("seed_base", std::to_string(seed_base));
    if (*solvers_opt) cfg.set("solvers", solvers);
    if (*out_opt) cfg.set("output", out_path);
    if (*ops_opt) cfg.set("count_ops", count_ops);
    const noma::ExperimentConfig config = noma::ExperimentConfig::from(cfg);

    const std::vector<noma::RunRecord> records = noma::run_experiment_to_file(config);

    struct Summary {
      int runs = 0;
      double wsr = 0.0;
      double loss = 0.0;
      int losses = 0;
      int unconverged = 0;
    };
    std::map<std::string, Summary> by_solver;
    for (const auto& r : records) {
      Summary& s = by_solver[r.solver];
      ++s.runs;
      s.wsr += r.wsr;
      if (r.loss) {
        s.loss += *r.loss;
        ++s.losses;
      }
      if (!r.converged) ++s.unconverged;
    }
    std::printf("%zu rows written to %s\n", records.size(), config.output.string().c_str());
    for (const auto& [name, s] : by_solver) {
      std::printf("  %-10s runs=%d mean_wsr=%.6e", name.c_str(), s.runs, s.wsr / s.runs);
      if (s.losses > 0) std::printf(" mean_loss=%.3e", s.loss / s.losses);
      if (s.unconverged > 0) std::printf(" unconverged=%d", s.unconverged);
      std::printf("\n");
    }
  } catch (const noma::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
