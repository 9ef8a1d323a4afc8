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


#include "noma/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "noma/errors.hpp"
#include "noma/jspa.hpp"
#include "noma/op_counter.hpp"

namespace noma {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool known_solver(const std::string& name) {
  return name == "opt" || name == "grad" || name == "eps" || name == "brute";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Job {
  int users;
  int multiplexed;
  std::uint64_t seed;
};

// One concrete solver invocation: a name from the config plus, for eps,
// the approximation parameter.
struct SolverRun {
  std::string name;
  double eps = 0.0;
  std::string label;
};

std::vector<SolverRun> expand_solvers(const ExperimentConfig& config) {
  std::vector<SolverRun> runs;
  for (const std::string& s : config.solvers) {
    if (s == "eps") {
      for (double e : config.epsilons) runs.push_back({s, e, "eps_" + format_label(e)});
    } else {
      runs.push_back({s, 0.0, s});
    }
  }
  return runs;
}

std::vector<RunRecord> run_job(const ExperimentConfig& config, const Job& job,
                               const std::vector<SolverRun>& solvers) {
  using Clock = std::chrono::steady_clock;
  InstanceConfig ic = config.instance;
  ic.num_users = job.users;
  ic.max_multiplexed = job.multiplexed;
  const Instance inst = generate_instance(ic, job.seed);

  const auto build_start = Clock::now();
  OpCounter precompute;
  std::optional<JspaContext> ctx;
  {
    OpCountScope scope(precompute);
    ctx.emplace(inst);
  }
  const double build_seconds = std::chrono::duration<double>(Clock::now() - build_start).count();

  std::vector<RunRecord> out;
  for (const SolverRun& run : solvers) {
    const auto start = Clock::now();
    JspaSolution sol;
    if (run.name == "opt") {
      sol = opt_jspa(*ctx);
    } else if (run.name == "grad") {
      GradOptions options;
      options.tolerance = ic.tolerance;
      sol = grad_jspa(*ctx, options);
    } else if (run.name == "eps") {
      sol = eps_jspa(*ctx, run.eps);
    } else {
      sol = brute_force_jspa(*ctx);
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

    RunRecord r;
    r.seed = job.seed;
    r.users = inst.num_users;
    r.carriers = inst.num_carriers;
    r.multiplexed = inst.max_multiplexed;
    r.solver = run.label;
    r.wsr = sol.wsr;
    r.ops = config.count_ops ? precompute.total() + sol.ops : 0;
    r.seconds = config.record_wall_time ? build_seconds + seconds : 0.0;
    r.converged = sol.converged;
    out.push_back(std::move(r));
  }

  const auto opt = std::find_if(out.begin(), out.end(),
                                [](const RunRecord& r) { return r.solver == "opt"; });
  if (opt != out.end()) {
    const double reference = opt->wsr;
    for (RunRecord& r : out) r.loss = reference > 0.0 ? (reference - r.wsr) / reference : 0.0;
  }
  return out;
}

} // namespace

const std::vector<std::string>& experiment_config_keys() {
  static const std::vector<std::string> keys = {
      "solvers", "k_sweep", "m_sweep", "seeds", "seed_base", "epsilons",
      "output",  "count_ops", "record_wall_time", "threads"};
  return keys;
}

void ExperimentConfig::validate() const {
  instance.validate();
  check(!solvers.empty(), "solvers must not be empty");
  for (const std::string& s : solvers) check(known_solver(s), "unknown solver '" + s + "'");
  check(!k_sweep.empty(), "k_sweep must not be empty");
  check(!m_sweep.empty(), "m_sweep must not be empty");
  for (int k : k_sweep) check(k >= 1, "k_sweep entries must be >= 1");
  for (int m : m_sweep) {
    check(m >= 1, "m_sweep entries must be >= 1");
    for (int k : k_sweep) check(m <= k, "m_sweep entries must not exceed any K in k_sweep");
  }
  check(seeds >= 1, "seeds must be >= 1");
  if (std::find(solvers.begin(), solvers.end(), "eps") != solvers.end()) {
    check(!epsilons.empty(), "epsilons must not be empty when eps runs");
  }
  for (double e : epsilons) check(e > 0.0 && e < 1.0, "epsilons must lie in (0, 1)");
  check(threads >= 1, "threads must be >= 1");
}

ExperimentConfig ExperimentConfig::from(const KeyValueConfig& cfg) {
  std::vector<std::string> known = instance_config_keys();
  const auto& own = experiment_config_keys();
  known.insert(known.end(), own.begin(), own.end());
  const auto unknown = cfg.unknown_keys(known);
  check(unknown.empty(), unknown.empty() ? "" : "unknown configuration key '" + unknown[0] + "'");

  ExperimentConfig c;
  c.instance = InstanceConfig::from(cfg);
  c.solvers = cfg.get_list("solvers", c.solvers);
  c.k_sweep = cfg.get_int_list("k_sweep", c.k_sweep);
  c.m_sweep = cfg.get_int_list("m_sweep", {c.instance.max_multiplexed});
  c.seeds = cfg.get_int("seeds", c.seeds);
  c.seed_base = cfg.get_u64("seed_base", c.seed_base);
  c.epsilons = cfg.get_double_list("epsilons", c.epsilons);
  c.output = cfg.get_string("output", c.output.string());
  c.count_ops = cfg.get_bool("count_ops", c.count_ops);
  c.record_wall_time = cfg.get_bool("record_wall_time", c.record_wall_time);
  c.threads = cfg.get_int("threads", c.threads);
  c.validate();
  return c;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::vector<SolverRun> solvers = expand_solvers(config);
  std::vector<Job> jobs;
  for (int k : config.k_sweep) {
    for (int m : config.m_sweep) {
      for (int s = 0; s < config.seeds; ++s) {
        jobs.push_back({k, m, config.seed_base + static_cast<std::uint64_t>(s)});
      }
    }
  }

  std::vector<std::vector<RunRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        results[i] = run_job(config, jobs[i], solvers);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  const int workers = std::min<int>(config.threads, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RunRecord> records;
  for (auto& r : results) {
    for (auto& rec : r) records.push_back(std::move(rec));
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.seed << ',' << r.users << ',' << r.carriers << ',' << r.multiplexed << ','
        << r.solver << ',' << format_double(r.wsr) << ','
        << (r.loss ? format_double(*r.loss) : std::string()) << ',' << r.ops << ','
        << format_double(r.seconds) << '\n';
  }
}

std::vector<RunRecord> run_experiment_to_file(const ExperimentConfig& config) {
  config.validate();
  std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file '" + config.output.string() + "'");
  std::vector<RunRecord> records = run_experiment(config);
  write_csv(out, records);
  out.flush();
  if (!out) throw ConfigError("failed writing output file '" + config.output.string() + "'");
  return records;
}

} // namespace noma
