// Copyright 2026 The zeno-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZENO_EXPERIMENTS_HPP_
#define ZENO_EXPERIMENTS_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zeno/bounds.hpp"
#include "zeno/io.hpp"
#include "zeno/models.hpp"

namespace zeno::experiments {

struct OutputSpec {
  std::string path;
  std::string format = "csv";  // csv | json
};

struct ExperimentConfig {
  std::string experiment;  // convergence | bch_check | bounds_sweep | efficiency | spectral_report
  models::ModelSpec model;
  std::optional<io::json> inline_kraus;  // alternative input for spectral_report
  std::vector<long> n_list;
  std::vector<double> t_list;
  long seed = 1;
  int random_instances = 50;
  double target = 0.01;
  std::string profile = "a";  // efficiency p(tau) profile: a | b | c
  int bch_dim = 3;
  OutputSpec output;
};

ExperimentConfig parse_config(const io::json& j);

/// Schema and range diagnostics without running; empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& c);

struct RunOverrides {
  std::string out_dir;  // prepended to output.path when nonempty
  std::string format;   // overrides output.format when nonempty
  std::optional<long> seed;
  bool quiet = false;
};

/// Runs one experiment, writes the artifact, prints a one-line summary.
/// Exit codes: 0 success, 2 validation error, 3 numerical failure.
int run_experiment(const ExperimentConfig& c, const RunOverrides& o, std::ostream& log);

/// Generalized-BCH convergence harness: random invertible kick (unit
/// spectral radius, spectral clearance enforced by rejection) and random
/// generator; residual ||bch_log - A - (t/n) g(ad_A)(L)|| over n.
struct BchSlopeResult {
  double slope;
  std::vector<std::pair<long, double>> residuals;
};
BchSlopeResult bch_slope_experiment(unsigned long seed, int d, const std::vector<long>& n_list,
                                    double t = 1.0);

/// Dominance sweep for every closed-form bound over the built-in models and
/// random CP instances; inapplicable preconditions are reported, never
/// counted as violations.
std::vector<BoundReport> run_bound_suite(int random_instances, unsigned long seed);

/// Dyadic n values from `from` to `to` inclusive, optionally with the odd
/// companions n+1 interleaved.
std::vector<long> dyadic_n_list(long from, long to, bool with_odd_companions);

}  // namespace zeno::experiments

#endif  // ZENO_EXPERIMENTS_HPP_
