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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zeno/experiments.hpp"
#include "zeno/io.hpp"

namespace {

int load_config(const std::string& path, zeno::experiments::ExperimentConfig& cfg) {
  try {
    const auto j = zeno::io::json::parse(zeno::io::read_file(path));
    cfg = zeno::experiments::parse_config(j);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeno-lab: quantum Zeno dynamics experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  long seed = -1;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--format", format, "output format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--seed", seed, "seed override for random-instance experiments");
  run->add_flag("--quiet", quiet, "suppress the summary line");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a config without running");
  validate->add_option("--config", validate_path, "experiment config (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    zeno::experiments::ExperimentConfig cfg;
    if (const int rc = load_config(config_path, cfg); rc != 0) return rc;
    zeno::experiments::RunOverrides ov;
    ov.out_dir = out_dir;
    ov.format = format;
    if (seed >= 0) ov.seed = seed;
    ov.quiet = quiet;
    return zeno::experiments::run_experiment(cfg, ov, std::cout);
  }

  zeno::experiments::ExperimentConfig cfg;
  if (const int rc = load_config(validate_path, cfg); rc != 0) return rc;
  const auto diags = zeno::experiments::validate_config(cfg);
  for (const auto& d : diags) std::cout << "diagnostic: " << d << "\n";
  std::cout << (diags.empty() ? "valid" : "invalid") << "\n";
  return diags.empty() ? 0 : 2;
}
