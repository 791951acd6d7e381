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

#include "zeno/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "zeno/matfunc.hpp"

namespace zeno::experiments {

using io::json;

std::vector<long> dyadic_n_list(long from, long to, bool with_odd_companions) {
  std::vector<long> out;
  for (long n = from; n <= to; n *= 2) {
    out.push_back(n);
    if (with_odd_companions) out.push_back(n + 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  c.experiment = j.value("experiment", "");
  if (j.contains("model")) {
    const auto& m = j.at("model");
    c.model.id = m.value("id", "");
    if (m.contains("params"))
      for (const auto& [key, val] : m.at("params").items())
        c.model.params[key] = val.get<double>();
  }
  if (j.contains("kraus")) c.inline_kraus = j.at("kraus");
  if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<long>>();
  if (j.contains("t_list")) c.t_list = j.at("t_list").get<std::vector<double>>();
  c.seed = j.value("seed", 1L);
  c.random_instances = j.value("random_instances", 50);
  c.target = j.value("target", 0.01);
  c.profile = j.value("profile", "a");
  c.bch_dim = j.value("d", 3);
  if (j.contains("output")) {
    c.output.path = j.at("output").value("path", "");
    c.output.format = j.at("output").value("format", "csv");
  }
  return c;
}

std::vector<std::string> validate_config(const ExperimentConfig& c) {
  std::vector<std::string> diags;
  const std::vector<std::string> known = {"convergence", "bch_check", "bounds_sweep",
                                          "efficiency", "spectral_report"};
  if (std::find(known.begin(), known.end(), c.experiment) == known.end()) {
    diags.push_back("unknown experiment '" + c.experiment + "'");
    return diags;
  }
  if (c.output.format != "csv" && c.output.format != "json")
    diags.push_back("output format must be csv or json");

  const bool needs_model = c.experiment == "convergence" ||
                           (c.experiment == "spectral_report" && !c.inline_kraus.has_value());
  if (needs_model) {
    if (c.model.id.empty())
      diags.push_back("missing model for experiment '" + c.experiment + "'");
    else
      for (const auto& d : c.model.validate()) diags.push_back("model: " + d);
  }
  if (c.experiment == "convergence" || c.experiment == "bch_check") {
    if (c.n_list.empty())
      diags.push_back("missing n_list");
    else {
      for (size_t i = 0; i + 1 < c.n_list.size(); ++i)
        if (c.n_list[i] >= c.n_list[i + 1]) {
          diags.push_back("n_list must be strictly increasing");
          break;
        }
      if (c.n_list.front() < 1) diags.push_back("n_list entries must be positive");
    }
  }
  if (c.experiment == "bch_check" && (c.bch_dim < 2 || c.bch_dim > 6))
    diags.push_back("d must lie in [2, 6]");
  if (c.experiment == "bounds_sweep" && c.random_instances < 0)
    diags.push_back("random_instances must be >= 0");
  if (c.experiment == "efficiency") {
    if (c.profile != "a" && c.profile != "b" && c.profile != "c")
      diags.push_back("profile must be one of a, b, c");
    if (!(c.target > 0.0)) diags.push_back("target must be positive");
  }
  return diags;
}

namespace {

std::string format_of(const ExperimentConfig& c, const RunOverrides& o) {
  return o.format.empty() ? c.output.format : o.format;
}

int run_convergence(const ExperimentConfig& c, const std::string& path,
                    const std::string& format, std::ostream& log, bool quiet) {
  const KickCycle cycle = c.model.cycle();
  std::vector<double> ts = c.t_list.empty() ? std::vector<double>{1.0} : c.t_list;

  io::CsvWriter csv({"t", "n", "distance", "parity"});
  json jout;
  jout["experiment"] = "convergence";
  jout["model"] = {{"id", c.model.id}, {"params", c.model.params}};
  json sweeps = json::array();
  double last_slope = std::numeric_limits<double>::quiet_NaN();
  for (double t : ts) {
    const ConvergenceScan scan = convergence_scan(cycle, t, c.n_list);
    json points = json::array();
    for (const auto& p : scan.points) {
      csv.add_row({io::format_double(t), std::to_string(p.n), io::format_double(p.distance),
                   p.odd ? "odd" : "even"});
      points.push_back({{"n", p.n}, {"distance", p.distance}, {"parity", p.odd ? "odd" : "even"}});
    }
    sweeps.push_back({{"t", t},
                      {"odd_slope", scan.odd_slope},
                      {"even_slope", scan.even_slope},
                      {"points", points}});
    last_slope = scan.odd_slope;
  }
  jout["sweeps"] = sweeps;

  if (format == "json")
    io::write_file(path, jout.dump(2) + "\n");
  else
    csv.write(path);
  if (!quiet)
    log << "convergence: model=" << c.model.id << " odd-n slope=" << io::format_double(last_slope)
        << " -> " << path << "\n";
  return 0;
}

int run_spectral_report(const ExperimentConfig& c, const std::string& path,
                        const std::string& format, std::ostream& log, bool quiet) {
  SuperOperator e = [&] {
    if (c.inline_kraus.has_value())
      return kraus_to_superop(io::kraus_from_json(*c.inline_kraus));
    return c.model.cycle().kick_product();
  }();
  const SpectralDecomposition dec = decompose(e);
  json rep = io::spectral_report_json(dec);
  rep["experiment"] = "spectral_report";
  if (!c.model.id.empty()) rep["model"] = {{"id", c.model.id}, {"params", c.model.params}};

  if (format == "json") {
    io::write_file(path, rep.dump(2) + "\n");
  } else {
    io::CsvWriter csv({"re", "im", "multiplicity", "peripheral", "nilpotent_norm", "mu0"});
    for (const auto& cl : dec.clusters)
      csv.add_row({io::format_double(cl.eigenvalue.real()), io::format_double(cl.eigenvalue.imag()),
                   std::to_string(cl.multiplicity), cl.is_peripheral ? "1" : "0",
                   io::format_double(cl.nilpotent_norm), io::format_double(dec.mu0)});
    csv.write(path);
  }
  size_t peripheral = 0;
  for (const auto& cl : dec.clusters) peripheral += cl.is_peripheral ? 1 : 0;
  if (!quiet)
    log << "spectral_report: clusters=" << dec.clusters.size() << " peripheral=" << peripheral
        << " mu0=" << io::format_double(dec.mu0) << " -> " << path << "\n";
  return 0;
}

int run_bch_check(const ExperimentConfig& c, long seed, const std::string& path,
                  const std::string& format, std::ostream& log, bool quiet) {
  const BchSlopeResult res =
      bch_slope_experiment(static_cast<unsigned long>(seed), c.bch_dim, c.n_list);
  if (format == "json") {
    json points = json::array();
    for (const auto& [n, r] : res.residuals) points.push_back({{"n", n}, {"residual", r}});
    json jout = {{"experiment", "bch_check"},
                 {"seed", seed},
                 {"d", c.bch_dim},
                 {"slope", res.slope},
                 {"points", points}};
    io::write_file(path, jout.dump(2) + "\n");
  } else {
    io::CsvWriter csv({"n", "residual"});
    for (const auto& [n, r] : res.residuals)
      csv.add_row({std::to_string(n), io::format_double(r)});
    csv.write(path);
  }
  if (!quiet)
    log << "bch_check: seed=" << seed << " d=" << c.bch_dim
        << " slope=" << io::format_double(res.slope) << " -> " << path << "\n";
  return 0;
}

int run_bounds_sweep(const ExperimentConfig& c, long seed, const std::string& path,
                     const std::string& format, std::ostream& log, bool quiet) {
  const auto reports = run_bound_suite(c.random_instances, static_cast<unsigned long>(seed));
  size_t violations = 0, inapplicable = 0;
  for (const auto& r : reports) {
    if (!r.applicable)
      ++inapplicable;
    else if (!r.holds)
      ++violations;
  }
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reports)
      arr.push_back({{"name", r.name},
                     {"analytic", r.analytic_value},
                     {"measured", r.measured_value},
                     {"holds", r.holds},
                     {"applicable", r.applicable},
                     {"note", r.note}});
    json jout = {{"experiment", "bounds_sweep"},
                 {"seed", seed},
                 {"violations", violations},
                 {"inapplicable", inapplicable},
                 {"reports", arr}};
    io::write_file(path, jout.dump(2) + "\n");
  } else {
    io::CsvWriter csv({"name", "analytic", "measured", "holds", "applicable", "seed", "note"});
    for (const auto& r : reports)
      csv.add_row({r.name, io::format_double(r.analytic_value),
                   io::format_double(r.measured_value), r.holds ? "1" : "0",
                   r.applicable ? "1" : "0", std::to_string(seed), r.note});
    csv.write(path);
  }
  if (!quiet)
    log << "bounds_sweep: reports=" << reports.size() << " violations=" << violations
        << (violations == 0 ? " (max bound violation = none)" : "")
        << " inapplicable=" << inapplicable << " -> " << path << "\n";
  return violations == 0 ? 0 : 3;
}

int run_efficiency(const ExperimentConfig& c, const std::string& path, const std::string& format,
                   std::ostream& log, bool quiet) {
  const models::MeasurementModel profile =
      c.profile == "a" ? models::MeasurementModel::kExpSaturation
                       : (c.profile == "b" ? models::MeasurementModel::kSine
                                           : models::MeasurementModel::kSineSquared);
  const double omega_t = c.model.param_or("omega_t", 1.0);
  const double big_t = c.model.param_or("T", 1.0);
  const auto scan = models::efficiency_scan(profile, omega_t, big_t, c.target);
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : scan.rows)
      rows.push_back({{"n", r.n}, {"tau", r.tau}, {"distance", r.distance},
                      {"total_time", r.total_time}});
    json jout = {{"experiment", "efficiency"},
                 {"profile", c.profile},
                 {"omega_t", omega_t},
                 {"target", c.target},
                 {"tau_opt", scan.tau_opt},
                 {"n_opt", scan.n_opt},
                 {"best_total_time", scan.best_total_time},
                 {"interior", scan.interior},
                 {"nonprojective_wins", scan.nonprojective_wins},
                 {"rows", rows}};
    io::write_file(path, jout.dump(2) + "\n");
  } else {
    io::CsvWriter csv({"n", "tau", "distance", "total_time"});
    for (const auto& r : scan.rows)
      csv.add_row({std::to_string(r.n), io::format_double(r.tau), io::format_double(r.distance),
                   io::format_double(r.total_time)});
    csv.write(path);
  }
  if (!quiet)
    log << "efficiency: profile=" << c.profile << " tau_opt=" << io::format_double(scan.tau_opt)
        << " n_opt=" << scan.n_opt << (scan.interior ? " (interior)" : " (boundary)") << " -> "
        << path << "\n";
  return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& c, const RunOverrides& o, std::ostream& log) {
  const auto diags = validate_config(c);
  if (!diags.empty()) {
    for (const auto& d : diags) log << "config error: " << d << "\n";
    return 2;
  }
  ExperimentConfig cfg = c;
  if (o.seed.has_value()) cfg.seed = *o.seed;
  const std::string format = format_of(cfg, o);
  std::string path = cfg.output.path.empty()
                         ? cfg.experiment + (format == "json" ? ".json" : ".csv")
                         : cfg.output.path;
  if (!o.out_dir.empty()) path = (std::filesystem::path(o.out_dir) / path).string();
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }

  try {
    if (cfg.experiment == "convergence")
      return run_convergence(cfg, path, format, log, o.quiet);
    if (cfg.experiment == "spectral_report")
      return run_spectral_report(cfg, path, format, log, o.quiet);
    if (cfg.experiment == "bch_check")
      return run_bch_check(cfg, cfg.seed, path, format, log, o.quiet);
    if (cfg.experiment == "bounds_sweep")
      return run_bounds_sweep(cfg, cfg.seed, path, format, log, o.quiet);
    if (cfg.experiment == "efficiency")
      return run_efficiency(cfg, path, format, log, o.quiet);
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    log << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    log << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  log << "config error: unknown experiment\n";
  return 2;
}

BchSlopeResult bch_slope_experiment(unsigned long seed, int d, const std::vector<long>& n_list,
                                    double t) {
  require(d >= 2, "bch_slope_experiment: need d >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&] {
    CMat m(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) m(r, c) = Complex(gauss(rng), gauss(rng));
    return m;
  };

  // Draw a kick with unit spectral radius and decent spectral clearance so
  // that the primary log is well conditioned (rejection keeps the stream
  // deterministic for a fixed seed).
  CMat e;
  for (int attempt = 0; attempt < 256; ++attempt) {
    e = random_matrix();
    e /= spectral_radius(e);
    Eigen::ComplexEigenSolver<CMat> es(e, true);
    const CVec lam = es.eigenvalues();
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lam.size(); ++i)
      for (int j = i + 1; j < lam.size(); ++j)
        min_gap = std::min(min_gap, std::abs(lam(i) - lam(j)));
    if (lam.cwiseAbs().minCoeff() > 0.05 && min_gap > 0.05 && rcond(es.eigenvectors()) > 1e-4)
      break;
    e.resize(0, 0);
  }
  if (e.size() == 0) throw NumericalError("bch_slope_experiment: no well-conditioned kick found");

  CMat l = random_matrix();
  l /= spectral_norm(l);

  const BranchCut cut = choose_branch_cut(e);
  const CMat a = primary_log(e, cut);
  const CMat gl = g_of_ad_apply(a, l);

  BchSlopeResult res;
  for (long n : n_list) {
    const CMat z = bch_log(e, l, t, n, cut);
    const double r = spectral_norm(z - a - (t / static_cast<double>(n)) * gl);
    res.residuals.emplace_back(n, r);
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, r] : res.residuals) pts.emplace_back(static_cast<double>(n), r);
  res.slope = fit_loglog_slope(pts);
  return res;
}

namespace {

struct SuiteInstance {
  std::string name;
  KickCycle cycle;
  double t;
};

void check_channel_norm(const SuiteInstance& inst, std::vector<BoundReport>& out) {
  const int d = inst.cycle.dim();
  double measured = op_norm(inst.cycle.kick_product());
  for (const auto& k : inst.cycle.kicks()) measured = std::max(measured, op_norm(k));
  auto rep = BoundReport::make("channel_norm[" + inst.name + "]", bound_channel_norm(d),
                               measured, {{"d", static_cast<double>(d)}});
  out.push_back(std::move(rep));
}

void check_cycle_perturbation(const SuiteInstance& inst, std::vector<BoundReport>& out) {
  const int d = inst.cycle.dim(), m = inst.cycle.m();
  const double norm_l = op_norm(inst.cycle.generator());
  const long n = 16;
  const double analytic = bound_cycle_perturbation(d, m, inst.t, n, norm_l);
  const double measured = spectral_norm(kicked_step(inst.cycle, inst.t, n).matrix() -
                                        inst.cycle.kick_product().matrix());
  out.push_back(BoundReport::make("cycle_perturbation[" + inst.name + "]", analytic,
                                  measured,
                                  {{"d", static_cast<double>(d)}, {"m", static_cast<double>(m)},
                                   {"t", inst.t}, {"n", static_cast<double>(n)},
                                   {"normL", norm_l}}));
}

void check_power_bounds(const SuiteInstance& inst, const SpectralDecomposition& dec,
                  std::vector<BoundReport>& out) {
  const int d = inst.cycle.dim();
  const std::string tag = "[" + inst.name + "]";
  bool has_nonperipheral = false;
  for (const auto& c : dec.clusters) has_nonperipheral |= !c.is_peripheral;
  if (!has_nonperipheral) {
    auto rep = BoundReport::make("power_bound" + tag, 0.0, 0.0);
    rep.note = "vacuous: empty nonperipheral spectrum";
    out.push_back(std::move(rep));
    return;
  }
  const double mu0 = dec.mu0;
  const double mu = 0.5 * (1.0 + mu0);
  const auto consts = power_bound_constants(d, mu0, mu);
  const double mu1 = std::sqrt(mu * mu0);
  const CMat pphi = dec.peripheral_projection;
  const double dexp = static_cast<double>(d) * d - 1.0;

  const std::vector<long> ks = {1, 2, 5, 20, 100, 200};
  for (long n : {16L, 64L}) {
    const CMat en = kicked_step(inst.cycle, inst.t, n).matrix();
    const CMat eprime = en - pphi * en * pphi;
    const double r = spectral_radius(eprime);
    const std::string suffix = tag + "[n=" + std::to_string(n) + "]";
    std::map<std::string, double> in{{"mu0", mu0}, {"mu", mu}, {"r(E'_n)", r},
                                     {"n", static_cast<double>(n)}};
    // Remark form: valid once r(E'_n) <= mu1 = sqrt(mu mu0).
    if (mu0 > 0.0 && std::isfinite(consts.k) && r <= mu1) {
      double worst = 0.0;
      CMat power = CMat::Identity(eprime.rows(), eprime.cols());
      long last_k = 0;
      for (long k : ks) {
        power = power * matrix_power(eprime, k - last_k);
        last_k = k;
        worst = std::max(worst, spectral_norm(power) / std::pow(mu, static_cast<double>(k)));
      }
      out.push_back(BoundReport::make("power_bound" + suffix, consts.k, worst, in));
    } else {
      out.push_back(BoundReport::inapplicable(
          "power_bound" + suffix,
          mu0 > 0.0 ? "r(E'_n) above sqrt(mu mu0) (n below n0) or K infinite" : "mu0 = 0", in));
    }
    // Tighter form K k^{d^2-1} mu^k: valid once r(E'_n) <= mu.
    if (r <= mu) {
      double worst = 0.0;
      CMat power = CMat::Identity(eprime.rows(), eprime.cols());
      long last_k = 0;
      for (long k : ks) {
        power = power * matrix_power(eprime, k - last_k);
        last_k = k;
        worst = std::max(worst, spectral_norm(power) /
                                    (std::pow(static_cast<double>(k), dexp) *
                                     std::pow(mu, static_cast<double>(k))));
      }
      out.push_back(BoundReport::make("power_bound_tight" + suffix, consts.k_tight, worst, in));
    } else {
      out.push_back(
          BoundReport::inapplicable("power_bound_tight" + suffix, "r(E'_n) above mu", in));
    }
  }
}

void check_stem_perturbation(const SuiteInstance& inst, const SpectralDecomposition& dec,
                  std::mt19937_64& rng, std::vector<BoundReport>& out) {
  const std::string tag = "[" + inst.name + "]";
  std::normal_distribution<double> gauss(0.0, 1.0);
  const SuperOperator e = inst.cycle.kick_product();
  const long sz = e.matrix().rows();
  auto random_y = [&](long dim) {
    CMat y(dim, dim);
    for (long c = 0; c < dim; ++c)
      for (long r = 0; r < dim; ++r) y(r, c) = Complex(gauss(rng), gauss(rng));
    return y;
  };

  // Log branch at the kick product.  Retry once with ||Y|| shrunk to half
  // the admissible threshold when the first attempt is inapplicable.
  {
    CMat y = random_y(sz);
    y *= 0.01 / spectral_norm(y);
    try {
      const BranchCut cut = choose_branch_cut(e.matrix());
      BoundReport rep = matfunc_perturbation_bound(e.matrix(), y, StemKind::kLogWithCut, cut);
      if (!rep.applicable && rep.inputs.count("beta")) {
        y *= 0.5 / (rep.inputs.at("beta") * spectral_norm(y));
        rep = matfunc_perturbation_bound(e.matrix(), y, StemKind::kLogWithCut, cut);
      }
      rep.name += tag;
      out.push_back(std::move(rep));
    } catch (const NumericalError& err) {
      out.push_back(BoundReport::inapplicable("log_perturbation" + tag, err.what()));
    }
  }

  // g branch at ad_A for the peripheral log.
  try {
    const CMat ext = dec.peripheral_part +
                     (CMat::Identity(sz, sz) - dec.peripheral_projection);
    const CMat a = primary_log(ext);
    const CMat adm = build_ad(a).ad_matrix;
    CMat y = random_y(adm.rows());
    y *= 0.01 / spectral_norm(y);
    BoundReport rep = matfunc_perturbation_bound(adm, y, StemKind::kGStrip, BranchCut{0.0});
    if (!rep.applicable && rep.inputs.count("beta")) {
      y *= 0.5 / (rep.inputs.at("beta") * spectral_norm(y));
      rep = matfunc_perturbation_bound(adm, y, StemKind::kGStrip, BranchCut{0.0});
    }
    rep.name += tag;
    out.push_back(std::move(rep));
  } catch (const NumericalError& err) {
    out.push_back(BoundReport::inapplicable("g_perturbation" + tag, err.what()));
  }
}

void check_bch_remainder(const SuiteInstance& inst, const SpectralDecomposition& dec,
                 std::mt19937_64& rng, std::vector<BoundReport>& out) {
  const std::string tag = "[" + inst.name + "]";
  std::normal_distribution<double> gauss(0.0, 1.0);
  try {
    const long sz = dec.peripheral_part.rows();
    const CMat ext = dec.peripheral_part + (CMat::Identity(sz, sz) - dec.peripheral_projection);
    const CMat x = primary_log(ext);
    CMat y(sz, sz);
    for (long c = 0; c < sz; ++c)
      for (long r = 0; r < sz; ++r) y(r, c) = Complex(gauss(rng), gauss(rng));
    y /= spectral_norm(y);
    // Honest time choice: half of the admissible threshold of the
    // denominator condition (capped at 1e-3).
    const double t = std::min(1e-3, 0.5 * bch_bound_max_time(x, 1.0));
    BoundReport rep = bch_remainder_bound(x, y, t);
    rep.name += tag;
    out.push_back(std::move(rep));
  } catch (const NumericalError& err) {
    out.push_back(BoundReport::inapplicable("bch_remainder" + tag, err.what()));
  } catch (const std::domain_error& err) {
    out.push_back(BoundReport::inapplicable("bch_remainder" + tag, err.what()));
  }
}

void check_total_correction(const SuiteInstance& inst, const SpectralDecomposition& dec,
                            std::vector<BoundReport>& out) {
  const int d = inst.cycle.dim();
  const std::string tag = "[" + inst.name + "]";
  bool has_nonperipheral = false;
  for (const auto& c : dec.clusters) has_nonperipheral |= !c.is_peripheral;
  if (!has_nonperipheral) {
    auto rep = BoundReport::make("total_correction" + tag, 0.0, 0.0);
    rep.note = "vacuous: empty nonperipheral spectrum";
    out.push_back(std::move(rep));
    return;
  }
  if (dec.mu0 <= 0.0) {
    out.push_back(BoundReport::inapplicable("total_correction" + tag,
                                            "mu0 = 0 makes the power-bound K infinite"));
    return;
  }
  const double mu0 = dec.mu0;
  const double mu = 0.5 * (1.0 + mu0);
  const double mu1 = std::sqrt(mu * mu0);
  const auto consts = power_bound_constants(d, mu0, mu);
  const double m_const = bound_channel_norm(d);
  const CMat pphi = dec.peripheral_projection;

  // Pick the evaluation n over dyadic candidates: the bound shrinks with n
  // while repeated squaring of near-unimodular eigenvalues drifts by about
  // n * eps, so stay below 2^34 and keep the bound two orders of magnitude
  // above that drift floor.  When the bound overflows for every drift-safe
  // candidate (huge K), the check is vacuous and reported as such.
  constexpr int kMaxExp = 34;
  constexpr double kBoundFloor = 1e-2;
  long chosen_n = -1;
  double chosen_bound = std::numeric_limits<double>::infinity();
  double chosen_cn = 0.0;
  long vacuous_n = -1;
  double vacuous_cn = 0.0;
  for (int k = 6; k <= kMaxExp; ++k) {
    const long n = 1L << k;
    const CMat en = kicked_step(inst.cycle, inst.t, n).matrix();
    const CMat eprime = en - pphi * en * pphi;
    if (spectral_radius(eprime) > mu1) continue;
    const double c_n = std::max(spectral_norm(eprime * pphi), spectral_norm(pphi * eprime));
    const double b = total_correction_bound(m_const, consts.k, mu, c_n, n);
    if (std::isfinite(b) && b >= kBoundFloor && b < chosen_bound) {
      chosen_n = n;
      chosen_bound = b;
      chosen_cn = c_n;
    }
    if (!std::isfinite(b) && vacuous_n < 0) {
      vacuous_n = n;
      vacuous_cn = c_n;
    }
  }

  std::map<std::string, double> in{{"mu0", mu0}, {"mu", mu}, {"K", consts.k}, {"M", m_const}};
  if (chosen_n < 0 && vacuous_n < 0) {
    out.push_back(BoundReport::inapplicable(
        "total_correction" + tag,
        "no dyadic n <= 2^34 satisfies the power-bound precondition with a resolvable bound",
        in));
    return;
  }
  const bool vacuous = chosen_n < 0;
  const long n = vacuous ? vacuous_n : chosen_n;
  in["n"] = static_cast<double>(n);
  in["C_n"] = vacuous ? vacuous_cn : chosen_cn;
  const double analytic =
      vacuous ? std::numeric_limits<double>::infinity() : chosen_bound;
  const CMat en = kicked_step(inst.cycle, inst.t, n).matrix();
  const CMat pep = pphi * en * pphi;
  const double measured = spectral_norm(matrix_power(en, n) - matrix_power(pep, n));
  auto rep = BoundReport::make("total_correction" + tag + "[n=" + std::to_string(n) + "]",
                               analytic, measured, in);
  if (vacuous) rep.note = "bound overflows to +inf for every drift-safe n (vacuously holds)";
  out.push_back(std::move(rep));
}

}  // namespace

std::vector<BoundReport> run_bound_suite(int random_instances, unsigned long seed) {
  std::vector<SuiteInstance> instances;
  instances.push_back({"weak_meas_81", models::WeakMeas{0.5, 1.0}.cycle(), 1.0});
  instances.push_back({"cptp_kick_82", models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0}.cycle(), 1.0});
  instances.push_back({"cycle_83", models::CycleKick{0.3, 0.0, 1.0, 2.0, 2.0}.cycle(), 1.0});
  instances.push_back({"multi_proj_84_sel", models::MultiProj{1.0, 2.0}.selective_cycle(), 1.0});
  instances.push_back(
      {"multi_proj_84_nonsel", models::MultiProj{1.0, 2.0}.nonselective_cycle(), 1.0});

  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_instances; ++i) {
    const int d = (i % 2 == 0) ? 2 : 3;
    const int m = 1 + (i % 3);
    const bool tp = (i % 4 != 3);
    auto kraus = models::random_kraus_set(d, m, rng, tp);
    auto gkls = models::random_gkls(d, 1, rng, 0.5);
    instances.push_back({"random_" + std::to_string(i),
                         KickCycle({kraus_to_superop(kraus)}, gkls_to_superop(gkls)), 1.0});
  }

  std::vector<BoundReport> out;
  for (const auto& inst : instances) {
    const SpectralDecomposition dec = decompose(inst.cycle.kick_product());
    check_channel_norm(inst, out);
    check_cycle_perturbation(inst, out);
    check_power_bounds(inst, dec, out);
    check_stem_perturbation(inst, dec, rng, out);
    check_bch_remainder(inst, dec, rng, out);
    check_total_correction(inst, dec, out);
  }
  return out;
}

}  // namespace zeno::experiments
