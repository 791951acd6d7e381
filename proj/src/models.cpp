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

#include "zeno/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "zeno/bounds.hpp"

namespace zeno::models {

namespace {

const Complex kI(0.0, 1.0);

CMat ket_bra(int d, int a, int b) { return matrix_unit(d, a, b); }

// Embedded qubit operators on the {|0>, |1>} block of a d-level system.
CMat embedded_x(int d) { return ket_bra(d, 0, 1) + ket_bra(d, 1, 0); }
CMat embedded_y(int d) { return -kI * (ket_bra(d, 0, 1) - ket_bra(d, 1, 0)); }
CMat embedded_z(int d) { return ket_bra(d, 0, 0) - ket_bra(d, 1, 1); }
CMat embedded_p(int d) { return ket_bra(d, 0, 0) + ket_bra(d, 1, 1); }

}  // namespace

CMat pauli_x() { return embedded_x(2); }
CMat pauli_y() { return embedded_y(2); }
CMat pauli_z() { return embedded_z(2); }

SuperOperator hs_outer(const CMat& ket, const CMat& bra) {
  require(ket.rows() == ket.cols() && bra.rows() == bra.cols() && ket.rows() == bra.rows(),
          "hs_outer: operands must be square with equal dimension");
  const CMat m = vec(ket) * vec(bra).adjoint();
  return SuperOperator(static_cast<int>(ket.rows()), m);
}

// ---------------------------------------------------------------------------
// Weak pulsed measurement on a two-level system
// ---------------------------------------------------------------------------

SuperOperator WeakMeas::measurement_projection() const {
  const CMat x = pauli_x();
  const CMat id4 = CMat::Identity(4, 4);
  return SuperOperator(2, 0.5 * (id4 + kron(x.transpose(), x)));
}

SuperOperator WeakMeas::kick() const {
  const CMat id4 = CMat::Identity(4, 4);
  return SuperOperator(2, (1.0 - p) * id4 + p * measurement_projection().matrix());
}

KickCycle WeakMeas::cycle() const {
  require(p >= 0.0 && p <= 1.0, "WeakMeas: p must lie in [0, 1]");
  require(omega_t >= 0.0, "WeakMeas: omega_t must be >= 0");
  const CMat h = 0.5 * omega_t * pauli_z();
  return KickCycle({kick()}, hamiltonian_superop(h));
}

CMat WeakMeas::hilbert_projection_plus() const {
  return 0.5 * (CMat::Identity(2, 2) + pauli_x());
}

std::array<Complex, 4> WeakMeas::step_eigenvalues(long n) const {
  const double phase = omega_t / static_cast<double>(n);
  const double w = 2.0 / p - 1.0;
  const Complex eta = std::sqrt(Complex(1.0 - w * w * std::sin(phase) * std::sin(phase), 0.0));
  const Complex lm = (1.0 - p / 2.0) * std::cos(phase);
  return {Complex(1.0, 0.0), Complex(1.0 - p, 0.0), lm + 0.5 * p * eta, lm - 0.5 * p * eta};
}

CMat WeakMeas::analytic_step(long n) const {
  const double tau = 1.0 / static_cast<double>(n);
  const double half = 0.5 * omega_t * tau;
  const CMat x = pauli_x(), y = pauli_y(), z = pauli_z();
  const CMat xt = std::cos(half) * x - std::sin(half) * y;
  const CMat yt = std::cos(half) * y + std::sin(half) * x;

  auto conj_superop = [](const CMat& a) { return kron(a.transpose(), a); };
  const CMat id4 = CMat::Identity(4, 4);
  const CMat zz = conj_superop(z);
  const CMat xx = conj_superop(xt);
  const CMat yy = conj_superop(yt);
  const CMat comm_z = kron(CMat::Identity(2, 2), z) - kron(z.transpose(), CMat::Identity(2, 2));

  const double w = 2.0 / p - 1.0;
  const double s = std::sin(omega_t * tau);
  const Complex eta = std::sqrt(Complex(1.0 - w * w * s * s, 0.0));

  const CMat p_pp = 0.25 * (id4 + zz + (xx + yy));
  const CMat p_pm = 0.25 * (id4 + zz - (xx + yy));
  const CMat core = xx - yy - kI * w * s * comm_z;
  const CMat p_mp = 0.25 * (id4 - zz + core / eta);
  const CMat p_mm = 0.25 * (id4 - zz - core / eta);

  const auto lam = step_eigenvalues(n);
  return lam[0] * p_pp + lam[1] * p_pm + lam[2] * p_mp + lam[3] * p_mm;
}

double WeakMeas::analytic_distance(long n) const { return analytic_distance_81(p, omega_t, n); }

// ---------------------------------------------------------------------------
// CPTP kick with relaxation and persistent oscillations (three levels)
// ---------------------------------------------------------------------------

KrausSet CptpKick::kraus() const {
  require(q >= 0.0 && q < 1.0, "CptpKick: q must lie in [0, 1)");
  CMat k0 = ket_bra(3, 0, 1) + ket_bra(3, 1, 0) + std::sqrt(q) * ket_bra(3, 2, 2);
  CMat k1 = std::sqrt(1.0 - q) * ket_bra(3, 0, 2);
  return KrausSet(3, {k0, k1});
}

GklsGenerator CptpKick::gkls() const {
  require(gamma_t >= 0.0, "CptpKick: gamma_t must be >= 0");
  CMat k = CMat::Zero(3, 3);
  k(0, 0) = omega0_t;
  k(1, 1) = omega1_t;
  k(2, 2) = omega2_t;
  const CMat jump = std::sqrt(gamma_t) * (ket_bra(3, 1, 1) + ket_bra(3, 2, 2));
  return GklsGenerator(k, {jump});
}

KickCycle CptpKick::cycle() const {
  return KickCycle({kraus_to_superop(kraus())}, gkls_to_superop(gkls()));
}

CMat CptpKick::peripheral_projection_closed() const {
  const CMat p = embedded_p(3), z = embedded_z(3);
  const double c = (1.0 - q) / (1.0 + q);
  return sandwich_superop(p, p).matrix() + 0.5 * hs_outer(p - c * z, ket_bra(3, 2, 2)).matrix();
}

CMat CptpKick::projection_lambda0_closed() const {
  const CMat p = embedded_p(3), x = embedded_x(3);
  return 0.5 * (hs_outer(p, CMat::Identity(3, 3)).matrix() + hs_outer(x, x).matrix());
}

CMat CptpKick::projection_lambda1_closed() const {
  const CMat y = embedded_y(3), z = embedded_z(3);
  const double c = (1.0 - q) / (1.0 + q);
  return 0.5 * (hs_outer(y, y).matrix() + hs_outer(z, z).matrix() -
                c * hs_outer(z, ket_bra(3, 2, 2)).matrix());
}

CMat CptpKick::peripheral_part_closed() const {
  const CMat p = embedded_p(3), x = embedded_x(3), z = embedded_z(3);
  const double c = (1.0 - q) / (1.0 + q);
  return sandwich_superop(x, x).matrix() + 0.5 * hs_outer(p + c * z, ket_bra(3, 2, 2)).matrix();
}

CMat CptpKick::zeno_generator_closed() const {
  const CMat e00 = ket_bra(3, 0, 0), e11 = ket_bra(3, 1, 1);
  return -0.5 * gamma_t *
         (sandwich_superop(e00, e11).matrix() + sandwich_superop(e11, e00).matrix());
}

// ---------------------------------------------------------------------------
// Cycle of two CPTP kicks (three levels)
// ---------------------------------------------------------------------------

KrausSet CycleKick::kraus_1() const {
  require(q >= 0.0 && q < 1.0, "CycleKick: q must lie in [0, 1)");
  CMat k0 = embedded_z(3) + std::sqrt(q) * ket_bra(3, 2, 2);
  CMat k1 = std::sqrt(1.0 - q) * ket_bra(3, 0, 2);
  return KrausSet(3, {k0, k1});
}

KrausSet CycleKick::kraus_2() const {
  require(q >= 0.0 && q < 1.0, "CycleKick: q must lie in [0, 1)");
  CMat k0 = embedded_y(3) + std::sqrt(q) * ket_bra(3, 2, 2);
  CMat k1 = std::sqrt(1.0 - q) * ket_bra(3, 0, 2);
  return KrausSet(3, {k0, k1});
}

GklsGenerator CycleKick::gkls() const {
  CptpKick same{q, omega0_t, omega1_t, omega2_t, gamma_t};
  return same.gkls();
}

KickCycle CycleKick::cycle() const {
  return KickCycle({kraus_to_superop(kraus_1()), kraus_to_superop(kraus_2())},
                   gkls_to_superop(gkls()));
}

CMat CycleKick::peripheral_projection_closed() const {
  const CMat p = embedded_p(3), z = embedded_z(3);
  const double c = (1.0 - q) * (1.0 - q) / (1.0 + q * q);
  return sandwich_superop(p, p).matrix() + 0.5 * hs_outer(p + c * z, ket_bra(3, 2, 2)).matrix();
}

CMat CycleKick::peripheral_part_closed() const {
  const CMat p = embedded_p(3), x = embedded_x(3), z = embedded_z(3);
  const double c = (1.0 - q) * (1.0 - q) / (1.0 + q * q);
  return sandwich_superop(x, x).matrix() + 0.5 * hs_outer(p - c * z, ket_bra(3, 2, 2)).matrix();
}

CMat CycleKick::zeno_generator_closed() const {
  CptpKick same{q, omega0_t, omega1_t, omega2_t, gamma_t};
  return same.zeno_generator_closed();
}

// ---------------------------------------------------------------------------
// Cycles of two projective measurements (three levels)
// ---------------------------------------------------------------------------

CMat MultiProj::p1() const { return ket_bra(3, 1, 1) + ket_bra(3, 2, 2); }
CMat MultiProj::q1() const { return ket_bra(3, 0, 0); }

CMat MultiProj::p2() const {
  CMat m = CMat::Zero(3, 3);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
  m(2, 2) = 1.0;
  return m;
}

CMat MultiProj::q2() const {
  CMat m = CMat::Zero(3, 3);
  m(0, 0) = m(1, 1) = 0.5;
  m(0, 1) = m(1, 0) = -0.5;
  return m;
}

CMat MultiProj::hamiltonian() const {
  return g_t * (ket_bra(3, 0, 1) + ket_bra(3, 1, 0) + ket_bra(3, 1, 2) + ket_bra(3, 2, 1));
}

GklsGenerator MultiProj::gkls() const {
  require(gamma_t >= 0.0, "MultiProj: gamma_t must be >= 0");
  return GklsGenerator(hamiltonian(), {std::sqrt(gamma_t) * ket_bra(3, 1, 2)});
}

std::vector<SuperOperator> MultiProj::selective_projections() const {
  return {sandwich_superop(p1(), p1()), sandwich_superop(p2(), p2())};
}

std::vector<SuperOperator> MultiProj::nonselective_projections() const {
  return {sandwich_superop(p1(), p1()) + sandwich_superop(q1(), q1()),
          sandwich_superop(p2(), p2()) + sandwich_superop(q2(), q2())};
}

KickCycle MultiProj::selective_cycle() const {
  return KickCycle(selective_projections(), gkls_to_superop(gkls()));
}

KickCycle MultiProj::nonselective_cycle() const {
  return KickCycle(nonselective_projections(), gkls_to_superop(gkls()));
}

CMat MultiProj::hilbert_peripheral_closed() const { return ket_bra(3, 2, 2); }

CMat MultiProj::selective_zeno_generator_closed() const {
  return -gamma_t * sandwich_superop(ket_bra(3, 2, 2), ket_bra(3, 2, 2)).matrix();
}

CMat MultiProj::nonselective_peripheral_projection_closed() const {
  const CMat p = embedded_p(3);
  return 0.5 * hs_outer(p, p).matrix() +
         sandwich_superop(ket_bra(3, 2, 2), ket_bra(3, 2, 2)).matrix();
}

CMat MultiProj::nonselective_zeno_generator_closed() const {
  const CMat p = embedded_p(3);
  return -gamma_t * hs_outer(ket_bra(3, 2, 2) - 0.5 * p, ket_bra(3, 2, 2)).matrix();
}

// ---------------------------------------------------------------------------
// Time efficiency of pulsed weak measurements
// ---------------------------------------------------------------------------

double measurement_strength(MeasurementModel model, double tau, double big_t) {
  require(tau >= 0.0 && big_t > 0.0, "measurement_strength: invalid arguments");
  switch (model) {
    case MeasurementModel::kExpSaturation:
      return 1.0 - std::exp(-tau / big_t);
    case MeasurementModel::kSine:
      require(tau <= big_t, "measurement_strength: sine profile needs tau <= T");
      return std::sin(std::numbers::pi * tau / (2.0 * big_t));
    case MeasurementModel::kSineSquared: {
      require(tau <= big_t, "measurement_strength: sine^2 profile needs tau <= T");
      const double s = std::sin(std::numbers::pi * tau / (2.0 * big_t));
      return s * s;
    }
  }
  throw std::invalid_argument("measurement_strength: unknown model");
}

EfficiencyScan efficiency_scan(MeasurementModel model, double omega_t, double big_t,
                               double target, int tau_points, int n_points,
                               double tau_max_over_t, long n_max) {
  require(tau_points >= 2 && n_points >= 2 && n_max >= 2, "efficiency_scan: grid too small");
  require(big_t > 0.0 && omega_t >= 0.0, "efficiency_scan: invalid parameters");
  if (tau_max_over_t <= 0.0)
    tau_max_over_t = (model == MeasurementModel::kExpSaturation) ? 5.0 : 1.0;

  EfficiencyScan scan;
  scan.degenerate = !std::isfinite(target);

  // Log-spaced tau in [0.01 T, tau_max] and integer n log-spaced up to n_max.
  std::vector<double> taus(static_cast<size_t>(tau_points));
  const double tau_lo = 0.01 * big_t, tau_hi = tau_max_over_t * big_t;
  for (int i = 0; i < tau_points; ++i)
    taus[static_cast<size_t>(i)] =
        tau_lo * std::pow(tau_hi / tau_lo, static_cast<double>(i) / (tau_points - 1));
  std::vector<long> ns;
  for (int i = 0; i < n_points; ++i) {
    const long n = std::lround(
        std::pow(static_cast<double>(n_max), static_cast<double>(i) / (n_points - 1)));
    if (ns.empty() || n > ns.back()) ns.push_back(n);
  }

  double best = std::numeric_limits<double>::infinity();
  double best_feasible_tau_max = -1.0;  // most projective tau that is feasible
  double best_at_tau_max = std::numeric_limits<double>::infinity();
  for (double tau : taus) {
    const double p = measurement_strength(model, tau, big_t);
    for (long n : ns) {
      const double dist = (p > 0.0) ? analytic_distance_81(p, omega_t, n)
                                    : std::numeric_limits<double>::infinity();
      scan.rows.push_back({n, tau, dist, static_cast<double>(n) * tau});
      if (scan.degenerate) continue;
      if (dist <= target) {
        const double total = static_cast<double>(n) * tau;
        if (total < best) {
          best = total;
          scan.tau_opt = tau;
          scan.n_opt = n;
        }
        if (tau > best_feasible_tau_max) {
          best_feasible_tau_max = tau;
          best_at_tau_max = total;
        } else if (tau == best_feasible_tau_max) {
          best_at_tau_max = std::min(best_at_tau_max, total);
        }
      }
    }
  }

  if (scan.degenerate) {
    scan.tau_opt = taus.front();
    scan.n_opt = ns.front();
    return scan;
  }
  if (!std::isfinite(best))
    throw NumericalError("efficiency_scan: no grid point reaches the target distance");

  scan.best_total_time = best;
  scan.interior = scan.tau_opt > taus.front() && scan.tau_opt < taus.back();
  scan.nonprojective_wins = best < best_at_tau_max ||
                            measurement_strength(model, scan.tau_opt, big_t) < 1.0;
  return scan;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

KrausSet random_kraus_set(int d, int m, std::mt19937_64& rng, bool tp, double subunital_scale) {
  require(d >= 1 && m >= 1 && m <= d * d, "random_kraus_set: need 1 <= m <= d^2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CMat> raw;
  raw.reserve(static_cast<size_t>(m));
  CMat s = CMat::Zero(d, d);
  for (int j = 0; j < m; ++j) {
    CMat g(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) g(r, c) = Complex(gauss(rng), gauss(rng));
    raw.push_back(g);
    s += g.adjoint() * g;
  }
  // Normalize: K_j = G_j S^{-1/2} makes the set exactly trace preserving.
  Eigen::SelfAdjointEigenSolver<CMat> es((s + s.adjoint()) / 2.0);
  const CMat s_inv_sqrt = es.operatorInverseSqrt();
  const double scale = tp ? 1.0 : std::sqrt(subunital_scale);
  std::vector<CMat> ops;
  ops.reserve(raw.size());
  for (auto& g : raw) ops.push_back(scale * g * s_inv_sqrt);
  return KrausSet(d, ops);
}

GklsGenerator random_gkls(int d, int jumps, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat h(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) h(r, c) = Complex(gauss(rng), gauss(rng));
  h = scale * 0.5 * (h + h.adjoint()).eval();
  std::vector<CMat> js;
  for (int j = 0; j < jumps; ++j) {
    CMat l(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) l(r, c) = Complex(gauss(rng), gauss(rng));
    js.push_back(std::sqrt(scale) * 0.5 * l);
  }
  return GklsGenerator(h, js);
}

// ---------------------------------------------------------------------------
// CLI-facing model specs
// ---------------------------------------------------------------------------

double ModelSpec::param_or(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<std::string> ModelSpec::validate() const {
  std::vector<std::string> diags;
  const std::vector<std::string> known = {"weak_meas_81", "cptp_kick_82", "cycle_83",
                                          "multi_proj_84", "efficiency_85"};
  if (std::find(known.begin(), known.end(), id) == known.end()) {
    diags.push_back("unknown model id '" + id + "'");
    return diags;
  }
  if (id == "weak_meas_81" || id == "efficiency_85") {
    const double p = param_or("p", 0.5);
    if (p < 0.0 || p > 1.0) diags.push_back("p must lie in [0, 1]");
    if (param_or("omega_t", 1.0) < 0.0) diags.push_back("omega_t must be >= 0");
  }
  if (id == "cptp_kick_82" || id == "cycle_83") {
    const double q = param_or("q", 0.3);
    if (q < 0.0 || q >= 1.0) diags.push_back("q must satisfy 0 <= q < 1 (the model is restricted to q < 1)");
    if (param_or("gamma_t", 2.0) < 0.0) diags.push_back("gamma_t must be >= 0");
  }
  if (id == "multi_proj_84") {
    if (param_or("gamma_t", 0.0) < 0.0) diags.push_back("gamma_t must be >= 0");
  }
  return diags;
}

KickCycle ModelSpec::cycle() const {
  const auto diags = validate();
  if (!diags.empty()) throw std::invalid_argument("ModelSpec: " + diags.front());
  if (id == "weak_meas_81")
    return WeakMeas{param_or("p", 0.5), param_or("omega_t", 1.0)}.cycle();
  if (id == "cptp_kick_82")
    return CptpKick{param_or("q", 0.3), param_or("omega0_t", 0.0), param_or("omega1_t", 1.0),
                    param_or("omega2_t", 2.0), param_or("gamma_t", 2.0)}
        .cycle();
  if (id == "cycle_83")
    return CycleKick{param_or("q", 0.3), param_or("omega0_t", 0.0), param_or("omega1_t", 1.0),
                     param_or("omega2_t", 2.0), param_or("gamma_t", 2.0)}
        .cycle();
  if (id == "multi_proj_84") {
    MultiProj mp{param_or("g_t", 1.0), param_or("gamma_t", 0.0)};
    return param_or("selective", 0.0) != 0.0 ? mp.selective_cycle() : mp.nonselective_cycle();
  }
  throw std::invalid_argument("ModelSpec: model '" + id + "' has no kick cycle");
}

}  // namespace zeno::models
