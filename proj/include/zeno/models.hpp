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

#ifndef ZENO_MODELS_HPP_
#define ZENO_MODELS_HPP_

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zeno/matrix.hpp"
#include "zeno/superop.hpp"
#include "zeno/zeno_limit.hpp"

namespace zeno::models {

// All model builders work in dimensionless products (Omega t, Gamma t, g t),
// with the cycle evolved over t = 1.

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

/// Rank-one map rho -> ket * <bra|rho> on the Hilbert-Schmidt space.
SuperOperator hs_outer(const CMat& ket, const CMat& bra);

/// Two-level weak nonselective X measurement under a sigma_z rotation:
/// kick E = (1-p) 1 + p P with P = (1 + X.X)/2.
struct WeakMeas {
  double p = 0.5;
  double omega_t = 1.0;

  SuperOperator measurement_projection() const;  // P
  SuperOperator kick() const;                    // E
  KickCycle cycle() const;                       // m = 1, generator -i ad_H
  CMat hilbert_projection_plus() const;          // (I + X)/2

  /// Eigenvalues {l_++, l_+-, l_-+, l_--} of the one-step map at this n.
  std::array<Complex, 4> step_eigenvalues(long n) const;
  /// Full analytic one-step map sum_s l_s P_s at this n.
  CMat analytic_step(long n) const;
  /// Leading term of the distance-to-limit law.
  double analytic_distance(long n) const;
};

/// Three-level CPTP kick with relaxation and persistent oscillations.
struct CptpKick {
  double q = 0.3;
  double omega0_t = 0.0;
  double omega1_t = 1.0;
  double omega2_t = 2.0;
  double gamma_t = 2.0;

  KrausSet kraus() const;
  GklsGenerator gkls() const;
  KickCycle cycle() const;  // m = 1

  CMat peripheral_projection_closed() const;  // P_phi
  CMat peripheral_part_closed() const;        // E_phi (= E_phi^{-1})
  CMat projection_lambda0_closed() const;     // P_0 (eigenvalue +1)
  CMat projection_lambda1_closed() const;     // P_1 (eigenvalue -1)
  CMat zeno_generator_closed() const;         // L_Z
};

/// Cycle of two different CPTP kicks (Z-type and Y-type), same generator.
struct CycleKick {
  double q = 0.3;
  double omega0_t = 0.0;
  double omega1_t = 1.0;
  double omega2_t = 2.0;
  double gamma_t = 2.0;

  KrausSet kraus_1() const;
  KrausSet kraus_2() const;
  GklsGenerator gkls() const;
  KickCycle cycle() const;  // m = 2, order [E_1, E_2]

  CMat peripheral_projection_closed() const;
  CMat peripheral_part_closed() const;  // = E_phi^{-1}
  CMat zeno_generator_closed() const;   // same L_Z as CptpKick
};

/// Two alternating projective measurements on a three-level system.
struct MultiProj {
  double g_t = 1.0;
  double gamma_t = 0.0;

  CMat p1() const;
  CMat q1() const;
  CMat p2() const;
  CMat q2() const;
  CMat hamiltonian() const;  // g (|0><1| + |1><0| + |1><2| + |2><1|)
  GklsGenerator gkls() const;

  std::vector<SuperOperator> selective_projections() const;     // P_j . P_j
  std::vector<SuperOperator> nonselective_projections() const;  // P.P + Q.Q
  KickCycle selective_cycle() const;
  KickCycle nonselective_cycle() const;

  CMat hilbert_peripheral_closed() const;        // |2><2|
  CMat selective_zeno_generator_closed() const;  // -Gamma |2><2| . |2><2|
  CMat nonselective_peripheral_projection_closed() const;
  CMat nonselective_zeno_generator_closed() const;
};

/// Measurement-strength profiles p(tau) for the time-efficiency study.
enum class MeasurementModel { kExpSaturation, kSine, kSineSquared };

double measurement_strength(MeasurementModel model, double tau, double big_t);

struct EfficiencyRow {
  long n;
  double tau;
  double distance;
  double total_time;  // n * tau
};

struct EfficiencyScan {
  std::vector<EfficiencyRow> rows;  // full surface, ordered by (tau, n)
  double tau_opt = 0.0;
  long n_opt = 0;
  double best_total_time = 0.0;
  bool interior = false;            // tau_opt strictly inside the grid
  bool nonprojective_wins = false;  // beats the most projective feasible tau
  bool degenerate = false;          // infinite target, optimum meaningless
};

/// Scan of distance(n, tau) with p = p(tau) over a (tau, n) grid;
/// tau_opt minimizes the total measurement time n tau subject to
/// distance <= target.  Throws when no grid point reaches the target.
EfficiencyScan efficiency_scan(MeasurementModel model, double omega_t, double big_t,
                               double target, int tau_points = 200, int n_points = 200,
                               double tau_max_over_t = -1.0, long n_max = 10000);

/// Random Kraus set: trace preserving when tp, otherwise scaled strictly
/// subunital.  Deterministic for a fixed generator state.
KrausSet random_kraus_set(int d, int m, std::mt19937_64& rng, bool tp = true,
                          double subunital_scale = 0.8);

/// Random GKLS generator with the given number of jump operators.
GklsGenerator random_gkls(int d, int jumps, std::mt19937_64& rng, double scale = 1.0);

/// CLI-facing model description: id plus named parameters.
struct ModelSpec {
  std::string id;
  std::map<std::string, double> params;

  /// Schema and range diagnostics; empty means valid.
  std::vector<std::string> validate() const;
  /// The kick cycle for the dynamical models (throws for efficiency_85).
  KickCycle cycle() const;
  double param_or(const std::string& key, double fallback) const;
};

}  // namespace zeno::models

#endif  // ZENO_MODELS_HPP_
