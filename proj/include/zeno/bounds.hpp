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

#ifndef ZENO_BOUNDS_HPP_
#define ZENO_BOUNDS_HPP_

#include <map>
#include <string>

#include "zeno/matfunc.hpp"
#include "zeno/matrix.hpp"
#include "zeno/zeno_limit.hpp"

namespace zeno {

/// Named analytic bound vs measured quantity, with the dominance verdict.
struct BoundReport {
  std::string name;
  double analytic_value = 0.0;
  double measured_value = 0.0;
  bool holds = false;
  bool applicable = true;
  std::string note;
  std::map<std::string, double> inputs;

  static BoundReport make(std::string name, double analytic, double measured,
                          std::map<std::string, double> inputs = {});
  static BoundReport inapplicable(std::string name, std::string reason,
                                  std::map<std::string, double> inputs = {});
};

/// Universal channel norm bound sqrt(d).
double bound_channel_norm(int d);

/// Cycle perturbation bound d^{m/2} (t/n) ||L|| e^{(t/n)||L||} on
/// || E_m e^{tL/mn} ... E_1 e^{tL/mn} - E ||.
double bound_cycle_perturbation(int d, int m, double t, long n, double norm_l);

struct PowerBoundConstants {
  double k;        // K for ||(E_n - P E_n P)^k|| <= K mu^k
  double k_tight;  // K for the tighter K k^{d^2-1} mu^k form
  long n0_hint;    // advisory; the certified value comes from n0_mu_tradeoff
};

/// Constants of the power bound for mu in (mu0, 1).  The plain-K form
/// diverges as mu0 -> 0 (returned as +inf, a vacuous bound).
PowerBoundConstants power_bound_constants(int d, double mu0, double mu);
PowerBoundConstants power_bound_constants(const SuperOperator& e_limit, double mu);

/// Smallest n0 fulfilling the n0-mu trade-off inequality for the cycle's
/// kicked sequence; the nilpotent norm is taken from the Schur split of
/// Theta_{n0} at each candidate.  Throws when unsatisfiable below 2^62.
long n0_mu_tradeoff(const KickCycle& cycle, double mu, double t);

/// Closed-form contour constants for the matrix-function perturbation bound.
/// phi_c is normalized into (-2 pi, 0] before entering the log form.
double m_log_closed(double spectral_radius_x, double r, double phi_c);
double m_log_quadrature(double spectral_radius_x, double r, double phi_c, int quad_points = 4096);
double m_g_closed(double spectral_radius_ad, double r, double delta);
double m_g_quadrature(double spectral_radius_ad, double r, double delta, int quad_points = 4096);

enum class StemKind { kLogWithCut, kGStrip };

struct PerturbationBoundOptions {
  double r = -1.0;            // <= 0: half of the measured spectral gap
  bool quadrature_m = false;  // validate the closed form with direct quadrature
};

/// Resolvent-series perturbation bound M beta^2 ||Y|| / (1 - beta ||Y||) on
/// ||h(X+Y) - h(X)||,
/// with h = log (branch cut) or h = g (strip), including the measured
/// difference.  beta ||Y|| >= 1 is reported as inapplicable, not thrown.
BoundReport matfunc_perturbation_bound(const CMat& x, const CMat& y, StemKind kind,
                                       const BranchCut& cut_for_log,
                                       const PerturbationBoundOptions& opts = {});

/// BCH remainder bound (diagonalizable branch, nu = 0):
/// ||W(t)|| for log(e^X e^{tY}) = X + t g(ad_X)(Y) + W(t).
/// Throws on defective X (out-of-scope Jordan branch) and when the
/// denominator condition fails.
BoundReport bch_remainder_bound(const CMat& x, const CMat& y, double t, double r = -1.0);

/// Largest admissible t (up to the exponential factor) for the BCH
/// remainder bound's denominator condition; used to pick honest test times.
double bch_bound_max_time(const CMat& x, double norm_y, double r = -1.0);

/// Total correction of the asymptotic-projection expansion:
/// M[(1 + K C_n/(1-mu))^2 exp(M K n C_n^2/(1-mu)) - 1] + K mu^n.
double total_correction_bound(double m_const, double k_const, double mu, double c_n, long n);

/// First term of the two-level weak-measurement convergence law:
/// (Omega t / 2n)(2/p - 1)(sqrt((Omega t)^2/4 + 1) + sqrt((Omega t)^2/4 + (2/p-1)^{-2})).
double analytic_distance_81(double p, double omega_t, long n);

}  // namespace zeno

#endif  // ZENO_BOUNDS_HPP_
