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

#ifndef ZENO_ZENO_LIMIT_HPP_
#define ZENO_ZENO_LIMIT_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "zeno/matrix.hpp"
#include "zeno/spectral.hpp"
#include "zeno/superop.hpp"

namespace zeno {

/// An ordered cycle of quantum-operation kicks E_1, ..., E_m interleaved
/// with free evolution exp((t / m n) L).
class KickCycle {
 public:
  KickCycle(std::vector<SuperOperator> kicks, SuperOperator generator);

  int m() const { return static_cast<int>(kicks_.size()); }
  int dim() const { return generator_.dim(); }
  const std::vector<SuperOperator>& kicks() const { return kicks_; }
  const SuperOperator& generator() const { return generator_; }

  /// Product E = E_m ... E_1 (matrix product, last kick leftmost).
  SuperOperator kick_product() const;

 private:
  std::vector<SuperOperator> kicks_;
  SuperOperator generator_;
};

/// Zeno limit data for a kick cycle.
struct ZenoLimit {
  SuperOperator product;                // E = E_m ... E_1
  SpectralDecomposition decomposition;  // of E
  CMat lbar;                            // averaged generator
  CMat lz;                              // Zeno generator
  CMat peripheral_part;                 // E_phi
  CMat peripheral_projection;           // P_phi
  CMat peripheral_inverse;              // E_phi^{-1}
  bool decays_to_zero;                  // empty peripheral spectrum
};

/// Zeno generator of a cycle:
/// lbar = (1/m)(L + E_phi^{-1} sum_{j=2}^m E_m..E_j L E_{j-1}..E_1),
/// L_Z = sum over peripheral clusters of P_k lbar P_k.
ZenoLimit zeno_generator(const KickCycle& cycle);

/// One cycle map E_m e^{(t/mn)L} ... E_1 e^{(t/mn)L}.
SuperOperator kicked_step(const KickCycle& cycle, double t, long n);

/// kicked_step(...)^n by exact integer powering.
SuperOperator kicked_evolution(const KickCycle& cycle, double t, long n);

/// E_phi^n exp(t L_Z); peripheral powers go through eigenvalue phases, and
/// n = 0 returns the identity.
SuperOperator zeno_limit_map(const ZenoLimit& zl, double t, long n);

struct ScanPoint {
  long n;
  double distance;
  bool odd;
};

struct ConvergenceScan {
  std::vector<ScanPoint> points;
  double odd_slope;   // log-log least-squares fit over odd n (NaN if < 2 points)
  double even_slope;  // same over even n
};

/// distance(n) = ||kicked_evolution(n) - zeno_limit_map(n)|| over n_list
/// (strictly increasing), with parity-split slope fits.
ConvergenceScan convergence_scan(const KickCycle& cycle, double t,
                                 const std::vector<long>& n_list);

/// Hermitian projection onto the intersection of ranges, computed as the
/// peripheral (lambda = 1) eigenprojection of the ordered product
/// P_m ... P_1.  Inputs must be Hermitian idempotents within tol.
CMat hermitian_intersection(const std::vector<CMat>& projections, double tol = 1e-9);

struct ProjectiveCycleLimit {
  CMat limit;                // P_phi exp(t P_phi L P_phi)
  double distance;           // || cycled product at n - limit ||
  double cross_check_error;  // vs the general zeno_limit_map on the same cycle
};

/// Cycle-of-projective-measurements limit P_phi exp(t P_phi L P_phi),
/// cross-validated against the general Zeno generator.
ProjectiveCycleLimit projective_cycle_limit(const std::vector<SuperOperator>& projections,
                                  const SuperOperator& l, double t, long n,
                                  double cross_tol = 1e-6);

struct ProjectionResiduals {
  std::vector<std::pair<long, double>> residuals;  // (n, ||E_n^n - (P E_n P)^n||)
  double slope;                                    // log-log fit
};

/// Residuals of the asymptotic-projection identity for a sequence factory.
ProjectionResiduals asymptotic_projection_check(const std::function<CMat(long)>& en_factory,
                                                const CMat& p, const std::vector<long>& n_list);

/// Least-squares slope of log(y) vs log(x); NaN when fewer than two usable
/// points remain.
double fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

/// Exact integer matrix power by repeated squaring.
CMat matrix_power(const CMat& a, long n);

}  // namespace zeno

#endif  // ZENO_ZENO_LIMIT_HPP_
