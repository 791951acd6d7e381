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

#ifndef ZENO_SPECTRAL_HPP_
#define ZENO_SPECTRAL_HPP_

#include <string>
#include <vector>

#include "zeno/matrix.hpp"
#include "zeno/superop.hpp"

namespace zeno {

/// One eigenvalue cluster of the canonical form A = sum_k (lambda_k P_k + N_k).
struct SpectralCluster {
  Complex eigenvalue;   // cluster representative (mean of the merged values)
  CMat projection;      // P_k
  CMat nilpotent;       // N_k = P_k A P_k - lambda_k P_k
  int multiplicity;     // algebraic multiplicity
  bool is_peripheral;   // | |lambda| - 1 | <= peripheral_tol
  bool used_contour;    // projection came from contour quadrature
  double nilpotent_norm;
};

struct DecomposeOptions {
  double cluster_tol = -1.0;       // <= 0: auto, 1e-7 * max |lambda|
  double peripheral_tol = 1e-9;    // band around the unit circle
  double reconstruction_tol = 1e-6;
  double rcond_min = 1e-10;        // eigenvector matrix conditioning gate
  double idempotency_tol = 1e-8;   // accept eigenvector-route projections
  int contour_points = 64;
};

struct SpectralDecomposition {
  int size;  // matrix side D
  std::vector<SpectralCluster> clusters;
  CMat peripheral_projection;  // P_phi = sum of peripheral P_k
  CMat peripheral_part;        // E_phi = sum of peripheral lambda_k P_k
  double mu0;                  // spectral radius of the nonperipheral part (0 if empty)
  std::vector<std::string> warnings;

  bool has_peripheral() const;
  /// Largest peripheral nilpotent norm (0 when no peripheral cluster).
  double max_peripheral_nilpotent_norm() const;
};

/// Canonical (Jordan-type) decomposition with eigenvalue clustering.
/// Projections come from right/left eigenvector outer products when the
/// eigenvector matrix is well conditioned, and from contour quadrature for
/// clusters flagged defective.  Reconstruction failure beyond
/// reconstruction_tol is a hard error.
SpectralDecomposition decompose(const CMat& a, const DecomposeOptions& opts = {});
SpectralDecomposition decompose(const SuperOperator& a, const DecomposeOptions& opts = {});

/// Riesz projection (1/2 pi i) contour integral of the resolvent over the
/// circle |z - center| = radius, by the trapezoid rule.  The circle must
/// separate one eigenvalue cluster from the rest.
CMat spectral_projection_via_contour(const CMat& a, Complex center, double radius,
                                     int quad_points = 64);

/// E_phi^{-1} = sum over peripheral clusters of lambda_k^{-1} P_k.
/// Empty peripheral spectrum yields the zero map.
CMat peripheral_inverse(const SpectralDecomposition& dec);

/// Schur triangulation a = u^dag (diagonal + strict_upper) u.
struct SchurSplit {
  CMat diagonal;      // Lambda
  CMat strict_upper;  // N, nilpotent
  CMat unitary;       // u
};
SchurSplit schur_split(const CMat& a);

}  // namespace zeno

#endif  // ZENO_SPECTRAL_HPP_
