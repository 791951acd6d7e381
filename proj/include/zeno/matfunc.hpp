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

#ifndef ZENO_MATFUNC_HPP_
#define ZENO_MATFUNC_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "zeno/matrix.hpp"
#include "zeno/spectral.hpp"

namespace zeno {

/// Branch cut for the logarithm: the half-line {r e^{i angle}, r >= 0}.
/// The associated branch takes arguments in (angle, angle + 2 pi).
struct BranchCut {
  double angle;
};

/// Distance from a point to the cut half-line (the origin belongs to it).
double distance_to_cut(Complex z, const BranchCut& cut);

/// Branch logarithm with Im(log z) in (cut.angle, cut.angle + 2 pi).
Complex log_on_branch(Complex z, const BranchCut& cut);

/// Automatic cut selection: the half-line through the middle of the largest
/// angular gap of the spectrum as seen from the origin.  Throws when no cut
/// has positive clearance from the spectrum.
BranchCut choose_branch_cut(const CMat& e, double clearance_tol = 1e-12);

/// Primary matrix logarithm on the given branch; exp(result) = e and the
/// result commutes with everything commuting with e.  Throws on singular
/// input or when the cut crosses the spectrum.
CMat primary_log(const CMat& e, const BranchCut& cut);
CMat primary_log(const CMat& e);  // AUTO cut

/// ad_A = [A, .] as a matrix on vectorized operators; satisfies
/// apply(ad_matrix, vec(X)) = vec(A X - X A).
struct AdSuperstructure {
  CMat base;
  CMat ad_matrix;  // D^2 x D^2 for a D x D base
};
AdSuperstructure build_ad(const CMat& a);

/// Entire function f(z) = (1 - e^{-z})/z, f(0) = 1, and its reciprocal
/// g(z) = z/(1 - e^{-z}), g(0) = 1 (poles at 2 pi i k, k != 0).
Complex f_scalar(Complex z);
Complex g_scalar(Complex z);

/// Matrix of f(ad_A), assembled column by column from the top-right block of
/// exp([[A, X], [0, A]]) left-multiplied by e^{-A}.
CMat f_of_ad(const CMat& a);

/// f(ad_A) evaluated through the eigendecomposition of the ad matrix
/// (cross-check route; requires ad_A diagonalizable).
CMat f_of_ad_via_eigen(const CMat& a);

/// g(ad_A)(L): solves the f-matrix system, never evaluates g on ad_A
/// directly.  Throws when the f-matrix is singular beyond sing_tol_rel,
/// naming the offending near-zero of f.
CMat g_of_ad_apply(const CMat& a, const CMat& l, double sing_tol_rel = 1e-10);

/// Primary log of E exp((t/n) L) on the same branch as primary_log(E).
/// Detects branch jumps through an exp round-trip and suggests larger n.
CMat bch_log(const CMat& e, const CMat& l, double t, long n, const BranchCut& cut);
CMat bch_log(const CMat& e, const CMat& l, double t, long n);  // AUTO cut from e

/// Orthogonal projection onto ker(e): singular directions below
/// rel_tol * sigma_max.
CMat kernel_projector(const CMat& e, double rel_tol = 1e-10);

/// Spectral projection onto the (generalized) kernel: the eigenvalue-0
/// clusters.  Satisfies Q e = e Q = 0 when the zero eigenvalue is
/// semisimple; that two-sided identity is what the noninvertible-kick
/// reduction (E e^{tPLP/n})^n = (F e^{tPLP/n})^n P requires.
CMat spectral_kernel_projector(const CMat& e, double rel_tol = 1e-8);

/// Generic primary function from a spectral decomposition:
/// h(A) = sum_k sum_q (h^{(q)}(lambda_k)/q!) N_k^q P_k.  taylor_coeffs
/// must return {h(lambda), h'(lambda), h''(lambda)/2!, ...} up to the
/// requested order.
CMat apply_stem_function(
    const SpectralDecomposition& dec,
    const std::function<std::vector<Complex>(Complex, int)>& taylor_coeffs);

/// Taylor coefficients h^{(q)}(center)/q! by Cauchy-integral quadrature on a
/// circle of the given radius (must stay inside the analyticity domain).
std::vector<Complex> cauchy_taylor_coeffs(const std::function<Complex(Complex)>& h,
                                          Complex center, double radius, int order,
                                          int quad_points = 64);

/// g as a primary matrix function (for perturbation-bound checks); the
/// spectrum must stay clear of the poles 2 pi i k, k != 0.
CMat g_matrix_function(const CMat& x);

}  // namespace zeno

#endif  // ZENO_MATFUNC_HPP_
