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

#include "zeno/matfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace zeno {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CVec eigenvalues_of(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  return es.eigenvalues();
}

}  // namespace

double distance_to_cut(Complex z, const BranchCut& cut) {
  const Complex w = z * std::polar(1.0, -cut.angle);
  if (w.real() <= 0.0) return std::abs(z);
  return std::abs(w.imag());
}

Complex log_on_branch(Complex z, const BranchCut& cut) {
  double a = std::arg(z);
  while (a <= cut.angle) a += kTwoPi;
  while (a > cut.angle + kTwoPi) a -= kTwoPi;
  return Complex(std::log(std::abs(z)), a);
}

BranchCut choose_branch_cut(const CMat& e, double clearance_tol) {
  const CVec lambdas = eigenvalues_of(e);
  const double scale = lambdas.cwiseAbs().maxCoeff();
  if (lambdas.cwiseAbs().minCoeff() <= clearance_tol * std::max(scale, 1e-300))
    throw NumericalError("choose_branch_cut: spectrum touches the origin (matrix is singular)");

  std::vector<double> args(lambdas.size());
  for (int i = 0; i < lambdas.size(); ++i) {
    double a = std::arg(lambdas(i));
    if (a < 0.0) a += kTwoPi;
    args[static_cast<size_t>(i)] = a;
  }
  std::sort(args.begin(), args.end());

  // Largest angular gap, seen from the origin (wrap-around included).
  double best_gap = -1.0, best_mid = 0.0;
  const size_t n = args.size();
  for (size_t i = 0; i < n; ++i) {
    const double a0 = args[i];
    const double a1 = (i + 1 < n) ? args[i + 1] : args[0] + kTwoPi;
    const double gap = a1 - a0;
    if (gap > best_gap + 1e-15) {
      best_gap = gap;
      best_mid = 0.5 * (a0 + a1);
    }
  }
  double angle = best_mid;
  if (angle >= std::numbers::pi) angle -= kTwoPi;

  BranchCut cut{angle};
  double clearance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < lambdas.size(); ++i)
    clearance = std::min(clearance, distance_to_cut(lambdas(i), cut));
  if (clearance <= clearance_tol * std::max(scale, 1e-300))
    throw NumericalError("choose_branch_cut: no admissible cut, spectrum surrounds the origin");
  return cut;
}

CMat primary_log(const CMat& e, const BranchCut& cut) {
  require(e.rows() == e.cols() && e.rows() >= 1, "primary_log: matrix must be square");
  const CVec lambdas = eigenvalues_of(e);
  const double scale = std::max(lambdas.cwiseAbs().maxCoeff(), 1e-300);
  if (lambdas.cwiseAbs().minCoeff() <= 1e-14 * scale)
    throw NumericalError("primary_log: matrix is singular");
  for (int i = 0; i < lambdas.size(); ++i)
    if (distance_to_cut(lambdas(i), cut) <= 1e-12 * scale)
      throw NumericalError("primary_log: branch cut crosses the spectrum");

  const SpectralDecomposition dec = decompose(e);
  return apply_stem_function(dec, [&cut](Complex lambda, int order) {
    // Taylor coefficients of the branch log around lambda:
    // log(lambda) + sum_q (-1)^{q-1} x^q / (q lambda^q).
    std::vector<Complex> c(static_cast<size_t>(order) + 1);
    c[0] = log_on_branch(lambda, cut);
    Complex inv_pow = 1.0;
    for (int q = 1; q <= order; ++q) {
      inv_pow /= lambda;
      c[static_cast<size_t>(q)] = ((q % 2 == 1) ? 1.0 : -1.0) * inv_pow / static_cast<double>(q);
    }
    return c;
  });
}

CMat primary_log(const CMat& e) { return primary_log(e, choose_branch_cut(e)); }

AdSuperstructure build_ad(const CMat& a) {
  require(a.rows() == a.cols(), "build_ad: matrix must be square");
  const int d = static_cast<int>(a.rows());
  const CMat id = CMat::Identity(d, d);
  AdSuperstructure s;
  s.base = a;
  // Column stacking: vec(A X) = (I (x) A) vec X, vec(X A) = (A^T (x) I) vec X.
  s.ad_matrix = kron(id, a) - kron(a.transpose(), id);
  return s;
}

Complex f_scalar(Complex z) {
  if (std::abs(z) < 1e-4) {
    // sum_m (-z)^m / (m+1)!
    Complex acc = 0.0, term = 1.0;
    for (int m = 0; m <= 7; ++m) {
      acc += term / static_cast<double>(m + 1);
      term *= -z / static_cast<double>(m + 1);
    }
    return acc;
  }
  return (1.0 - std::exp(-z)) / z;
}

Complex g_scalar(Complex z) { return 1.0 / f_scalar(z); }

CMat f_of_ad(const CMat& a) {
  require(a.rows() == a.cols(), "f_of_ad: matrix must be square");
  const int d = static_cast<int>(a.rows());
  const long dd = static_cast<long>(d) * d;
  const CMat exp_minus_a = (-a).exp();
  CMat f(dd, dd);
  CMat block = CMat::Zero(2 * d, 2 * d);
  block.topLeftCorner(d, d) = a;
  block.bottomRightCorner(d, d) = a;
  for (long col = 0; col < dd; ++col) {
    const int i = static_cast<int>(col % d);
    const int j = static_cast<int>(col / d);
    block.topRightCorner(d, d) = matrix_unit(d, i, j);
    const CMat expb = block.exp();
    f.col(col) = vec(exp_minus_a * expb.topRightCorner(d, d));
  }
  return f;
}

CMat f_of_ad_via_eigen(const CMat& a) {
  const AdSuperstructure s = build_ad(a);
  Eigen::ComplexEigenSolver<CMat> es(s.ad_matrix, true);
  if (es.info() != Eigen::Success) throw NumericalError("f_of_ad_via_eigen: eigensolver failed");
  const CMat& v = es.eigenvectors();
  if (rcond(v) < 1e-12)
    throw NumericalError("f_of_ad_via_eigen: ad matrix is not (numerically) diagonalizable");
  CVec fl(es.eigenvalues().size());
  for (int i = 0; i < fl.size(); ++i) fl(i) = f_scalar(es.eigenvalues()(i));
  return v * fl.asDiagonal() * v.partialPivLu().solve(CMat::Identity(v.rows(), v.cols()));
}

CMat g_of_ad_apply(const CMat& a, const CMat& l, double sing_tol_rel) {
  require(a.rows() == a.cols() && l.rows() == l.cols() && a.rows() == l.rows(),
          "g_of_ad_apply: operands must be square with equal dimension");
  const CMat f = f_of_ad(a);
  Eigen::BDCSVD<CMat> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < sing_tol_rel * sv(0)) {
    // Name the eigenvalue difference of A responsible for the near-zero of f.
    const CVec xs = eigenvalues_of(a);
    double best = std::numeric_limits<double>::infinity();
    Complex offender = 0.0;
    for (int i = 0; i < xs.size(); ++i)
      for (int j = 0; j < xs.size(); ++j) {
        const Complex diff = xs(i) - xs(j);
        for (int k = -4; k <= 4; ++k) {
          if (k == 0) continue;
          const double dist = std::abs(diff - Complex(0.0, kTwoPi * k));
          if (dist < best) {
            best = dist;
            offender = diff;
          }
        }
      }
    throw NumericalError(
        "g_of_ad_apply: f(ad_A) singular; ad eigenvalue " + std::to_string(offender.real()) +
        (offender.imag() < 0 ? "-" : "+") + std::to_string(std::abs(offender.imag())) +
        "i sits at a zero of f (z ~ 2 pi i k)");
  }
  return unvec_square(svd.solve(vec(l)));
}

CMat bch_log(const CMat& e, const CMat& l, double t, long n, const BranchCut& cut) {
  require(n >= 1, "bch_log: n must be >= 1");
  const CMat m = e * ((t / static_cast<double>(n)) * l).exp();
  CMat z;
  try {
    z = primary_log(m, cut);
  } catch (const NumericalError& err) {
    throw NumericalError(std::string("bch_log: ") + err.what() +
                         " (the kick left the log-definable neighborhood; increase n)");
  }
  const double scale = std::max(1.0, spectral_norm(m));
  if (spectral_norm(z.exp() - m) > 1e-6 * scale)
    throw NumericalError("bch_log: branch jump detected by the exp round-trip; increase n");
  return z;
}

CMat bch_log(const CMat& e, const CMat& l, double t, long n) {
  return bch_log(e, l, t, n, choose_branch_cut(e));
}

CMat kernel_projector(const CMat& e, double rel_tol) {
  require(e.rows() == e.cols(), "kernel_projector: matrix must be square");
  Eigen::JacobiSVD<CMat> svd(e, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * (sv.size() > 0 ? sv(0) : 0.0);
  CMat q = CMat::Zero(e.rows(), e.cols());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= cutoff) q += svd.matrixV().col(i) * svd.matrixV().col(i).adjoint();
  return q;
}

CMat spectral_kernel_projector(const CMat& e, double rel_tol) {
  require(e.rows() == e.cols(), "spectral_kernel_projector: matrix must be square");
  const SpectralDecomposition dec = decompose(e);
  double scale = 0.0;
  for (const auto& c : dec.clusters) scale = std::max(scale, std::abs(c.eigenvalue));
  CMat q = CMat::Zero(e.rows(), e.cols());
  for (const auto& c : dec.clusters)
    if (std::abs(c.eigenvalue) <= rel_tol * std::max(scale, 1e-300)) q += c.projection;
  return q;
}

CMat apply_stem_function(
    const SpectralDecomposition& dec,
    const std::function<std::vector<Complex>(Complex, int)>& taylor_coeffs) {
  const int n = dec.size;
  CMat out = CMat::Zero(n, n);
  for (const auto& c : dec.clusters) {
    // Nilpotent corrections only where the nilpotent actually bites.
    const int order = (c.nilpotent_norm > 1e-12) ? c.multiplicity - 1 : 0;
    const auto coeffs = taylor_coeffs(c.eigenvalue, order);
    require(static_cast<int>(coeffs.size()) >= order + 1,
            "apply_stem_function: not enough Taylor coefficients");
    out += coeffs[0] * c.projection;
    CMat npow = c.nilpotent;
    for (int q = 1; q <= order; ++q) {
      out += coeffs[static_cast<size_t>(q)] * npow;
      if (q < order) npow = npow * c.nilpotent;
    }
  }
  return out;
}

std::vector<Complex> cauchy_taylor_coeffs(const std::function<Complex(Complex)>& h,
                                          Complex center, double radius, int order,
                                          int quad_points) {
  require(radius > 0.0 && quad_points >= 16, "cauchy_taylor_coeffs: bad radius or node count");
  std::vector<Complex> coeffs(static_cast<size_t>(order) + 1, 0.0);
  for (int j = 0; j < quad_points; ++j) {
    const double theta = kTwoPi * j / quad_points;
    const Complex w = std::polar(1.0, theta);
    const Complex hz = h(center + radius * w);
    Complex wq = 1.0;
    for (int q = 0; q <= order; ++q) {
      coeffs[static_cast<size_t>(q)] += hz / wq;
      wq *= w;
    }
  }
  double rq = 1.0;
  for (int q = 0; q <= order; ++q) {
    coeffs[static_cast<size_t>(q)] /= static_cast<double>(quad_points) * rq;
    rq *= radius;
  }
  return coeffs;
}

CMat g_matrix_function(const CMat& x) {
  const SpectralDecomposition dec = decompose(x);
  // Analyticity radius at lambda: distance to the nearest pole 2 pi i k, k != 0.
  auto pole_clearance = [](Complex lambda) {
    double best = std::numeric_limits<double>::infinity();
    const long k0 = std::lround(lambda.imag() / kTwoPi);
    for (long k = k0 - 2; k <= k0 + 2; ++k) {
      if (k == 0) continue;
      best = std::min(best, std::abs(lambda - Complex(0.0, kTwoPi * static_cast<double>(k))));
    }
    best = std::min(best, std::abs(lambda - Complex(0.0, kTwoPi)));
    best = std::min(best, std::abs(lambda + Complex(0.0, kTwoPi)));
    return best;
  };
  for (const auto& c : dec.clusters)
    if (pole_clearance(c.eigenvalue) < 1e-8)
      throw NumericalError("g_matrix_function: spectrum touches a pole of g at 2 pi i k");
  return apply_stem_function(dec, [&](Complex lambda, int order) {
    if (order == 0) return std::vector<Complex>{g_scalar(lambda)};
    const double radius = 0.45 * pole_clearance(lambda);
    return cauchy_taylor_coeffs([](Complex z) { return g_scalar(z); }, lambda, radius, order);
  });
}

}  // namespace zeno
