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

#include "zeno/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace zeno {

namespace {

// Transitive-closure clustering: eigenvalues whose pairwise distance is at
// most tol end up in the same cluster (chained merging included).
std::vector<std::vector<int>> cluster_indices(const CVec& lambdas, double tol) {
  const int n = static_cast<int>(lambdas.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(lambdas(i) - lambdas(j)) <= tol) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

Complex group_mean(const CVec& lambdas, const std::vector<int>& g) {
  Complex s = 0.0;
  for (int i : g) s += lambdas(i);
  return s / static_cast<double>(g.size());
}

// Contour projection for one cluster, with the circle placed between the
// cluster members and the rest of the spectrum.
CMat contour_projection_for_cluster(const CMat& a, const CVec& lambdas,
                                    const std::vector<int>& members, int quad_points) {
  const Complex center = group_mean(lambdas, members);
  double r_in = 0.0;
  for (int i : members) r_in = std::max(r_in, std::abs(lambdas(i) - center));
  double r_out = std::numeric_limits<double>::infinity();
  std::vector<char> inside(lambdas.size(), 0);
  for (int i : members) inside[i] = 1;
  for (int i = 0; i < lambdas.size(); ++i)
    if (!inside[i]) r_out = std::min(r_out, std::abs(lambdas(i) - center));
  double radius;
  if (!std::isfinite(r_out)) {
    radius = r_in + 1.0;  // whole spectrum inside
  } else {
    if (r_in >= r_out)
      throw NumericalError("contour projection: cluster not separable from the rest of the spectrum");
    radius = 0.5 * (r_in + r_out);
  }
  // Slow geometric decay of the trapezoid error when the circle runs close
  // to eigenvalues; compensate with more nodes.
  const double crowding =
      std::max(r_in / radius, std::isfinite(r_out) ? radius / r_out : 0.0);
  int npts = quad_points;
  if (crowding > 0.5) npts = std::max(npts, 256);
  if (crowding > 0.9) npts = std::max(npts, 1024);

  const int n = static_cast<int>(a.rows());
  const CMat id = CMat::Identity(n, n);
  CMat acc = CMat::Zero(n, n);
  for (int j = 0; j < npts; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / npts;
    const Complex w = std::polar(1.0, theta);
    const Complex z = center + radius * w;
    acc += w * (z * id - a).partialPivLu().solve(id);
  }
  return (radius / npts) * acc;
}

}  // namespace

bool SpectralDecomposition::has_peripheral() const {
  for (const auto& c : clusters)
    if (c.is_peripheral) return true;
  return false;
}

double SpectralDecomposition::max_peripheral_nilpotent_norm() const {
  double m = 0.0;
  for (const auto& c : clusters)
    if (c.is_peripheral) m = std::max(m, c.nilpotent_norm);
  return m;
}

SpectralDecomposition decompose(const CMat& a, const DecomposeOptions& opts) {
  require(a.rows() == a.cols() && a.rows() >= 1, "decompose: matrix must be square");
  require(all_finite(a), "decompose: entries must be finite");
  require(opts.peripheral_tol > 0.0 && opts.reconstruction_tol > 0.0,
          "decompose: tolerances must be positive");
  const int n = static_cast<int>(a.rows());

  Eigen::ComplexEigenSolver<CMat> es(a, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw NumericalError("decompose: eigensolver failed");
  const CVec lambdas = es.eigenvalues();

  const double lam_max = lambdas.cwiseAbs().maxCoeff();
  const double cluster_tol =
      opts.cluster_tol > 0.0 ? opts.cluster_tol : 1e-7 * std::max(lam_max, 1e-30);

  SpectralDecomposition dec;
  dec.size = n;

  auto groups = cluster_indices(lambdas, cluster_tol);

  // Post-merge pass: clusters whose representatives remain closer than
  // 2 * cluster_tol are merged, with a warning (clustering ambiguity).
  bool merged = true;
  while (merged && groups.size() > 1) {
    merged = false;
    for (size_t i = 0; i < groups.size() && !merged; ++i) {
      for (size_t j = i + 1; j < groups.size() && !merged; ++j) {
        if (std::abs(group_mean(lambdas, groups[i]) - group_mean(lambdas, groups[j])) <
            2.0 * cluster_tol) {
          dec.warnings.push_back("clustering ambiguity: merged clusters closer than 2*cluster_tol");
          groups[i].insert(groups[i].end(), groups[j].begin(), groups[j].end());
          groups.erase(groups.begin() + j);
          merged = true;
        }
      }
    }
  }

  // Eigenvector route: P_k = V S_k V^{-1}.  Used when V is well conditioned
  // and the resulting projection is idempotent; otherwise the cluster is
  // flagged defective and recomputed through the contour integral.
  const CMat& v = es.eigenvectors();
  const double v_rcond = rcond(v);
  CMat v_inv;
  const bool eigen_route = v_rcond >= opts.rcond_min;
  if (eigen_route) v_inv = v.partialPivLu().solve(CMat::Identity(n, n));

  for (const auto& g : groups) {
    SpectralCluster c;
    c.eigenvalue = group_mean(lambdas, g);
    c.multiplicity = static_cast<int>(g.size());
    c.used_contour = false;
    const int m = c.multiplicity;
    bool ok = false;
    if (eigen_route) {
      // Factored form P_k = V_C W_C with W = V^{-1}: O(m n^2) instead of
      // full n^3 products per cluster.
      CMat vc(n, m), wc(m, n);
      for (int i = 0; i < m; ++i) {
        vc.col(i) = v.col(g[static_cast<size_t>(i)]);
        wc.row(i) = v_inv.row(g[static_cast<size_t>(i)]);
      }
      const CMat gram = wc * vc;  // should be I_m
      const double defect =
          (gram - CMat::Identity(m, m)).norm() * vc.norm() * wc.norm();
      if (defect <= opts.idempotency_tol * std::max(1.0, vc.norm() * wc.norm())) {
        c.projection = vc * wc;
        const CMat core = wc * a * vc;  // m x m compression of A
        c.nilpotent = vc * (core - c.eigenvalue * CMat::Identity(m, m)) * wc;
        if (m == 1) {
          // Rank-one shortcut: ||v w^dag|| = ||v|| ||w|| exactly.
          c.nilpotent_norm =
              std::abs(core(0, 0) - c.eigenvalue) * vc.col(0).norm() * wc.row(0).norm();
        } else {
          c.nilpotent_norm = spectral_norm(c.nilpotent);
        }
        ok = true;
      }
    }
    if (!ok) {
      c.projection = contour_projection_for_cluster(a, lambdas, g, opts.contour_points);
      c.used_contour = true;
      c.nilpotent = c.projection * a * c.projection - c.eigenvalue * c.projection;
      c.nilpotent_norm = spectral_norm(c.nilpotent);
    }
    c.is_peripheral = std::abs(std::abs(c.eigenvalue) - 1.0) <= opts.peripheral_tol;
    dec.clusters.push_back(std::move(c));
  }

  // Deterministic ordering: by descending modulus, then by argument.
  std::sort(dec.clusters.begin(), dec.clusters.end(),
            [](const SpectralCluster& x, const SpectralCluster& y) {
              const double ax = std::abs(x.eigenvalue), ay = std::abs(y.eigenvalue);
              if (std::abs(ax - ay) > 1e-14 * std::max(1.0, std::max(ax, ay))) return ax > ay;
              return std::arg(x.eigenvalue) < std::arg(y.eigenvalue);
            });

  // Reconstruction is the hard correctness gate.
  CMat recon = CMat::Zero(n, n);
  CMat psum = CMat::Zero(n, n);
  for (const auto& c : dec.clusters) {
    recon += c.eigenvalue * c.projection + c.nilpotent;
    psum += c.projection;
  }
  const double scale = std::max(1.0, spectral_norm(a));
  if (spectral_norm(recon - a) > opts.reconstruction_tol * scale ||
      spectral_norm(psum - CMat::Identity(n, n)) > opts.reconstruction_tol * std::sqrt(n))
    throw NumericalError("decompose: spectral reconstruction failed beyond tolerance");

  dec.peripheral_projection = CMat::Zero(n, n);
  dec.peripheral_part = CMat::Zero(n, n);
  dec.mu0 = 0.0;
  for (const auto& c : dec.clusters) {
    if (c.is_peripheral) {
      dec.peripheral_projection += c.projection;
      dec.peripheral_part += c.eigenvalue * c.projection;
    } else {
      dec.mu0 = std::max(dec.mu0, std::abs(c.eigenvalue));
    }
  }
  return dec;
}

SpectralDecomposition decompose(const SuperOperator& a, const DecomposeOptions& opts) {
  return decompose(a.matrix(), opts);
}

CMat spectral_projection_via_contour(const CMat& a, Complex center, double radius,
                                     int quad_points) {
  require(a.rows() == a.cols() && a.rows() >= 1, "contour projection: matrix must be square");
  require(radius > 0.0 && quad_points >= 8, "contour projection: invalid radius or node count");

  Eigen::ComplexEigenSolver<CMat> es(a, false);
  const CVec lambdas = es.eigenvalues();
  std::vector<int> members;
  const double margin = 1e-6 * radius;
  for (int i = 0; i < lambdas.size(); ++i) {
    const double dist = std::abs(lambdas(i) - center);
    if (std::abs(dist - radius) < margin)
      throw NumericalError("contour projection: an eigenvalue lies on the contour");
    if (dist < radius) members.push_back(i);
  }

  const int n = static_cast<int>(a.rows());
  const CMat id = CMat::Identity(n, n);
  CMat acc = CMat::Zero(n, n);
  for (int j = 0; j < quad_points; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / quad_points;
    const Complex w = std::polar(1.0, theta);
    const Complex z = center + radius * w;
    acc += w * (z * id - a).partialPivLu().solve(id);
  }
  return (radius / quad_points) * acc;
}

CMat peripheral_inverse(const SpectralDecomposition& dec) {
  CMat inv = CMat::Zero(dec.size, dec.size);
  for (const auto& c : dec.clusters)
    if (c.is_peripheral) inv += (1.0 / c.eigenvalue) * c.projection;
  return inv;
}

SchurSplit schur_split(const CMat& a) {
  require(a.rows() == a.cols(), "schur_split: matrix must be square");
  Eigen::ComplexSchur<CMat> schur(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw NumericalError("schur_split: decomposition failed");
  // Eigen returns a = Q T Q^dag; the split is reported as a = u^dag (L+N) u
  // with u = Q^dag.
  const CMat& t = schur.matrixT();
  SchurSplit out;
  out.diagonal = t.diagonal().asDiagonal();
  out.strict_upper = t;
  out.strict_upper.triangularView<Eigen::Lower>().setZero();
  out.strict_upper.diagonal().setZero();
  out.unitary = schur.matrixU().adjoint();
  return out;
}

}  // namespace zeno
