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

#include "zeno/zeno_limit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

namespace zeno {

namespace {

// Bounded worker-thread map; honors the ZENO_LAB_THREADS cap.  Results land
// in index order, so the output is deterministic regardless of scheduling.
int thread_cap() {
  if (const char* env = std::getenv("ZENO_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename F>
void parallel_for(long count, F&& body) {
  const int workers = std::min<long>(thread_cap(), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

CMat matrix_power(const CMat& a, long n) {
  require(n >= 0, "matrix_power: exponent must be nonnegative");
  CMat result = CMat::Identity(a.rows(), a.cols());
  CMat base = a;
  long k = n;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

KickCycle::KickCycle(std::vector<SuperOperator> kicks, SuperOperator generator)
    : kicks_(std::move(kicks)), generator_(std::move(generator)) {
  require(!kicks_.empty(), "KickCycle: need at least one kick");
  for (const auto& k : kicks_) {
    require(k.dim() == generator_.dim(), "KickCycle: dimension mismatch");
    if (is_cptp(k).verdict == CptpVerdict::kNotCp)
      throw std::invalid_argument("KickCycle: a kick is not completely positive");
  }
}

SuperOperator KickCycle::kick_product() const {
  SuperOperator e = kicks_.back();
  for (int j = m() - 2; j >= 0; --j) e = e * kicks_[static_cast<size_t>(j)];
  return e;
}

ZenoLimit zeno_generator(const KickCycle& cycle) {
  const int m = cycle.m();
  const CMat& l = cycle.generator().matrix();

  ZenoLimit zl{cycle.kick_product(), {}, {}, {}, {}, {}, {}, false};
  zl.decomposition = decompose(zl.product);
  zl.peripheral_projection = zl.decomposition.peripheral_projection;
  zl.peripheral_part = zl.decomposition.peripheral_part;
  zl.peripheral_inverse = peripheral_inverse(zl.decomposition);
  zl.decays_to_zero = !zl.decomposition.has_peripheral();

  // lbar = (1/m) (L + E_phi^{-1} sum_{j=2}^m E_m..E_j L E_{j-1}..E_1).
  CMat inner = CMat::Zero(l.rows(), l.cols());
  for (int j = 2; j <= m; ++j) {
    CMat prefix = CMat::Identity(l.rows(), l.cols());
    for (int i = m; i >= j; --i) prefix = prefix * cycle.kicks()[static_cast<size_t>(i - 1)].matrix();
    CMat suffix = CMat::Identity(l.rows(), l.cols());
    for (int i = j - 1; i >= 1; --i) suffix = suffix * cycle.kicks()[static_cast<size_t>(i - 1)].matrix();
    inner += prefix * l * suffix;
  }
  zl.lbar = (l + zl.peripheral_inverse * inner) / static_cast<double>(m);

  zl.lz = CMat::Zero(l.rows(), l.cols());
  for (const auto& c : zl.decomposition.clusters)
    if (c.is_peripheral) zl.lz += c.projection * zl.lbar * c.projection;
  return zl;
}

SuperOperator kicked_step(const KickCycle& cycle, double t, long n) {
  require(n >= 1 && t >= 0.0, "kicked_step: need n >= 1 and t >= 0");
  const double tau = t / (static_cast<double>(cycle.m()) * static_cast<double>(n));
  const CMat u = (tau * cycle.generator().matrix()).exp();
  CMat step = CMat::Identity(u.rows(), u.cols());
  for (int j = 1; j <= cycle.m(); ++j)
    step = cycle.kicks()[static_cast<size_t>(j - 1)].matrix() * u * step;
  return SuperOperator(cycle.dim(), step);
}

SuperOperator kicked_evolution(const KickCycle& cycle, double t, long n) {
  return SuperOperator(cycle.dim(), matrix_power(kicked_step(cycle, t, n).matrix(), n));
}

SuperOperator zeno_limit_map(const ZenoLimit& zl, double t, long n) {
  require(n >= 0, "zeno_limit_map: n must be >= 0");
  const int dim = zl.product.dim();
  const long size = zl.decomposition.size;
  CMat ephi_n;
  if (n == 0) {
    ephi_n = CMat::Identity(size, size);
  } else {
    // Unimodular powers through phases; avoids drift for large n.
    ephi_n = CMat::Zero(size, size);
    for (const auto& c : zl.decomposition.clusters)
      if (c.is_peripheral)
        ephi_n += std::polar(1.0, static_cast<double>(n) * std::arg(c.eigenvalue)) * c.projection;
  }
  return SuperOperator(dim, ephi_n * (t * zl.lz).exp());
}

ConvergenceScan convergence_scan(const KickCycle& cycle, double t,
                                 const std::vector<long>& n_list) {
  require(!n_list.empty(), "convergence_scan: n_list is empty");
  for (size_t i = 0; i + 1 < n_list.size(); ++i)
    require(n_list[i] < n_list[i + 1], "convergence_scan: n_list must be strictly increasing");
  require(n_list.front() >= 1, "convergence_scan: n must be positive");

  const ZenoLimit zl = zeno_generator(cycle);
  ConvergenceScan scan;
  scan.points.resize(n_list.size());
  parallel_for(static_cast<long>(n_list.size()), [&](long i) {
    const long n = n_list[static_cast<size_t>(i)];
    const double dist =
        spectral_norm(kicked_evolution(cycle, t, n).matrix() - zeno_limit_map(zl, t, n).matrix());
    scan.points[static_cast<size_t>(i)] = ScanPoint{n, dist, (n % 2) != 0};
  });

  std::vector<std::pair<double, double>> odd, even;
  for (const auto& p : scan.points)
    (p.odd ? odd : even).emplace_back(static_cast<double>(p.n), p.distance);
  scan.odd_slope = fit_loglog_slope(odd);
  scan.even_slope = fit_loglog_slope(even);
  return scan;
}

CMat hermitian_intersection(const std::vector<CMat>& projections, double tol) {
  require(!projections.empty(), "hermitian_intersection: need at least one projection");
  const long n = projections.front().rows();
  for (const auto& p : projections) {
    require(p.rows() == n && p.cols() == n, "hermitian_intersection: dimension mismatch");
    const double scale = std::max(1.0, p.norm());
    if ((p * p - p).norm() > tol * scale * scale)
      throw std::invalid_argument("hermitian_intersection: input is not idempotent within tolerance");
    if ((p - p.adjoint()).norm() > tol * scale)
      throw std::invalid_argument("hermitian_intersection: input is not Hermitian within tolerance");
  }

  CMat product = projections.back();
  for (int j = static_cast<int>(projections.size()) - 2; j >= 0; --j)
    product = product * projections[static_cast<size_t>(j)];

  const SpectralDecomposition dec = decompose(product);
  CMat pphi = dec.peripheral_projection;

  // The peripheral part of a product of Hermitian projections is the
  // Hermitian projection onto the intersection of ranges, and it commutes
  // with every factor.
  if ((pphi - pphi.adjoint()).norm() > 1e-7 * std::max(1.0, pphi.norm()))
    throw NumericalError("hermitian_intersection: peripheral projection is not Hermitian");
  pphi = (pphi + pphi.adjoint()) / 2.0;
  for (const auto& p : projections) {
    if ((pphi * p - pphi).norm() > 1e-7 * std::max(1.0, pphi.norm()) ||
        (p * pphi - pphi).norm() > 1e-7 * std::max(1.0, pphi.norm()))
      throw NumericalError("hermitian_intersection: P_phi P_j = P_j P_phi = P_phi failed");
  }
  return pphi;
}

ProjectiveCycleLimit projective_cycle_limit(const std::vector<SuperOperator>& projections,
                                  const SuperOperator& l, double t, long n,
                                  double cross_tol) {
  std::vector<CMat> mats;
  mats.reserve(projections.size());
  for (const auto& p : projections) mats.push_back(p.matrix());
  const CMat pphi = hermitian_intersection(mats);

  ProjectiveCycleLimit out;
  out.limit = pphi * (t * (pphi * l.matrix() * pphi)).exp();

  KickCycle cycle(projections, l);
  out.distance = spectral_norm(kicked_evolution(cycle, t, n).matrix() - out.limit);

  const ZenoLimit zl = zeno_generator(cycle);
  out.cross_check_error = spectral_norm(zeno_limit_map(zl, t, n).matrix() - out.limit);
  if (out.cross_check_error > cross_tol * std::max(1.0, spectral_norm(out.limit)))
    throw NumericalError("projective_cycle_limit: disagreement with the general Zeno limit");
  return out;
}

ProjectionResiduals asymptotic_projection_check(const std::function<CMat(long)>& en_factory,
                                                const CMat& p,
                                                const std::vector<long>& n_list) {
  require(p.rows() == p.cols(), "asymptotic_projection_check: projection must be square");
  const double scale = std::max(1.0, p.norm());
  if ((p * p - p).norm() > 1e-9 * scale * scale)
    throw std::invalid_argument("asymptotic_projection_check: P is not idempotent");

  ProjectionResiduals out;
  out.residuals.resize(n_list.size());
  parallel_for(static_cast<long>(n_list.size()), [&](long i) {
    const long n = n_list[static_cast<size_t>(i)];
    const CMat en = en_factory(n);
    const double res = spectral_norm(matrix_power(en, n) - matrix_power(p * en * p, n));
    out.residuals[static_cast<size_t>(i)] = {n, res};
  });
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, r] : out.residuals) pts.emplace_back(static_cast<double>(n), r);
  out.slope = fit_loglog_slope(pts);
  return out;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [x, y] : points)
    if (x > 0.0 && y > 1e-300) usable.emplace_back(std::log(x), std::log(y));
  if (usable.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : usable) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(usable.size());
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

}  // namespace zeno
