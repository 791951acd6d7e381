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

#include "zeno/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace zeno {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDominanceSlack = 1e-12;

CVec eigenvalues_of(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  return es.eigenvalues();
}

double normalize_phi_c(double phi_c) {
  while (phi_c > 0.0) phi_c -= kTwoPi;
  while (phi_c <= -kTwoPi) phi_c += kTwoPi;
  return phi_c;
}

}  // namespace

BoundReport BoundReport::make(std::string name, double analytic, double measured,
                              std::map<std::string, double> inputs) {
  BoundReport r;
  r.name = std::move(name);
  r.analytic_value = analytic;
  r.measured_value = measured;
  r.holds = measured <= analytic * (1.0 + kDominanceSlack);
  r.inputs = std::move(inputs);
  return r;
}

BoundReport BoundReport::inapplicable(std::string name, std::string reason,
                                      std::map<std::string, double> inputs) {
  BoundReport r;
  r.name = std::move(name);
  r.applicable = false;
  r.holds = false;
  r.note = std::move(reason);
  r.inputs = std::move(inputs);
  return r;
}

double bound_channel_norm(int d) {
  require(d >= 1, "bound_channel_norm: d must be >= 1");
  return std::sqrt(static_cast<double>(d));
}

double bound_cycle_perturbation(int d, int m, double t, long n, double norm_l) {
  require(d >= 1 && m >= 1 && n >= 1 && t >= 0.0 && norm_l >= 0.0,
          "bound_cycle_perturbation: invalid arguments");
  const double x = t / static_cast<double>(n) * norm_l;
  return std::pow(static_cast<double>(d), m / 2.0) * x * std::exp(x);
}

PowerBoundConstants power_bound_constants(int d, double mu0, double mu) {
  require(d >= 1, "power_bound_constants: d must be >= 1");
  if (!(mu > mu0 && mu < 1.0 && mu0 >= 0.0))
    throw std::domain_error("power_bound_constants: need mu0 < mu < 1");
  PowerBoundConstants out{};
  const double dd = static_cast<double>(d);
  const double exponent = dd * dd - 1.0;
  out.k_tight = std::exp(2.0 * std::sqrt(dd) / mu + 1.0);
  if (mu0 <= 0.0) {
    out.k = std::numeric_limits<double>::infinity();  // vacuous at mu0 = 0
  } else {
    out.k = std::exp(2.0 * std::sqrt(dd / (mu * mu0)) + 1.0) *
            std::pow(2.0 * exponent / (std::numbers::e * std::log(mu / mu0)), exponent);
  }
  out.n0_hint = 1;
  return out;
}

PowerBoundConstants power_bound_constants(const SuperOperator& e_limit, double mu) {
  const SpectralDecomposition dec = decompose(e_limit);
  return power_bound_constants(e_limit.dim(), dec.mu0, mu);
}

long n0_mu_tradeoff(const KickCycle& cycle, double mu, double t) {
  const int d = cycle.dim();
  const int m = cycle.m();
  const double norm_l = op_norm(cycle.generator());
  const SuperOperator e = cycle.kick_product();
  const SpectralDecomposition dec = decompose(e);
  const double mu0 = dec.mu0;
  if (!(mu > mu0 && mu < 1.0))
    throw std::domain_error("n0_mu_tradeoff: need mu0 < mu < 1");
  const CMat pphi = dec.peripheral_projection;

  auto lhs = [&](long n0) {
    const double pert = (1.0 + d) * std::pow(static_cast<double>(d), m / 2.0 + 2.0) *
                        (t / static_cast<double>(n0)) * norm_l *
                        std::exp(t / static_cast<double>(n0) * norm_l);
    const CMat diff = kicked_step(cycle, t, n0).matrix() - e.matrix();
    const CMat theta = diff - pphi * diff * pphi;
    const double nn = spectral_norm(schur_split(theta).strict_upper);
    return mu0 + std::pow(pert, 1.0 / (static_cast<double>(d) * d)) * (1.0 + nn);
  };

  if (lhs(1) <= mu) return 1;
  long lo = 1, hi = 2;
  const long cap = 1L << 62;
  while (lhs(hi) > mu) {
    if (hi >= cap / 2)
      throw NumericalError("n0_mu_tradeoff: inequality unsatisfiable below 2^62 (mu too close to mu0)");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (lhs(mid) <= mu)
      hi = mid;
    else
      lo = mid;
  }
  // The left side is only near-monotone (the nilpotent norm wiggles); make
  // sure the returned candidate actually satisfies the inequality.
  long n0 = hi;
  while (lhs(n0) > mu) ++n0;
  return n0;
}

double m_log_closed(double spectral_radius_x, double r, double phi_c) {
  require(spectral_radius_x >= 0.0 && r > 0.0, "m_log_closed: invalid arguments");
  const double rho = spectral_radius_x + r;
  const double pc = normalize_phi_c(phi_c);
  const double arg2 = std::max(pc * pc, (pc + kTwoPi) * (pc + kTwoPi));
  return rho * (1.0 + std::sqrt(std::log(rho) * std::log(rho) + arg2));
}

double m_log_quadrature(double spectral_radius_x, double r, double phi_c, int quad_points) {
  require(quad_points >= 64, "m_log_quadrature: too few nodes");
  const double rho = spectral_radius_x + r;
  const double pc = normalize_phi_c(phi_c);
  // Circle part of (1/2 pi) contour |log z| |dz| plus the cut contribution,
  // whose resolvent-jump weight integrates to exactly rho.
  double acc = 0.0;
  for (int j = 0; j < quad_points; ++j) {
    const double theta = pc + kTwoPi * (j + 0.5) / quad_points;
    const Complex logz(std::log(rho), theta);
    acc += std::abs(logz);
  }
  return rho + rho * acc / quad_points;
}

double m_g_closed(double spectral_radius_ad, double r, double delta) {
  require(r > 0.0 && delta > r, "m_g_closed: need 0 < R < delta");
  const double a = spectral_radius_ad + r;  // half-width, real direction
  const double b = kTwoPi - delta + r;      // half-height, imaginary direction
  const double corner = std::sqrt(a * a + b * b);
  const double dr = delta - r;
  // |g| bound on the horizontal sides: step(cos y)|sin y| + step(-cos y)
  // evaluated at y = 2 pi - (delta - R).
  const double horiz_denom = std::cos(dr) > 0.0 ? std::abs(std::sin(dr)) : 1.0;
  return (2.0 / kPi) * corner * (b / 2.0 / std::tanh(a / 2.0) + a / horiz_denom);
}

double m_g_quadrature(double spectral_radius_ad, double r, double delta, int quad_points) {
  require(r > 0.0 && delta > r && quad_points >= 64, "m_g_quadrature: invalid arguments");
  const double a = spectral_radius_ad + r;
  const double b = kTwoPi - delta + r;
  auto absg = [](Complex z) { return std::abs(g_scalar(z)); };
  double acc = 0.0;
  // Two horizontal sides (length 2a each) and two vertical sides (length 2b).
  for (int j = 0; j < quad_points; ++j) {
    const double x = -a + 2.0 * a * (j + 0.5) / quad_points;
    acc += (absg(Complex(x, b)) + absg(Complex(x, -b))) * (2.0 * a / quad_points);
    const double y = -b + 2.0 * b * (j + 0.5) / quad_points;
    acc += (absg(Complex(a, y)) + absg(Complex(-a, y))) * (2.0 * b / quad_points);
  }
  return acc / kTwoPi;
}

BoundReport matfunc_perturbation_bound(const CMat& x, const CMat& y, StemKind kind,
                                       const BranchCut& cut_for_log,
                                       const PerturbationBoundOptions& opts) {
  require(x.rows() == x.cols() && y.rows() == y.cols() && x.rows() == y.rows(),
          "matfunc_perturbation_bound: operands must be square with equal dimension");
  const int dim = static_cast<int>(x.rows());
  const std::string name =
      kind == StemKind::kLogWithCut ? "log_perturbation" : "g_perturbation";

  const SpectralDecomposition dec = decompose(x);
  double p_max = 0.0, n_max = 0.0;
  for (const auto& c : dec.clusters) {
    p_max = std::max(p_max, spectral_norm(c.projection));
    n_max = std::max(n_max, c.nilpotent_norm);
  }
  const double rx = [&] {
    double v = 0.0;
    for (const auto& c : dec.clusters) v = std::max(v, std::abs(c.eigenvalue));
    return v;
  }();

  // Spectral gap: to the cut for log, to the poles +-2 pi i for g.
  double gap = std::numeric_limits<double>::infinity();
  if (kind == StemKind::kLogWithCut) {
    for (const auto& c : dec.clusters) gap = std::min(gap, distance_to_cut(c.eigenvalue, cut_for_log));
  } else {
    double max_im = 0.0;
    for (const auto& c : dec.clusters) max_im = std::max(max_im, std::abs(c.eigenvalue.imag()));
    gap = kTwoPi - max_im;
  }
  std::map<std::string, double> in{{"D", static_cast<double>(dim)},
                                   {"P", p_max},
                                   {"N", n_max},
                                   {"normY", spectral_norm(y)},
                                   {"gap", gap}};
  if (!(gap > 0.0))
    return BoundReport::inapplicable(name, "no positive spectral gap for the contour", in);

  const double r = opts.r > 0.0 ? opts.r : 0.5 * gap;
  in["R"] = r;
  if (r >= gap) return BoundReport::inapplicable(name, "R exceeds the spectral gap", in);
  if (n_max >= r)
    return BoundReport::inapplicable(name, "nilpotent norm reaches R, resolvent bound diverges", in);

  const double beta =
      (dim * p_max / r) * (1.0 - std::pow(n_max / r, dim)) / (1.0 - n_max / r);
  const double norm_y = spectral_norm(y);
  in["beta"] = beta;
  if (beta * norm_y >= 1.0)
    return BoundReport::inapplicable(name, "beta * ||Y|| >= 1, bound inapplicable", in);

  double m_const;
  if (kind == StemKind::kLogWithCut) {
    m_const = opts.quadrature_m ? m_log_quadrature(rx, r, cut_for_log.angle)
                                : m_log_closed(rx, r, cut_for_log.angle);
  } else {
    m_const = opts.quadrature_m ? m_g_quadrature(rx, r, gap) : m_g_closed(rx, r, gap);
  }
  in["M"] = m_const;

  const double analytic = m_const * beta * beta * norm_y / (1.0 - beta * norm_y);

  double measured;
  if (kind == StemKind::kLogWithCut) {
    measured = spectral_norm(primary_log(x + y, cut_for_log) - primary_log(x, cut_for_log));
  } else {
    measured = spectral_norm(g_matrix_function(x + y) - g_matrix_function(x));
  }
  return BoundReport::make(name, analytic, measured, std::move(in));
}

namespace {

struct BchGeometry {
  double phi_c, alpha, delta1, delta2, chi, rx_exp, rx_ad;
  int dim;
};

BchGeometry bch_geometry(const CMat& x) {
  BchGeometry g{};
  g.dim = static_cast<int>(x.rows());

  Eigen::ComplexEigenSolver<CMat> es(x, true);
  if (es.info() != Eigen::Success) throw NumericalError("bch bound: eigensolver failed");
  const CVec xs = es.eigenvalues();

  double im_min = xs(0).imag(), im_max = xs(0).imag();
  g.alpha = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < xs.size(); ++i) {
    im_min = std::min(im_min, xs(i).imag());
    im_max = std::max(im_max, xs(i).imag());
    g.alpha = std::max(g.alpha, xs(i).real());
  }
  if (im_max - im_min >= kTwoPi)
    throw std::domain_error("bch bound: spectrum does not fit a 2 pi strip");
  g.phi_c = 0.5 * (im_max + im_min) - kPi;  // centered strip

  const BranchCut cut{g.phi_c};
  g.delta1 = std::numeric_limits<double>::infinity();
  g.rx_exp = 0.0;
  for (int i = 0; i < xs.size(); ++i) {
    const Complex ex = std::exp(xs(i));
    g.delta1 = std::min(g.delta1, distance_to_cut(ex, cut));
    g.rx_exp = std::max(g.rx_exp, std::abs(ex));
  }
  double max_im_diff = 0.0;
  g.rx_ad = 0.0;
  for (int i = 0; i < xs.size(); ++i)
    for (int j = 0; j < xs.size(); ++j) {
      max_im_diff = std::max(max_im_diff, std::abs(xs(i).imag() - xs(j).imag()));
      g.rx_ad = std::max(g.rx_ad, std::abs(xs(i) - xs(j)));
    }
  g.delta2 = kTwoPi - max_im_diff;

  const CMat& v = es.eigenvectors();
  const double rc = rcond(v);
  if (rc < 1e-12) throw NumericalError("bch bound: eigenvector matrix numerically singular");
  g.chi = spectral_norm(v) * spectral_norm(v.partialPivLu().solve(CMat::Identity(v.rows(), v.cols())));
  return g;
}

}  // namespace

double bch_bound_max_time(const CMat& x, double norm_y, double r) {
  const BchGeometry geo = bch_geometry(x);
  const double rr = r > 0.0 ? r : 0.5 * std::min(geo.delta1, geo.delta2);
  const double dd = static_cast<double>(geo.dim);
  const double m_const = std::max(m_log_closed(geo.rx_exp, rr, geo.phi_c),
                                  m_g_closed(geo.rx_ad, rr, geo.delta2));
  // Condition (nu = 0 branch): (1 + 2MD^4/R^2)(D^2 e^alpha / R) t chi ||Y|| e^{...} < 1;
  // ignore the trailing exponential factor for the seed estimate.
  const double coeff = (1.0 + 2.0 * m_const * std::pow(dd, 4) / (rr * rr)) *
                       (dd * dd * std::exp(geo.alpha) / rr) * geo.chi * norm_y;
  return 1.0 / coeff;
}

BoundReport bch_remainder_bound(const CMat& x, const CMat& y, double t, double r) {
  require(x.rows() == x.cols() && y.rows() == y.cols() && x.rows() == y.rows(),
          "bch_remainder_bound: operands must be square with equal dimension");
  require(t >= 0.0, "bch_remainder_bound: t must be >= 0");

  const SpectralDecomposition dec = decompose(x);
  for (const auto& c : dec.clusters)
    if (c.nilpotent_norm > 1e-8 * std::max(1.0, spectral_norm(x)))
      throw NumericalError(
          "bch_remainder_bound: defective X; the nu-scaled Jordan branch is out of scope");

  const BchGeometry geo = bch_geometry(x);
  const double rr = r > 0.0 ? r : 0.5 * std::min(geo.delta1, geo.delta2);
  if (!(rr < geo.delta1 && rr < geo.delta2) || rr <= 0.0)
    throw std::domain_error("bch_remainder_bound: R must satisfy 0 < R < min(delta1, delta2)");

  const double dd = static_cast<double>(geo.dim);
  const double m_const = std::max(m_log_closed(geo.rx_exp, rr, geo.phi_c),
                                  m_g_closed(geo.rx_ad, rr, geo.delta2));
  const double norm_y = spectral_norm(y);

  std::map<std::string, double> in{{"D", dd},         {"R", rr},       {"M", m_const},
                                   {"chi", geo.chi},  {"alpha", geo.alpha},
                                   {"delta1", geo.delta1}, {"delta2", geo.delta2},
                                   {"t", t},          {"normY", norm_y}};

  const double u = (dd * dd * std::exp(geo.alpha) / rr) * t * geo.chi * norm_y *
                   std::exp(t * geo.chi * norm_y);
  const double denom = 1.0 - (1.0 + 2.0 * m_const * std::pow(dd, 4) / (rr * rr)) * u;
  if (denom <= 0.0)
    throw std::domain_error("bch_remainder_bound: denominator condition violated (t too large)");

  const double analytic = (2.0 * m_const * m_const * std::pow(dd, 9) * std::exp(geo.alpha) /
                           std::pow(rr, 4)) *
                          t * t * std::pow(geo.chi, 3) * norm_y * norm_y *
                          std::exp(t * geo.chi * norm_y) / denom;

  // Measured remainder ||log(e^X e^{tY}) - X - t g(ad_X)(Y)|| on the branch
  // fixed by the strip.
  const BranchCut cut{geo.phi_c};
  const CMat ex = x.exp();
  const CMat prod = ex * (t * y).exp();
  const CMat z = primary_log(prod, cut);
  const double measured = spectral_norm(z - x - t * g_of_ad_apply(x, y));
  return BoundReport::make("bch_remainder", analytic, measured, std::move(in));
}

double total_correction_bound(double m_const, double k_const, double mu, double c_n, long n) {
  require(m_const >= 0.0 && k_const >= 0.0 && c_n >= 0.0 && n >= 1,
          "total_correction_bound: invalid arguments");
  if (!(mu >= 0.0 && mu < 1.0)) throw std::domain_error("total_correction_bound: need mu in [0,1)");
  const double kc = k_const * c_n / (1.0 - mu);
  const double expo = m_const * k_const * static_cast<double>(n) * c_n * c_n / (1.0 - mu);
  return m_const * ((1.0 + kc) * (1.0 + kc) * std::exp(expo) - 1.0) +
         k_const * std::pow(mu, static_cast<double>(n));
}

double analytic_distance_81(double p, double omega_t, long n) {
  require(p > 0.0 && p <= 1.0, "analytic_distance_81: need p in (0, 1]");
  require(omega_t >= 0.0 && n >= 1, "analytic_distance_81: invalid arguments");
  const double w = 2.0 / p - 1.0;
  const double q = omega_t * omega_t / 4.0;
  return omega_t / (2.0 * static_cast<double>(n)) * w *
         (std::sqrt(q + 1.0) + std::sqrt(q + 1.0 / (w * w)));
}

}  // namespace zeno
