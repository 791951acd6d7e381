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

#include <doctest.h>

#include <cstdlib>

#include <unsupported/Eigen/MatrixFunctions>

#include "zeno/bounds.hpp"
#include "zeno/models.hpp"
#include "zeno/zeno_limit.hpp"
#include "test_helpers.hpp"

using namespace zeno;
using zeno::testing::random_complex;

TEST_CASE("weak measurement projects the unitary generator to zero") {
  const auto model = models::WeakMeas{0.5, 1.0};
  const ZenoLimit zl = zeno_generator(model.cycle());
  CHECK(spectral_norm(zl.lz) < 1e-10);
  CHECK(spectral_norm(zl.peripheral_projection - model.measurement_projection().matrix()) < 1e-9);
  CHECK(spectral_norm(zl.peripheral_part - model.measurement_projection().matrix()) < 1e-9);
}

TEST_CASE("relaxation kick projects the dephasing generator to the printed form") {
  for (double q : {0.0, 0.3, 0.6, 0.9}) {
    const auto model = models::CptpKick{q, 0.0, 1.0, 2.0, 2.0};
    const ZenoLimit zl = zeno_generator(model.cycle());
    CHECK(spectral_norm(zl.lz - model.zeno_generator_closed()) < 1e-9);
  }
}

TEST_CASE("two-kick cycle gives the same Zeno generator as the single kick") {
  for (double q : {0.0, 0.3, 0.9}) {
    const auto model = models::CycleKick{q, 0.0, 1.0, 2.0, 2.0};
    const ZenoLimit zl = zeno_generator(model.cycle());
    CHECK(spectral_norm(zl.lz - model.zeno_generator_closed()) < 1e-9);
    CHECK(spectral_norm(zl.peripheral_projection - model.peripheral_projection_closed()) < 1e-9);
    CHECK(spectral_norm(zl.peripheral_part - model.peripheral_part_closed()) < 1e-9);
    CHECK(spectral_norm(zl.peripheral_inverse - model.peripheral_part_closed()) < 1e-9);
  }
}

TEST_CASE("empty peripheral spectrum flags decay to zero") {
  // Strictly subunital kick: all eigenvalues inside the disc.
  std::mt19937_64 rng(3);
  const auto k = models::random_kraus_set(2, 2, rng, /*tp=*/false, /*subunital_scale=*/0.5);
  const auto g = models::random_gkls(2, 1, rng);
  const ZenoLimit zl = zeno_generator(KickCycle({kraus_to_superop(k)}, gkls_to_superop(g)));
  CHECK(zl.decays_to_zero);
  CHECK(spectral_norm(zl.lz) == 0.0);
  CHECK(spectral_norm(zl.peripheral_projection) == 0.0);
}

TEST_CASE("kicked_step basics") {
  const auto model = models::CycleKick{0.3, 0.0, 1.0, 2.0, 2.0};
  const KickCycle cycle = model.cycle();

  // t = 0 reduces to the bare product.
  CHECK(spectral_norm(kicked_step(cycle, 0.0, 4).matrix() - cycle.kick_product().matrix()) <
        1e-14);

  // Identity kick leaves exp((t/n) L).
  const SuperOperator l = gkls_to_superop(model.gkls());
  const KickCycle trivial({SuperOperator::identity(3)}, l);
  CHECK(spectral_norm(kicked_step(trivial, 0.8, 4).matrix() - superop_exp(l, 0.2).matrix()) <
        1e-12);

  // The step stays completely positive.
  CHECK(is_cptp(kicked_step(cycle, 1.0, 8)).verdict == CptpVerdict::kCptp);

  // Perturbation against the cycle-perturbation bound.
  const auto m82 = models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0};
  const KickCycle c82 = m82.cycle();
  const double measured =
      spectral_norm(kicked_step(c82, 1.0, 8).matrix() - c82.kick_product().matrix());
  const double bound =
      bound_cycle_perturbation(3, 1, 1.0, 8, op_norm(c82.generator()));
  CHECK(measured <= bound);
}

TEST_CASE("kicked_evolution equals the analytic map for the perfect measurement") {
  const auto model = models::WeakMeas{1.0, 1.0};
  const KickCycle cycle = model.cycle();
  for (long n : {4L, 16L, 64L}) {
    const CMat numeric = kicked_evolution(cycle, 1.0, n).matrix();
    const CMat analytic = matrix_power(model.analytic_step(n), n);
    CHECK(spectral_norm(numeric - analytic) < 1e-10);
  }
}

TEST_CASE("analytic one-step map matches the built cycle for weak measurements") {
  for (double p : {0.25, 0.5, 1.0}) {
    const auto model = models::WeakMeas{p, 1.0};
    const KickCycle cycle = model.cycle();
    for (long n : {10L, 100L}) {
      CHECK(spectral_norm(kicked_step(cycle, 1.0, n).matrix() - model.analytic_step(n)) < 1e-12);
    }
  }
}

TEST_CASE("zeno_limit_map special cases") {
  const auto model = models::WeakMeas{0.4, 1.0};
  const ZenoLimit zl = zeno_generator(model.cycle());

  // n = 0, t = 0 is the identity.
  CHECK(spectral_norm(zeno_limit_map(zl, 0.0, 0).matrix() - CMat::Identity(4, 4)) < 1e-14);

  // The weak-measurement limit is the measurement projection for all n, t.
  for (long n : {1L, 7L, 128L})
    CHECK(spectral_norm(zeno_limit_map(zl, 1.0, n).matrix() -
                        model.measurement_projection().matrix()) < 1e-9);
}

TEST_CASE("limit map of the relaxation kick alternates with the asymptotic unitary") {
  const auto model = models::CptpKick{0.0, 0.0, 1.0, 2.0, 0.0};
  const ZenoLimit zl = zeno_generator(model.cycle());
  // Peripheral part at q = 0 is the X-flip conjugation on the qubit block;
  // even and odd powers differ by it.
  const CMat even = zeno_limit_map(zl, 0.0, 2).matrix();
  const CMat odd = zeno_limit_map(zl, 0.0, 3).matrix();
  CHECK(spectral_norm(even - zl.peripheral_projection) < 1e-9);
  CHECK(spectral_norm(odd - zl.peripheral_part) < 1e-9);
}

TEST_CASE("convergence scan: trivial cycle has zero distance") {
  std::mt19937_64 rng(7);
  const auto g = models::random_gkls(2, 1, rng);
  const KickCycle cycle({SuperOperator::identity(2)}, gkls_to_superop(g));
  const auto scan = convergence_scan(cycle, 1.0, {1, 2, 4, 8});
  for (const auto& p : scan.points) CHECK(p.distance < 1e-10);
}

TEST_CASE("convergence scan: weak measurement tracks the analytic law") {
  const auto model = models::WeakMeas{1.0, 1.0};
  const auto scan = convergence_scan(model.cycle(), 1.0, {64, 128, 256});
  for (const auto& p : scan.points) {
    const double expected = model.analytic_distance(p.n);
    CHECK(std::abs(p.distance - expected) < 10.0 / (static_cast<double>(p.n) * p.n));
  }
}

TEST_CASE("convergence scan: odd-n slope is -1 for the relaxation kick") {
  const auto model = models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0};
  std::vector<long> ns;
  for (long n = 8; n <= 512; n *= 2) {
    ns.push_back(n);
    ns.push_back(n + 1);
  }
  std::sort(ns.begin(), ns.end());
  const auto scan = convergence_scan(model.cycle(), 1.0, ns);
  CHECK(scan.odd_slope == doctest::Approx(-1.0).epsilon(0.15));
  // Even subsequence decays faster (Zeno limit alternates through the flip).
  for (size_t i = 0; i + 1 < scan.points.size(); i += 2)
    CHECK(scan.points[i].distance <= scan.points[i + 1].distance + 1e-12);
}

TEST_CASE("thread cap does not change scan results") {
  const auto model = models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0};
  const std::vector<long> ns = {8, 9, 16, 17};
  const auto parallel = convergence_scan(model.cycle(), 1.0, ns);
  setenv("ZENO_LAB_THREADS", "1", 1);
  const auto serial = convergence_scan(model.cycle(), 1.0, ns);
  unsetenv("ZENO_LAB_THREADS");
  REQUIRE(parallel.points.size() == serial.points.size());
  for (size_t i = 0; i < parallel.points.size(); ++i) {
    CHECK(parallel.points[i].n == serial.points[i].n);
    CHECK(parallel.points[i].distance == serial.points[i].distance);
  }
}

TEST_CASE("n_list validation") {
  const auto model = models::WeakMeas{0.5, 1.0};
  CHECK_THROWS_AS(convergence_scan(model.cycle(), 1.0, {4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_scan(model.cycle(), 1.0, {}), std::invalid_argument);
}

TEST_CASE("hermitian_intersection of the two measurement projections") {
  const auto model = models::MultiProj{1.0, 0.0};

  // Hilbert-space projections: product has eigenvalues {1, 1/2, 0} and the
  // intersection is |2><2|.
  const CMat prod = model.p2() * model.p1();
  CMat printed = CMat::Zero(3, 3);
  printed(0, 1) = printed(1, 1) = 0.5;
  printed(2, 2) = 1.0;
  CHECK((prod - printed).norm() < 1e-15);

  const SpectralDecomposition dec = decompose(prod);
  std::vector<double> evs;
  for (const auto& c : dec.clusters)
    for (int i = 0; i < c.multiplicity; ++i) evs.push_back(c.eigenvalue.real());
  std::sort(evs.begin(), evs.end());
  REQUIRE(evs.size() == 3);
  CHECK(std::abs(evs[0]) < 1e-10);
  CHECK(std::abs(evs[1] - 0.5) < 1e-10);
  CHECK(std::abs(evs[2] - 1.0) < 1e-10);

  const CMat pphi = hermitian_intersection({model.p1(), model.p2()});
  CHECK((pphi - model.hilbert_peripheral_closed()).norm() < 1e-10);
}

TEST_CASE("hermitian_intersection trivial cases") {
  const CMat p = 0.5 * (CMat::Identity(2, 2) + models::pauli_x());
  CHECK((hermitian_intersection({p, p}) - p).norm() < 1e-10);

  const CMat q = CMat::Identity(2, 2) - p;
  CHECK(hermitian_intersection({p, q}).norm() < 1e-10);

  CHECK_THROWS_AS(hermitian_intersection({0.5 * p}), std::invalid_argument);
}

TEST_CASE("projective cycle limit: nonselective cycle with a pure Hamiltonian freezes") {
  const auto model = models::MultiProj{1.0, 0.0};
  const SuperOperator l = gkls_to_superop(model.gkls());
  const auto res = projective_cycle_limit(model.nonselective_projections(), l, 1.0, 64);
  // Zeno Hamiltonian vanishes: the limit is the intersection projection.
  CHECK(spectral_norm(res.limit - model.nonselective_peripheral_projection_closed()) < 1e-9);
  CHECK(res.cross_check_error < 1e-8);
  CHECK(res.distance < 0.2);
}

TEST_CASE("projective cycle limit: selective cycle with the dissipative generator") {
  const auto model = models::MultiProj{1.0, 2.0};
  const SuperOperator l = gkls_to_superop(model.gkls());
  const auto res = projective_cycle_limit(model.selective_projections(), l, 1.0, 64);
  const CMat pphi = sandwich_superop(model.hilbert_peripheral_closed(),
                                     model.hilbert_peripheral_closed())
                        .matrix();
  const CMat expected = pphi * model.selective_zeno_generator_closed().exp();
  CHECK(spectral_norm(res.limit - expected) < 1e-9);
  CHECK(res.cross_check_error < 1e-8);
}

TEST_CASE("projective cycle limit: single full projection reduces to the semigroup") {
  std::mt19937_64 rng(19);
  const auto g = models::random_gkls(2, 1, rng);
  const SuperOperator l = gkls_to_superop(g);
  const auto res = projective_cycle_limit({SuperOperator::identity(2)}, l, 0.7, 4);
  CHECK(spectral_norm(res.limit - superop_exp(l, 0.7).matrix()) < 1e-12);
  CHECK(res.distance < 1e-12);
}

TEST_CASE("asymptotic projection residuals") {
  const auto model = models::WeakMeas{0.5, 1.0};
  const KickCycle cycle = model.cycle();
  const ZenoLimit zl = zeno_generator(cycle);
  auto factory = [&](long n) { return kicked_step(cycle, 1.0, n).matrix(); };

  // Constant factory equal to the projection has zero residual.
  const CMat pphi = zl.peripheral_projection;
  auto const_factory = [&](long) { return pphi; };
  const auto trivial = asymptotic_projection_check(const_factory, pphi, {2, 4, 8});
  for (const auto& [n, r] : trivial.residuals) CHECK(r < 1e-12);

  std::vector<long> ns;
  for (long n = 8; n <= 1024; n *= 2) ns.push_back(n + 1);
  const auto res = asymptotic_projection_check(factory, pphi, ns);
  CHECK(res.slope == doctest::Approx(-1.0).epsilon(0.2));

  CHECK_THROWS_AS(
      asymptotic_projection_check(factory, 0.5 * pphi, {2, 4}), std::invalid_argument);
}

TEST_CASE("asymptotic projection residual decays for the two-kick cycle") {
  const auto model = models::CycleKick{0.6, 0.0, 1.0, 2.0, 2.0};
  const KickCycle cycle = model.cycle();
  const ZenoLimit zl = zeno_generator(cycle);
  auto factory = [&](long n) { return kicked_step(cycle, 1.0, n).matrix(); };
  const auto res = asymptotic_projection_check(factory, zl.peripheral_projection, {8, 64});
  CHECK(res.residuals[1].second < res.residuals[0].second);
}

TEST_CASE("Zeno limit consistency on random CPTP cycles") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 2 + (trial % 2);
    const int m = 1 + (trial % 3);
    std::vector<SuperOperator> kicks;
    for (int j = 0; j < m; ++j)
      kicks.push_back(kraus_to_superop(models::random_kraus_set(d, 1 + (trial + j) % 3, rng)));
    const KickCycle cycle(kicks, gkls_to_superop(models::random_gkls(d, 1, rng, 0.5)));
    const ZenoLimit zl = zeno_generator(cycle);

    double prev = -1.0;
    for (long n : {9L, 65L, 1025L}) {
      const double dist =
          spectral_norm(kicked_evolution(cycle, 1.0, n).matrix() -
                        zeno_limit_map(zl, 1.0, n).matrix());
      CHECK(static_cast<double>(n) * dist < 200.0);
      if (prev >= 0.0) CHECK(dist <= prev + 1e-9);
      prev = dist;
    }
  }
}

TEST_CASE("single-kick reduction: m = 1 leaves lbar equal to the generator") {
  const auto model = models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0};
  const KickCycle cycle = model.cycle();
  const ZenoLimit zl = zeno_generator(cycle);
  CHECK(spectral_norm(zl.lbar - cycle.generator().matrix()) < 1e-12);

  // Single-kick form sum_k P_k L P_k over peripheral clusters.
  CMat lz = CMat::Zero(9, 9);
  for (const auto& c : zl.decomposition.clusters)
    if (c.is_peripheral) lz += c.projection * cycle.generator().matrix() * c.projection;
  CHECK(spectral_norm(lz - zl.lz) < 1e-12);
}

TEST_CASE("Zeno generator block structure over peripheral clusters") {
  const auto model = models::CycleKick{0.3, 0.0, 1.0, 2.0, 2.0};
  const ZenoLimit zl = zeno_generator(model.cycle());
  for (const auto& ck : zl.decomposition.clusters) {
    if (!ck.is_peripheral) continue;
    for (const auto& cl : zl.decomposition.clusters) {
      if (!cl.is_peripheral || &ck == &cl) continue;
      CHECK(spectral_norm(ck.projection * zl.lz * cl.projection) < 1e-9);
    }
  }
  // P_phi L_Z P_phi = L_Z.
  const CMat pphi = zl.peripheral_projection;
  CHECK(spectral_norm(pphi * zl.lz * pphi - zl.lz) < 1e-9);
}

TEST_CASE("intersection projection properties on random pairs") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    // Random Hermitian projections from random orthonormal columns.
    auto random_proj = [&](int d, int rank) {
      const CMat g = random_complex(d, rank, rng);
      Eigen::HouseholderQR<CMat> qr(g);
      const CMat q = qr.householderQ() * CMat::Identity(d, rank);
      return (q * q.adjoint()).eval();
    };
    const CMat a = random_proj(4, 2 + trial % 2);
    const CMat b = random_proj(4, 3);
    const CMat pphi = hermitian_intersection({a, b});
    CHECK((pphi - pphi.adjoint()).norm() < 1e-9);
    CHECK((pphi * pphi - pphi).norm() < 1e-9);
    CHECK((a * pphi - pphi).norm() < 1e-7);
    CHECK((b * pphi - pphi).norm() < 1e-7);
  }
}
