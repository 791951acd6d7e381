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

#include <unsupported/Eigen/MatrixFunctions>

#include "zeno/models.hpp"
#include "zeno/superop.hpp"
#include "test_helpers.hpp"

using namespace zeno;
using zeno::testing::apply_kraus_directly;
using zeno::testing::random_complex;

TEST_CASE("vectorization round-trips exactly") {
  std::mt19937_64 rng(11);
  const CMat x = random_complex(3, 3, rng);
  CHECK((unvec_square(vec(x)) - x).norm() == 0.0);
}

TEST_CASE("identity Kraus set gives the identity superoperator") {
  KrausSet k(2, {CMat::Identity(2, 2)});
  const SuperOperator s = kraus_to_superop(k);
  CHECK((s.matrix() - CMat::Identity(4, 4)).norm() == doctest::Approx(0.0));
}

TEST_CASE("Pauli-X Kraus action matches the brute-force sum on matrix units") {
  const CMat x = models::pauli_x();
  KrausSet k(2, {x});
  const SuperOperator s = kraus_to_superop(k);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const CMat unit = matrix_unit(2, a, b);
      CHECK((s.apply(unit) - apply_kraus_directly({x}, unit)).norm() < 1e-15);
    }
}

TEST_CASE("relaxation-kick Kraus set is trace preserving and maps to a CPTP superoperator") {
  const auto model = models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0};
  const KrausSet k = model.kraus();
  CHECK(k.trace_preserving());
  const auto rep = is_cptp(kraus_to_superop(k));
  CHECK(rep.verdict == CptpVerdict::kCptp);
}

TEST_CASE("Kraus constructor rejects dimension mismatch and trace-increasing sets") {
  CHECK_THROWS_AS(KrausSet(2, {CMat::Identity(3, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(KrausSet(2, {2.0 * CMat::Identity(2, 2)}), std::invalid_argument);
}

TEST_CASE("zero GKLS generator yields the zero superoperator") {
  GklsGenerator g(CMat::Zero(2, 2), {});
  CHECK(gkls_to_superop(g).matrix().norm() == 0.0);
}

TEST_CASE("GKLS rejects a non-Hermitian hamiltonian") {
  CMat h = CMat::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(GklsGenerator(h, {}), std::invalid_argument);
}

TEST_CASE("sigma_z rotation leaves Z invariant and rotates X, Y at the drive frequency") {
  const double omega = 1.3, t = 0.7;
  const CMat h = 0.5 * omega * models::pauli_z();
  const SuperOperator l = hamiltonian_superop(h);
  const SuperOperator u = superop_exp(l, t);

  CHECK((u.apply(models::pauli_z()) - models::pauli_z()).norm() < 1e-12);
  const CMat x_expect =
      std::cos(omega * t) * models::pauli_x() + std::sin(omega * t) * models::pauli_y();
  CHECK((u.apply(models::pauli_x()) - x_expect).norm() < 1e-12);
  const CMat y_expect =
      std::cos(omega * t) * models::pauli_y() - std::sin(omega * t) * models::pauli_x();
  CHECK((u.apply(models::pauli_y()) - y_expect).norm() < 1e-12);
}

TEST_CASE("three-level dephasing generator conserves populations") {
  const auto model = models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0};
  const SuperOperator u = superop_exp(gkls_to_superop(model.gkls()), 1.0);
  for (int i = 0; i < 3; ++i) {
    const CMat rho = matrix_unit(3, i, i);
    const CMat evolved = u.apply(rho);
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(evolved(j, j) - rho(j, j)) < 1e-12);
  }
  CHECK(is_cptp(u).verdict == CptpVerdict::kCptp);
}

TEST_CASE("superop_exp basics") {
  std::mt19937_64 rng(5);
  const auto g = models::random_gkls(2, 1, rng);
  const SuperOperator l = gkls_to_superop(g);

  CHECK((superop_exp(l, 0.0).matrix() - CMat::Identity(4, 4)).norm() < 1e-15);

  // exp(t(-i ad_H)) acts by unitary conjugation.
  const CMat h = 0.5 * 2.1 * models::pauli_z();
  const SuperOperator u = superop_exp(hamiltonian_superop(h), 0.9);
  const CMat uh = (Complex(0, -0.9) * h).exp();
  const CMat rho = random_complex(2, 2, rng);
  CHECK((u.apply(rho) - uh * rho * uh.adjoint()).norm() < 1e-12);

  CHECK_THROWS_AS(superop_exp(l, 1e9), NumericalError);
}

TEST_CASE("multi-proj dissipator is CPTP at Gamma t = 2") {
  const auto model = models::MultiProj{1.0, 2.0};
  const SuperOperator u = superop_exp(gkls_to_superop(model.gkls()), 1.0);
  CHECK(is_cptp(u).verdict == CptpVerdict::kCptp);
}

TEST_CASE("operator norm of the identity and of channels") {
  CHECK(op_norm(SuperOperator::identity(2)) == doctest::Approx(1.0));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto k = models::random_kraus_set(2, 1 + (i % 4), rng);
    CHECK(op_norm(kraus_to_superop(k)) <= std::sqrt(2.0) + 1e-8);
  }

  const auto weak = models::WeakMeas{0.5, 1.0};
  const double norm = op_norm(weak.kick());
  CHECK(norm >= 1.0 - 1e-12);
  CHECK(norm <= std::sqrt(2.0) + 1e-12);
}

TEST_CASE("is_cptp classifies identity, transpose, and the peripheral projection") {
  CHECK(is_cptp(SuperOperator::identity(2)).verdict == CptpVerdict::kCptp);

  // Transpose map: positive and TP but not CP.
  CMat tr = CMat::Zero(4, 4);
  tr(0, 0) = tr(3, 3) = 1.0;
  tr(1, 2) = tr(2, 1) = 1.0;
  CHECK(is_cptp(SuperOperator(2, tr)).verdict == CptpVerdict::kNotCp);

  const auto model = models::CptpKick{0.3, 0.0, 1.0, 2.0, 2.0};
  CHECK(is_cptp(SuperOperator(3, model.peripheral_projection_closed())).verdict ==
        CptpVerdict::kCptp);
}

TEST_CASE("adjoint properties") {
  CHECK((adjoint(SuperOperator::identity(2)).matrix() - CMat::Identity(4, 4)).norm() == 0.0);

  std::mt19937_64 rng(23);
  const auto k = models::random_kraus_set(3, 2, rng);
  const SuperOperator e = kraus_to_superop(k);

  // Adjoint of a CPTP map is unital.
  CHECK((adjoint(e).apply(CMat::Identity(3, 3)) - CMat::Identity(3, 3)).norm() < 1e-10);

  // Adjoint equals the Kraus set with K -> K^dag.
  std::vector<CMat> daggered;
  for (const auto& op : k.operators()) daggered.push_back(op.adjoint());
  const CMat rho = random_complex(3, 3, rng);
  CHECK((adjoint(e).apply(rho) - apply_kraus_directly(daggered, rho)).norm() < 1e-12);

  // Involution and antihomomorphism.
  const SuperOperator a(3, random_complex(9, 9, rng));
  const SuperOperator b(3, random_complex(9, 9, rng));
  CHECK((adjoint(adjoint(a)).matrix() - a.matrix()).norm() == 0.0);
  CHECK((adjoint(a * b).matrix() - (adjoint(b) * adjoint(a)).matrix()).norm() < 1e-12);

  // <X | A(Y)> = <adjoint(A)(X) | Y> for random operands.
  const CMat x = random_complex(3, 3, rng), y = random_complex(3, 3, rng);
  const Complex lhs = (x.adjoint() * a.apply(y)).trace();
  const Complex rhs = (adjoint(a).apply(x).adjoint() * y).trace();
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("trace-preserving random Kraus sets give CPTP maps") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + (i % 2);
    const auto k = models::random_kraus_set(d, 1 + (i % 3), rng);
    CHECK(k.trace_preserving(1e-10));
    CHECK(is_cptp(kraus_to_superop(k)).verdict == CptpVerdict::kCptp);
  }
}

TEST_CASE("semigroup property of the GKLS exponential") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const auto g = models::random_gkls(2 + (i % 2), 1 + (i % 2), rng);
    const SuperOperator l = gkls_to_superop(g);
    const double s = unif(rng), t = unif(rng);
    const CMat lhs = superop_exp(l, s + t).matrix();
    const CMat rhs = (superop_exp(l, s) * superop_exp(l, t)).matrix();
    CHECK(spectral_norm(lhs - rhs) < 1e-9);
  }
}
