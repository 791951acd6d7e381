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

#include "zeno/superop.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace zeno {

namespace {

void check_square(const CMat& m, int d, const char* what) {
  require(m.rows() == d && m.cols() == d, std::string(what) + ": expected a " +
                                              std::to_string(d) + "x" + std::to_string(d) +
                                              " matrix");
  require(all_finite(m), std::string(what) + ": entries must be finite");
}

}  // namespace

KrausSet::KrausSet(int dim, std::vector<CMat> operators, double tol)
    : dim_(dim), ops_(std::move(operators)) {
  require(dim_ >= 1, "KrausSet: dim must be >= 1");
  require(!ops_.empty() && ops_.size() <= static_cast<size_t>(dim_) * dim_,
          "KrausSet: need 1 <= m <= d^2 operators");
  for (const auto& k : ops_) check_square(k, dim_, "KrausSet operator");
  // Subunital sum: the PSD deficit I - sum K^dag K must be >= -tol.
  CMat s = CMat::Zero(dim_, dim_);
  for (const auto& k : ops_) s += k.adjoint() * k;
  CMat deficit = CMat::Identity(dim_, dim_) - s;
  Eigen::SelfAdjointEigenSolver<CMat> es((deficit + deficit.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("KrausSet: sum K^dag K exceeds the identity (not trace-nonincreasing)");
}

bool KrausSet::trace_preserving(double tol) const {
  CMat s = CMat::Zero(dim_, dim_);
  for (const auto& k : ops_) s += k.adjoint() * k;
  return (s - CMat::Identity(dim_, dim_)).norm() <= tol * dim_;
}

GklsGenerator::GklsGenerator(CMat hamiltonian, std::vector<CMat> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  const int d = static_cast<int>(hamiltonian_.rows());
  check_square(hamiltonian_, d, "GklsGenerator hamiltonian");
  const double scale = hamiltonian_.norm();
  if ((hamiltonian_ - hamiltonian_.adjoint()).norm() > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("GklsGenerator: hamiltonian is not Hermitian within tolerance");
  for (const auto& l : jumps_) check_square(l, d, "GklsGenerator jump");
}

SuperOperator::SuperOperator(int dim, CMat matrix) : dim_(dim), m_(std::move(matrix)) {
  require(dim_ >= 1, "SuperOperator: dim must be >= 1");
  require(m_.rows() == static_cast<long>(dim_) * dim_ && m_.cols() == m_.rows(),
          "SuperOperator: matrix must be d^2 x d^2");
  require(all_finite(m_), "SuperOperator: entries must be finite");
}

CMat SuperOperator::apply(const CMat& x) const {
  require(x.rows() == dim_ && x.cols() == dim_, "SuperOperator::apply: operand dimension mismatch");
  return unvec(m_ * vec(x), dim_, dim_);
}

SuperOperator SuperOperator::identity(int dim) {
  return SuperOperator(dim, CMat::Identity(static_cast<long>(dim) * dim, static_cast<long>(dim) * dim));
}

SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
  require(a.dim_ == b.dim_, "SuperOperator product: dimension mismatch");
  return SuperOperator(a.dim_, a.m_ * b.m_);
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  require(a.dim_ == b.dim_, "SuperOperator sum: dimension mismatch");
  return SuperOperator(a.dim_, a.m_ + b.m_);
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
  require(a.dim_ == b.dim_, "SuperOperator difference: dimension mismatch");
  return SuperOperator(a.dim_, a.m_ - b.m_);
}

SuperOperator kraus_to_superop(const KrausSet& k) {
  const int d = k.dim();
  CMat s = CMat::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d);
  // vec(K X K^dag) = (conj(K) (x) K) vec(X)
  for (const auto& kj : k.operators()) s += kron(kj.conjugate(), kj);
  return SuperOperator(d, s);
}

SuperOperator gkls_to_superop(const GklsGenerator& g) {
  const int d = g.dim();
  const CMat id = CMat::Identity(d, d);
  const Complex i(0.0, 1.0);
  CMat l = -i * (kron(id, g.hamiltonian()) - kron(g.hamiltonian().transpose(), id));
  for (const auto& j : g.jumps()) {
    const CMat jj = j.adjoint() * j;
    l += kron(j.conjugate(), j) - 0.5 * kron(id, jj) - 0.5 * kron(jj.transpose(), id);
  }
  return SuperOperator(d, l);
}

SuperOperator superop_exp(const SuperOperator& l, double t, double norm_cap) {
  require(std::isfinite(t), "superop_exp: t must be finite");
  const CMat tl = t * l.matrix();
  if (spectral_norm(tl) > norm_cap)
    throw NumericalError("superop_exp: ||t L|| exceeds the cap of " + std::to_string(norm_cap));
  return SuperOperator(l.dim(), tl.exp());
}

double op_norm(const SuperOperator& a) { return spectral_norm(a.matrix()); }

CMat choi_matrix(const SuperOperator& a) {
  const int d = a.dim();
  CMat choi(static_cast<long>(d) * d, static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      choi.block(i * d, j * d, d, d) = a.apply(matrix_unit(d, i, j));
  return choi;
}

CptpReport is_cptp(const SuperOperator& a, double cp_tol, double tp_tol) {
  const int d = a.dim();
  if (cp_tol <= 0.0) cp_tol = 1e-9 * d;
  require(tp_tol > 0.0, "is_cptp: tp_tol must be positive");

  const CMat choi = choi_matrix(a);
  CptpReport rep{};
  rep.choi_hermiticity_defect = (choi - choi.adjoint()).norm();

  Eigen::SelfAdjointEigenSolver<CMat> es((choi + choi.adjoint()) / 2.0);
  rep.min_choi_eigenvalue = es.eigenvalues().minCoeff();

  // Partial trace over the output factor: block (i,j) contributes its trace.
  CMat ptr(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ptr(i, j) = choi.block(i * d, j * d, d, d).trace();
  rep.tp_defect = (ptr - CMat::Identity(d, d)).norm();

  const bool cp = rep.min_choi_eigenvalue >= -cp_tol && rep.choi_hermiticity_defect <= cp_tol;
  const bool tp = rep.tp_defect <= tp_tol * d;
  rep.verdict = !cp ? CptpVerdict::kNotCp : (tp ? CptpVerdict::kCptp : CptpVerdict::kCpOnly);
  return rep;
}

SuperOperator adjoint(const SuperOperator& a) {
  // The HS inner product equals the Euclidean one on vectorized operators,
  // so the adjoint map is the conjugate transpose of the matrix.
  return SuperOperator(a.dim(), a.matrix().adjoint());
}

SuperOperator sandwich_superop(const CMat& a, const CMat& b) {
  require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
          "sandwich_superop: operands must be square with equal dimension");
  return SuperOperator(static_cast<int>(a.rows()), kron(b.transpose(), a));
}

SuperOperator hamiltonian_superop(const CMat& h) {
  GklsGenerator g(h, {});
  return gkls_to_superop(g);
}

}  // namespace zeno
