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

#include "zeno/matrix.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace zeno {

CVec vec(const CMat& x) {
  // Eigen matrices are column major, so the raw storage already is the
  // column-stacked vector.
  return Eigen::Map<const CVec>(x.data(), x.size());
}

CMat unvec(const CVec& v, int rows, int cols) {
  require(static_cast<long>(rows) * cols == v.size(), "unvec: size mismatch");
  return Eigen::Map<const CMat>(v.data(), rows, cols);
}

CMat unvec_square(const CVec& v) {
  const auto d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  require(static_cast<long>(d) * d == v.size(), "unvec_square: length is not a perfect square");
  return unvec(v, d, d);
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat matrix_unit(int d, int a, int b) {
  require(d >= 1 && a >= 0 && a < d && b >= 0 && b < d, "matrix_unit: index out of range");
  CMat e = CMat::Zero(d, d);
  e(a, b) = 1.0;
  return e;
}

double spectral_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  // BDCSVD is much faster than JacobiSVD once matrices outgrow a few dozen
  // rows (ad-matrices reach d^4 entries); both give the singular values to
  // full precision.
  if (a.rows() >= 32) {
    Eigen::BDCSVD<CMat> svd(a);
    return svd.singularValues()(0);
  }
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

double spectral_radius(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMat> es(a, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool all_finite(const CMat& a) {
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

double rcond(const CMat& a) {
  Eigen::VectorXd s;
  if (a.rows() >= 32) {
    Eigen::BDCSVD<CMat> svd(a);
    s = svd.singularValues();
  } else {
    Eigen::JacobiSVD<CMat> svd(a);
    s = svd.singularValues();
  }
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

}  // namespace zeno
