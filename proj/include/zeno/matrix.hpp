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

#ifndef ZENO_MATRIX_HPP_
#define ZENO_MATRIX_HPP_

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Thrown when a computation cannot proceed for numerical reasons
/// (no admissible branch cut, singular input, exponent cap exceeded, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Vectorization convention used throughout: column stacking, so that
// vec(A X B) = (B^T otimes A) vec(X).  All superoperator matrices in this
// library are written with respect to this convention; never mix it with
// row stacking.
CVec vec(const CMat& x);
CMat unvec(const CVec& v, int rows, int cols);
CMat unvec_square(const CVec& v);

CMat kron(const CMat& a, const CMat& b);

/// Matrix unit E_{ab} = |a><b| of size d x d.
CMat matrix_unit(int d, int a, int b);

/// Largest singular value (2-2 operator norm on column vectors).
double spectral_norm(const CMat& a);

/// Largest eigenvalue modulus.
double spectral_radius(const CMat& a);

bool all_finite(const CMat& a);

/// Reciprocal condition number in the 2-norm (smallest/largest singular value).
double rcond(const CMat& a);

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace zeno

#endif  // ZENO_MATRIX_HPP_
