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

#ifndef ZENO_SUPEROP_HPP_
#define ZENO_SUPEROP_HPP_

#include <vector>

#include "zeno/matrix.hpp"

namespace zeno {

/// Kraus representation of a quantum operation: a set of d x d operators
/// with sum_j K_j^dag K_j <= I (trace nonincreasing).  Equality within
/// tolerance marks the trace-preserving (channel) case.
class KrausSet {
 public:
  KrausSet(int dim, std::vector<CMat> operators, double tol = 1e-9);

  int dim() const { return dim_; }
  const std::vector<CMat>& operators() const { return ops_; }

  /// True when sum_j K_j^dag K_j = I within tol.
  bool trace_preserving(double tol = 1e-10) const;

 private:
  int dim_;
  std::vector<CMat> ops_;
};

/// GKLS generator data: Hermitian Hamiltonian (rad/time) plus jump
/// operators (1/sqrt(time)).
class GklsGenerator {
 public:
  GklsGenerator(CMat hamiltonian, std::vector<CMat> jumps);

  int dim() const { return static_cast<int>(hamiltonian_.rows()); }
  const CMat& hamiltonian() const { return hamiltonian_; }
  const std::vector<CMat>& jumps() const { return jumps_; }

 private:
  CMat hamiltonian_;
  std::vector<CMat> jumps_;
};

/// A linear map on the Hilbert-Schmidt space of d x d operators, stored as
/// its d^2 x d^2 matrix under the global column-stacking vectorization.
class SuperOperator {
 public:
  SuperOperator(int dim, CMat matrix);

  int dim() const { return dim_; }
  const CMat& matrix() const { return m_; }

  /// Action on an operator: unvec(M * vec(X)).
  CMat apply(const CMat& x) const;

  static SuperOperator identity(int dim);

  friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);

 private:
  int dim_;  // Hilbert space dimension d; matrix is d^2 x d^2
  CMat m_;
};

SuperOperator kraus_to_superop(const KrausSet& k);
SuperOperator gkls_to_superop(const GklsGenerator& g);

/// exp(t L).  Rejects ||t L|| above the overflow cap (default 1e4).
SuperOperator superop_exp(const SuperOperator& l, double t, double norm_cap = 1e4);

/// 2-2 operator norm on the Hilbert-Schmidt space = largest singular value.
double op_norm(const SuperOperator& a);

enum class CptpVerdict { kCptp, kCpOnly, kNotCp };

struct CptpReport {
  CptpVerdict verdict;
  double min_choi_eigenvalue;  // negative part signals CP failure
  double choi_hermiticity_defect;
  double tp_defect;  // || Tr_out(Choi) - I ||
};

/// Choi matrix C = sum_{ab} E_{ab} (x) E(E_{ab}) under the global convention.
CMat choi_matrix(const SuperOperator& a);

/// Complete-positivity / trace-preservation test via the Choi matrix.
/// cp_tol <= 0 selects the default 1e-9 * d; tp_tol defaults to 1e-10.
CptpReport is_cptp(const SuperOperator& a, double cp_tol = 0.0, double tp_tol = 1e-10);

/// Adjoint with respect to the Hilbert-Schmidt inner product; for a
/// Kraus-built map this is the map with K_j -> K_j^dag.
SuperOperator adjoint(const SuperOperator& a);

/// Lift of a Hilbert-space conjugation X -> A X B (helper for building the
/// superoperators P . P, |i><i| . |j><j|, ... that appear in the models).
SuperOperator sandwich_superop(const CMat& a, const CMat& b);

/// Hamiltonian commutator superoperator -i [H, .].
SuperOperator hamiltonian_superop(const CMat& h);

}  // namespace zeno

#endif  // ZENO_SUPEROP_HPP_
