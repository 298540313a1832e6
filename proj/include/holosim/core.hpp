// Copyright 2026 The holosim Authors
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

#pragma once

// Small dense complex linear algebra shared by every module: value types for
// states and operators, Kronecker products, partial traces, unitary
// propagators and fidelities.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace holosim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr Complex kI{0.0, 1.0};

// Every numeric tolerance used by type invariants and algorithm stopping
// rules lives here.
namespace tol {
inline constexpr double kStateNorm = 1e-10;
inline constexpr double kDensityHermitian = 1e-10;
inline constexpr double kDensityTrace = 1e-10;
inline constexpr double kDensityEigen = 1e-10;
inline constexpr double kUnitary = 1e-8;
inline constexpr double kHermitianRelative = 1e-12;
inline constexpr double kImagFidelity = 1e-12;
inline constexpr double kChiHermitian = 1e-8;
inline constexpr double kChiEigen = 1e-10;
inline constexpr double kChiTracePreservation = 1e-6;
inline constexpr double kMleResidual = 1e-8;
inline constexpr int kMleMaxIterations = 10000;
inline constexpr double kPropagatedUnitary = 1e-8;
inline constexpr double kPropagatedTrace = 1e-8;
}  // namespace tol

/// Thrown when a value violates the invariant of its domain type.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DensityMatrix;

/// Normalized pure state of dimension 2, 3 or 9.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  static StateVector basis(int dim, int index);
  /// Normalizes before validating; for building superpositions by hand.
  static StateVector normalized(Vector amplitudes);

  const Vector& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  DensityMatrix projector() const;

 private:
  Vector amplitudes_;
};

/// Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho);

  static DensityMatrix maximally_mixed(int dim);

  const Matrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  double purity() const;
  double population(int index) const { return rho_(index, index).real(); }

 private:
  Matrix rho_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix u);

  static UnitaryOperator identity(int dim);

  const Matrix& matrix() const { return u_; }
  int dim() const { return static_cast<int>(u_.rows()); }
  /// Frobenius norm of U^dagger U - I.
  double unitarity_defect() const;

 private:
  Matrix u_;
};

class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix h);

  const Matrix& matrix() const { return h_; }
  int dim() const { return static_cast<int>(h_.rows()); }

 private:
  Matrix h_;
};

bool is_hermitian(const Matrix& m, double relative_tol = tol::kHermitianRelative);

/// Kronecker product; subsystem index (i1, i2) maps to i1 * d2 + i2.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

/// Reduced state of a bipartite density matrix. `dims` are the subsystem
/// dimensions in tensor order and `keep` selects subsystem 0 or 1.
DensityMatrix partial_trace(const DensityMatrix& rho, std::array<int, 2> dims, int keep);

/// exp(-i H dt) by eigendecomposition of H.
UnitaryOperator matrix_exp_antihermitian(const HermitianOperator& h, double dt);

/// <psi|rho|psi>.
double state_fidelity(const DensityMatrix& rho, const StateVector& psi);

namespace detail {
// Unchecked kernels used inside propagation loops; callers guarantee the
// preconditions that the public wrappers validate.
Matrix expm_hermitian(const Matrix& h, double dt);
}  // namespace detail

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

/// Spin-1 S_z in the {m=-1, m=+1, m=0} level order used throughout.
Matrix spin1_z();

}  // namespace holosim
