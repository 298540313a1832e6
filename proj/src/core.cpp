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

#include "holosim/core.hpp"

#include <cmath>
#include <sstream>

namespace holosim {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw InvariantError(os.str());
  }
}

}  // namespace

bool is_hermitian(const Matrix& m, double relative_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= relative_tol * scale;
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const auto d = amplitudes_.size();
  if (d != 2 && d != 3 && d != 9) throw InvariantError("StateVector: dimension must be 2, 3 or 9");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol::kStateNorm) {
    throw InvariantError("StateVector: squared norm differs from 1");
  }
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw InvariantError("StateVector::basis: index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw InvariantError("StateVector: zero vector");
  return StateVector(amplitudes / n);
}

DensityMatrix StateVector::projector() const {
  return DensityMatrix(amplitudes_ * amplitudes_.adjoint());
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  require_square(rho_, "DensityMatrix");
  if ((rho_ - rho_.adjoint()).norm() > tol::kDensityHermitian) {
    throw InvariantError("DensityMatrix: not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0)) > tol::kDensityTrace) {
    throw InvariantError("DensityMatrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kDensityEigen) {
    throw InvariantError("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

UnitaryOperator::UnitaryOperator(Matrix u) : u_(std::move(u)) {
  require_square(u_, "UnitaryOperator");
  if (unitarity_defect() > tol::kUnitary) throw InvariantError("UnitaryOperator: U^dagger U != I");
}

UnitaryOperator UnitaryOperator::identity(int dim) {
  return UnitaryOperator(Matrix::Identity(dim, dim));
}

double UnitaryOperator::unitarity_defect() const {
  return (u_.adjoint() * u_ - Matrix::Identity(u_.rows(), u_.cols())).norm();
}

HermitianOperator::HermitianOperator(Matrix h) : h_(std::move(h)) {
  require_square(h_, "HermitianOperator");
  if (!is_hermitian(h_)) throw InvariantError("HermitianOperator: H != H^dagger");
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  require_square(a, "tensor(lhs)");
  require_square(b, "tensor(rhs)");
  const Eigen::Index da = a.rows();
  const Eigen::Index db = b.rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index i1 = 0; i1 < da; ++i1)
    for (Eigen::Index j1 = 0; j1 < da; ++j1)
      for (Eigen::Index i2 = 0; i2 < db; ++i2)
        for (Eigen::Index j2 = 0; j2 < db; ++j2)
          out(i1 * db + i2, j1 * db + j2) = a(i1, j1) * b(i2, j2);
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::array<int, 2> dims, int keep) {
  if (keep != 0 && keep != 1) throw std::invalid_argument("partial_trace: keep must be 0 or 1");
  if (dims[0] <= 0 || dims[1] <= 0 || dims[0] * dims[1] != rho.dim()) {
    throw std::invalid_argument("partial_trace: subsystem dims do not match the state");
  }
  const int d1 = dims[0];
  const int d2 = dims[1];
  const Matrix& m = rho.matrix();
  const int dk = keep == 0 ? d1 : d2;
  Matrix out = Matrix::Zero(dk, dk);
  if (keep == 0) {
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
  } else {
    for (int i = 0; i < d2; ++i)
      for (int j = 0; j < d2; ++j)
        for (int k = 0; k < d1; ++k) out(i, j) += m(k * d2 + i, k * d2 + j);
  }
  // Clean round-off so the reduced state passes its own invariants.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

namespace detail {

Matrix expm_hermitian(const Matrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -w(k) * dt);
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace detail

UnitaryOperator matrix_exp_antihermitian(const HermitianOperator& h, double dt) {
  return UnitaryOperator(detail::expm_hermitian(h.matrix(), dt));
}

double state_fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  if (std::abs(f.imag()) > tol::kImagFidelity) {
    throw InvariantError("state_fidelity: non-negligible imaginary part");
  }
  return std::clamp(f.real(), 0.0, 1.0);
}

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << Complex(0.0), -kI, kI, Complex(0.0);
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

Matrix spin1_z() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

}  // namespace holosim
