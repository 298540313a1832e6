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

#include "holosim/tomography.hpp"

#include <cmath>
#include <random>

namespace holosim {

namespace {

Matrix clip_to_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

// Row (input basis element e_{jk}, output entry (r, s)), column (m, n):
// (A_m |j><k| A_n^dag)_{rs}. Inputs are ordered 00, 10, 01, 11 to match the
// column-major vec of a 2x2 matrix.
const Eigen::FullPivLU<Matrix>& chi_system() {
  static const Eigen::FullPivLU<Matrix> lu = [] {
    const auto& a = pauli_basis();
    Matrix system(16, 16);
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) {
        Matrix e = Matrix::Zero(2, 2);
        e(j, k) = 1.0;
        for (int n = 0; n < 4; ++n)
          for (int m = 0; m < 4; ++m) {
            const Matrix img = a[m] * e * a[n].adjoint();
            for (int s = 0; s < 2; ++s)
              for (int r = 0; r < 2; ++r) system(4 * (j + 2 * k) + r + 2 * s, m + 4 * n) = img(r, s);
          }
      }
    return Eigen::FullPivLU<Matrix>(system);
  }();
  return lu;
}

// Linear constraint sum_mn chi_mn A_n^dag A_m = I on the column-major vec of chi.
const Matrix& trace_constraint() {
  static const Matrix m = [] {
    const auto& a = pauli_basis();
    Matrix out(4, 16);
    for (int n = 0; n < 4; ++n)
      for (int mm = 0; mm < 4; ++mm) {
        const Matrix prod = a[n].adjoint() * a[mm];
        for (int s = 0; s < 2; ++s)
          for (int r = 0; r < 2; ++r) out(r + 2 * s, mm + 4 * n) = prod(r, s);
      }
    return out;
  }();
  return m;
}

Matrix project_trace_preserving(const Matrix& chi) {
  const Matrix& m = trace_constraint();
  static const Matrix gram_inv = (m * m.adjoint()).inverse();
  Eigen::VectorXcd x = Eigen::Map<const Eigen::VectorXcd>(chi.data(), 16);
  Eigen::VectorXcd b(4);
  b << 1.0, 0.0, 0.0, 1.0;
  x -= m.adjoint() * (gram_inv * (m * x - b));
  Matrix out = Eigen::Map<Matrix>(x.data(), 4, 4);
  return 0.5 * (out + out.adjoint());
}

double tp_residual(const Matrix& chi) {
  const Eigen::VectorXcd x = Eigen::Map<const Eigen::VectorXcd>(chi.data(), 16);
  Eigen::VectorXcd b(4);
  b << 1.0, 0.0, 0.0, 1.0;
  return (trace_constraint() * x - b).norm();
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t axis) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(axis)};
  std::uint64_t out[1];
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  out[0] = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return out[0];
}

}  // namespace

const std::array<Matrix, 4>& pauli_basis() {
  static const std::array<Matrix, 4> basis{pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  return basis;
}

ChiMatrix::ChiMatrix(Matrix chi) : chi_(std::move(chi)) {
  if (chi_.rows() != 4 || chi_.cols() != 4) throw InvariantError("ChiMatrix: must be 4x4");
  if ((chi_ - chi_.adjoint()).norm() > tol::kChiHermitian) throw InvariantError("ChiMatrix: not Hermitian");
  chi_ = 0.5 * (chi_ + chi_.adjoint()).eval();
}

ChiMatrix ChiMatrix::from_unitary(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw std::invalid_argument("ChiMatrix::from_unitary: need 2x2");
  const auto& a = pauli_basis();
  Eigen::Vector4cd c;
  for (int i = 0; i < 4; ++i) c(i) = 0.5 * (a[i] * u).trace();
  return ChiMatrix(Matrix(c * c.adjoint()));
}

double ChiMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(chi_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix ChiMatrix::trace_map() const {
  const auto& a = pauli_basis();
  Matrix out = Matrix::Zero(2, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out += chi_(i, j) * a[j].adjoint() * a[i];
  return out;
}

double ChiMatrix::trace_preservation_residual() const {
  return (trace_map() - Matrix::Identity(2, 2)).norm();
}

Matrix ChiMatrix::apply(const Matrix& rho) const {
  const auto& a = pauli_basis();
  Matrix out = Matrix::Zero(2, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out += chi_(i, j) * a[i] * rho * a[j].adjoint();
  return out;
}

double process_fidelity(const ChiMatrix& a, const ChiMatrix& b) {
  return std::abs((a.matrix() * b.matrix().adjoint()).trace());
}

void ReadoutParams::validate() const {
  if (!(contrast > 0.0 && contrast <= 1.0)) throw std::invalid_argument("ReadoutParams: contrast outside (0, 1]");
  if (!(counts_bright > 0.0)) throw std::invalid_argument("ReadoutParams: counts_bright must be > 0");
  if (repeats < 1) throw std::invalid_argument("ReadoutParams: repeats must be >= 1");
  if (!(readout_window > 0.0)) throw std::invalid_argument("ReadoutParams: readout_window must be > 0");
}

double simulate_readout(double p0, const ReadoutParams& params, std::uint64_t seed, bool sample) {
  params.validate();
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("simulate_readout: P0 outside [0, 1]");
  const double i_min = params.counts_dark();
  const double mean = static_cast<double>(params.repeats) * (i_min + p0 * (params.counts_bright - i_min));
  if (!sample) return mean;
  std::mt19937_64 rng(seed);
  std::poisson_distribution<std::int64_t> poisson(mean);
  return static_cast<double>(poisson(rng));
}

ReadoutEstimate invert_readout(double counts, const ReadoutParams& params) {
  params.validate();
  const double i_min = params.counts_dark();
  if (params.counts_bright == i_min) throw std::invalid_argument("invert_readout: I_max == I_min");
  const double per_repeat = counts / static_cast<double>(params.repeats);
  const double p0 = (per_repeat - i_min) / (params.counts_bright - i_min);
  const double clipped = std::clamp(p0, 0.0, 1.0);
  return {clipped, clipped != p0};
}

Matrix estimate_qubit_state(const Matrix& rho, const TomographySettings& settings,
                            std::uint64_t stream, std::vector<ReadoutRecord>* trace) {
  if (rho.rows() != 2 || rho.cols() != 2) throw std::invalid_argument("estimate_qubit_state: need 2x2");
  const auto& a = pauli_basis();
  static const char* kAxis[3] = {"X", "Y", "Z"};
  double norm = 1.0;
  std::array<double, 3> expectation{};
  if (settings.mode == ReadoutMode::kExact) {
    norm = rho.trace().real();
    for (int k = 0; k < 3; ++k) expectation[k] = (rho * a[k + 1]).trace().real();
  } else {
    for (int k = 0; k < 3; ++k) {
      // Basis rotation maps the +1 eigenstate of sigma_k onto the bright
      // readout outcome.
      const Matrix plus = 0.5 * (a[0] + a[k + 1]);
      const double p = std::clamp((plus * rho).trace().real(), 0.0, 1.0);
      const double counts = simulate_readout(p, settings.readout, stream_seed(settings.seed, stream, k),
                                             settings.mode == ReadoutMode::kSampled);
      if (trace) trace->push_back({"prep" + std::to_string(stream) + ":" + kAxis[k], counts});
      expectation[k] = 2.0 * invert_readout(counts, settings.readout).p0 - 1.0;
    }
  }
  Matrix est = 0.5 * norm * a[0];
  for (int k = 0; k < 3; ++k) est += 0.5 * expectation[k] * a[k + 1];
  Matrix psd = clip_to_psd(est);
  const double tr = psd.trace().real();
  if (tr > 0.0) psd *= norm / tr;
  return psd;
}

DensityMatrix qst_qubit(const DensityMatrix& rho, const TomographySettings& settings, std::uint64_t stream) {
  if (rho.dim() != 2) throw std::invalid_argument("qst_qubit: need a qubit state");
  Matrix est = estimate_qubit_state(rho.matrix(), settings, stream);
  est /= est.trace().real();
  return DensityMatrix(std::move(est));
}

const std::array<Matrix, 4>& qpt_input_states() {
  static const std::array<Matrix, 4> inputs = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Vector zero(2), one(2), plus(2), minus_i(2);
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    plus << r, r;
    minus_i << Complex(r), -kI * r;
    return std::array<Matrix, 4>{zero * zero.adjoint(), one * one.adjoint(), plus * plus.adjoint(),
                                 minus_i * minus_i.adjoint()};
  }();
  return inputs;
}

ChiMatrix qpt_qubit(const QubitProcess& process, const TomographySettings& settings,
                    std::vector<ReadoutRecord>* trace) {
  std::array<Matrix, 4> out;
  for (int s = 0; s < 4; ++s) {
    out[s] = estimate_qubit_state(process(qpt_input_states()[s]), settings, static_cast<std::uint64_t>(s), trace);
  }
  // Images of the operator basis |j><k| by linearity.
  const Matrix sum = 2.0 * out[2] - out[0] - out[1];
  const Matrix diff = -kI * (2.0 * out[3] - out[0] - out[1]);
  const std::array<Matrix, 4> images{out[0], 0.5 * (sum - diff), 0.5 * (sum + diff), out[1]};
  Eigen::VectorXcd rhs(16);
  for (int e = 0; e < 4; ++e)
    for (int s = 0; s < 2; ++s)
      for (int r = 0; r < 2; ++r) rhs(4 * e + r + 2 * s) = images[e](r, s);
  const auto& lu = chi_system();
  if (lu.rank() != 16) throw SingularSystemError("qpt_qubit: reconstruction system is singular");
  Eigen::VectorXcd x = lu.solve(rhs);
  Matrix chi = Eigen::Map<Matrix>(x.data(), 4, 4);
  return ChiMatrix(0.5 * (chi + chi.adjoint()));
}

Matrix qst_two_qubit_exact(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw std::invalid_argument("qst_two_qubit_exact: need 4x4");
  const auto& a = pauli_basis();
  Matrix est = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Matrix p = tensor(a[i], a[j]);
      est += 0.25 * (rho4 * p).trace().real() * p;
    }
  return est;
}

MleReport mle_repair_report(const ChiMatrix& raw) {
  Matrix x = raw.matrix();
  Matrix p = Matrix::Zero(4, 4);
  Matrix q = Matrix::Zero(4, 4);
  double residual = 0.0;
  for (int it = 1; it <= tol::kMleMaxIterations; ++it) {
    const Matrix y = clip_to_psd(x + p);
    p = x + p - y;
    residual = tp_residual(y);
    if (residual <= tol::kMleResidual) return {ChiMatrix(y), it, residual};
    const Matrix next = project_trace_preserving(y + q);
    q = y + q - next;
    x = next;
  }
  throw ConvergenceError("mle_repair: no convergence, residual " + std::to_string(residual), residual);
}

ChiMatrix mle_repair(const ChiMatrix& raw) { return mle_repair_report(raw).chi; }

}  // namespace holosim
