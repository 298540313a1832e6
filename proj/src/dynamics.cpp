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

#include "holosim/dynamics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace holosim {

namespace {

using Mat3 = Eigen::Matrix3cd;

// sigma_z on the qubit block; the ancilla is untouched.
constexpr double kDephasingEigen[3] = {1.0, -1.0, 0.0};

void check_steps(const Waveform& w, int steps) {
  if (steps < w.size()) throw std::invalid_argument("steps must be >= n_samples");
  for (int b : w.segment_starts()) {
    if ((static_cast<long long>(b) * steps) % w.size() != 0) {
      throw std::invalid_argument("steps must place every segment boundary on a step boundary");
    }
  }
}

Mat3 step_unitary(const Waveform& w, int k, double dt, double alpha, double detuning) {
  return detail::expm_hermitian3(hamiltonian_matrix(w, (k + 0.5) * dt, alpha, detuning), dt);
}

Mat3 dephasing_factors(double rate, double dt) {
  Mat3 f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double d = kDephasingEigen[i] - kDephasingEigen[j];
      f(i, j) = std::exp(-0.5 * rate * dt * d * d);
    }
  return f;
}

Trajectory make_trajectory(std::size_t n_probes, int steps) {
  Trajectory tr;
  tr.t.reserve(steps + 1);
  tr.populations.assign(n_probes, {});
  for (auto& p : tr.populations) p.reserve(steps + 1);
  return tr;
}

// Per-trajectory channel images, flattened as image(i, j) at i + 3 j.
std::vector<Matrix> trajectory_images(const Waveform& w, const NoiseModel& noise, int steps,
                                      double detuning) {
  const double dt = w.tau() / steps;
  std::vector<Matrix> images(9);
  if (noise.dephasing_rate == 0.0) {
    Mat3 u = Mat3::Identity();
    for (int k = 0; k < steps; ++k) u = step_unitary(w, k, dt, noise.alpha, detuning) * u;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) images[i + 3 * j] = u.col(i) * u.col(j).adjoint();
    return images;
  }
  // Superoperator on column-major vec(rho): vec(U rho U^dag) = (conj(U) (x) U) vec(rho).
  using Mat9 = Eigen::Matrix<Complex, 9, 9>;
  const Mat3 factors = dephasing_factors(noise.dephasing_rate, dt);
  Mat9 s = Mat9::Identity();
  for (int k = 0; k < steps; ++k) {
    const Mat3 u = step_unitary(w, k, dt, noise.alpha, detuning);
    Mat9 step;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) step(a + 3 * b, c + 3 * d) = u(a, c) * std::conj(u(b, d));
    for (int r = 0; r < 9; ++r) step.row(r) *= factors(r % 3, r / 3);
    s = step * s;
  }
  for (int col = 0; col < 9; ++col) {
    Matrix img(3, 3);
    for (int r = 0; r < 9; ++r) img(r % 3, r / 3) = s(r, col);
    images[col] = std::move(img);
  }
  return images;
}

double detuning_draw(const NoiseModel& noise, int traj) {
  std::mt19937_64 rng(noise.rng_seed + static_cast<std::uint64_t>(traj));
  std::normal_distribution<double> normal(0.0, 1.0);
  return noise.detuning_sigma * normal(rng);
}

Channel average(const std::vector<std::vector<Matrix>>& per_traj) {
  std::vector<Matrix> sum(9, Matrix::Zero(3, 3));
  for (const auto& images : per_traj)
    for (int m = 0; m < 9; ++m) sum[m] += images[m];
  const double inv = 1.0 / static_cast<double>(per_traj.size());
  for (auto& m : sum) m *= inv;
  return Channel(3, std::move(sum));
}

void check_channel_inputs(const Waveform& w, const NoiseModel& noise, int n_traj, int steps) {
  noise.validate();
  check_steps(w, steps);
  if (n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
}

}  // namespace

namespace detail {

Eigen::Matrix3cd expm_hermitian3(const Eigen::Matrix3cd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
  const Eigen::Vector3d& w = es.eigenvalues();
  Eigen::Vector3cd phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::polar(1.0, -w(k) * dt);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

void NoiseModel::validate() const {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw std::invalid_argument("NoiseModel: alpha must be > -1");
  if (!(detuning_sigma >= 0.0)) throw std::invalid_argument("NoiseModel: detuning_sigma must be >= 0");
  if (!(dephasing_rate >= 0.0)) throw std::invalid_argument("NoiseModel: dephasing_rate must be >= 0");
  if (!(per_gate_p >= 0.0 && per_gate_p <= 0.5)) {
    throw std::invalid_argument("NoiseModel: per_gate_p outside [0, 1/2]");
  }
}

Eigen::Matrix3cd hamiltonian_matrix(const Waveform& w, double t, double alpha, double detuning) {
  const auto fields = w.fields_at(t);
  const double scale = 0.5 * (1.0 + alpha);
  Mat3 h = Mat3::Zero();
  h(0, 2) = scale * fields[0];
  h(1, 2) = scale * fields[1];
  h(2, 0) = std::conj(h(0, 2));
  h(2, 1) = std::conj(h(1, 2));
  h(2, 2) = detuning;
  return h;
}

HermitianOperator hamiltonian_at(const Waveform& w, double t, const NoiseModel& noise,
                                 double detuning_sample) {
  noise.validate();
  if (!(t >= 0.0 && t <= w.tau())) throw std::out_of_range("hamiltonian_at: t outside [0, tau]");
  return HermitianOperator(Matrix(hamiltonian_matrix(w, t, noise.alpha, detuning_sample)));
}

PropagationResult propagate_unitary(const Waveform& w, const NoiseModel& noise, int steps,
                                    const std::optional<TrajectoryRequest>& request,
                                    double detuning_sample) {
  noise.validate();
  if (noise.dephasing_rate != 0.0) {
    throw std::invalid_argument("propagate_unitary: dephasing requires propagate_lindblad");
  }
  check_steps(w, steps);
  const double dt = w.tau() / steps;
  Trajectory tr = make_trajectory(request ? request->probes.size() : 0, steps);
  Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
  auto record = [&](double t) {
    if (!request) return;
    tr.t.push_back(t);
    for (std::size_t p = 0; p < request->probes.size(); ++p) {
      const Eigen::Vector3cd probe = request->probes[p].amplitudes();
      tr.populations[p].push_back(std::norm(probe.dot(psi)));
    }
  };
  if (request) {
    if (request->initial.dim() != 3) throw std::invalid_argument("propagate_unitary: initial state must be 3-dim");
    for (const auto& p : request->probes)
      if (p.dim() != 3) throw std::invalid_argument("propagate_unitary: probes must be 3-dim");
    psi = request->initial.amplitudes();
  }
  record(0.0);
  Mat3 u = Mat3::Identity();
  for (int k = 0; k < steps; ++k) {
    const Mat3 step = step_unitary(w, k, dt, noise.alpha, detuning_sample);
    u = step * u;
    if (request) {
      psi = step * psi;
      record((k + 1) * dt);
    }
  }
  PropagationResult result;
  result.final_unitary = UnitaryOperator(Matrix(u));
  result.trajectory = std::move(tr);
  return result;
}

PropagationResult propagate_lindblad(const Waveform& w, const NoiseModel& noise, int steps,
                                     const DensityMatrix& initial,
                                     const std::vector<StateVector>& probes,
                                     double detuning_sample) {
  noise.validate();
  check_steps(w, steps);
  if (initial.dim() != 3) throw std::invalid_argument("propagate_lindblad: initial state must be 3-dim");
  const double dt = w.tau() / steps;
  const Mat3 factors = dephasing_factors(noise.dephasing_rate, dt);
  Trajectory tr = make_trajectory(probes.size(), steps);
  Mat3 rho = initial.matrix();
  auto record = [&](double t) {
    tr.t.push_back(t);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const Eigen::Vector3cd probe = probes[p].amplitudes();
      tr.populations[p].push_back(probe.dot(rho * probe).real());
    }
  };
  record(0.0);
  for (int k = 0; k < steps; ++k) {
    const Mat3 u = step_unitary(w, k, dt, noise.alpha, detuning_sample);
    rho = (u * rho * u.adjoint()).cwiseProduct(factors);
    record((k + 1) * dt);
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  PropagationResult result;
  result.final_density = DensityMatrix(Matrix(rho));
  result.trajectory = std::move(tr);
  return result;
}

Channel::Channel(int dim, std::vector<Matrix> images) : dim_(dim), images_(std::move(images)) {
  if (dim_ < 1 || images_.size() != static_cast<std::size_t>(dim_ * dim_)) {
    throw std::invalid_argument("Channel: need dim^2 images");
  }
  for (const auto& m : images_)
    if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("Channel: image shape");
}

Channel Channel::identity(int dim) { return from_unitary(Matrix::Identity(dim, dim)); }

Channel Channel::from_unitary(const Matrix& u) {
  const int d = static_cast<int>(u.rows());
  std::vector<Matrix> images(d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) images[i + j * d] = u.col(i) * u.col(j).adjoint();
  return Channel(d, std::move(images));
}

Matrix Channel::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw std::invalid_argument("Channel::apply: shape");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int i = 0; i < dim_; ++i)
      if (rho(i, j) != Complex(0.0)) out += rho(i, j) * images_[i + j * dim_];
  return out;
}

Channel Channel::then(const Channel& next) const {
  if (next.dim_ != dim_) throw std::invalid_argument("Channel::then: dimension mismatch");
  std::vector<Matrix> images(images_.size());
  for (std::size_t m = 0; m < images_.size(); ++m) images[m] = next.apply(images_[m]);
  return Channel(dim_, std::move(images));
}

Channel Channel::restrict(int k) const {
  if (k < 1 || k > dim_) throw std::invalid_argument("Channel::restrict: bad size");
  std::vector<Matrix> images(k * k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) images[i + j * k] = image(i, j).topLeftCorner(k, k);
  return Channel(k, std::move(images));
}

Channel monte_carlo_channel_serial(const Waveform& w, const NoiseModel& noise, int n_traj, int steps) {
  check_channel_inputs(w, noise, n_traj, steps);
  std::vector<std::vector<Matrix>> per_traj(n_traj);
  for (int k = 0; k < n_traj; ++k) {
    per_traj[k] = trajectory_images(w, noise, steps, detuning_draw(noise, k));
  }
  return average(per_traj);
}

Channel monte_carlo_channel(const Waveform& w, const NoiseModel& noise, int n_traj, int steps) {
  check_channel_inputs(w, noise, n_traj, steps);
  std::vector<std::vector<Matrix>> per_traj(n_traj);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n_traj; ++k) {
    per_traj[k] = trajectory_images(w, noise, steps, detuning_draw(noise, k));
  }
  return average(per_traj);
}

Waveform idle_waveform(double duration, int n_samples) {
  std::vector<double> zeros(n_samples, 0.0);
  return Waveform(duration, zeros, zeros, zeros, zeros, Scheme::kCustom);
}

double ramsey_contrast(double delay, const NoiseModel& noise, int n_traj) {
  // Ideal pi/2 about x on the {|0>, |a>} pair, i.e. exp(-i pi/4 sigma_x).
  Matrix half_pi = Matrix::Identity(3, 3);
  const double c = std::cos(kPi / 4);
  half_pi(0, 0) = c;
  half_pi(2, 2) = c;
  half_pi(0, 2) = -kI * c;
  half_pi(2, 0) = -kI * c;
  const StateVector start = StateVector::basis(3, 2);
  const Matrix rho0 = half_pi * start.projector().matrix() * half_pi.adjoint();
  constexpr int kSamples = 64;
  const Channel free = monte_carlo_channel(idle_waveform(delay, kSamples), noise, n_traj, kSamples);
  const Matrix rho = half_pi * free.apply(rho0) * half_pi.adjoint();
  // Fringe maximum is P_a = 0 (full transfer); contrast = 2 P_0 - 1.
  return 2.0 * rho(0, 0).real() - 1.0;
}

}  // namespace holosim
