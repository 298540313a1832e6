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

// Time propagation of the driven Lambda system. Hamiltonians are in rad/s
// and times in seconds, in the rotating frame of both drives.

#include <cstdint>
#include <optional>
#include <vector>

#include "holosim/core.hpp"
#include "holosim/pulse.hpp"

namespace holosim {

inline constexpr double kT2Star = 8e-6;    // s
inline constexpr double kT2Echo = 600e-6;  // s

/// Quasi-static Gaussian detuning giving a Ramsey envelope exp(-(t/T2*)^2).
inline double detuning_sigma_from_t2star(double t2star) { return std::sqrt(2.0) / t2star; }

struct NoiseModel {
  double alpha = 0.0;           // relative amplitude error, Omega -> (1 + alpha) Omega
  double detuning_sigma = 0.0;  // rad/s, std-dev of the quasi-static shift of |a>
  double dephasing_rate = 0.0;  // 1/s, Lindblad rate of sigma_z on {|0>, |1>}
  double per_gate_p = 0.0;      // depolarizing error per gate
  std::uint64_t rng_seed = 0;

  void validate() const;
};

namespace detail {
/// exp(-i h dt) for a Hermitian 3x3 h.
Eigen::Matrix3cd expm_hermitian3(const Eigen::Matrix3cd& h, double dt);
}  // namespace detail

/// H(t) without validation, for inner loops.
Eigen::Matrix3cd hamiltonian_matrix(const Waveform& w, double t, double alpha, double detuning);

HermitianOperator hamiltonian_at(const Waveform& w, double t, const NoiseModel& noise,
                                 double detuning_sample);

struct TrajectoryRequest {
  StateVector initial;
  std::vector<StateVector> probes;
};

/// populations[p][k] = |<probe_p|psi(t_k)>|^2 (or <probe|rho|probe>), with
/// t_0 = 0 and one entry after every step.
struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> populations;
};

struct PropagationResult {
  std::optional<UnitaryOperator> final_unitary;
  std::optional<DensityMatrix> final_density;
  Trajectory trajectory;
};

/// Ordered product of midpoint exponentials exp(-i H(t_mid) dt). Requires
/// steps >= n_samples with every segment boundary on a step boundary.
PropagationResult propagate_unitary(const Waveform& w, const NoiseModel& noise, int steps,
                                    const std::optional<TrajectoryRequest>& request = std::nullopt,
                                    double detuning_sample = 0.0);

/// First-order split step: unitary midpoint kernel, then the exact
/// sigma_z dephasing map over dt.
PropagationResult propagate_lindblad(const Waveform& w, const NoiseModel& noise, int steps,
                                     const DensityMatrix& initial,
                                     const std::vector<StateVector>& probes = {},
                                     double detuning_sample = 0.0);

/// A linear map on d x d operators, stored as the images of |i><j|.
class Channel {
 public:
  Channel(int dim, std::vector<Matrix> images);

  static Channel identity(int dim);
  static Channel from_unitary(const Matrix& u);

  int dim() const { return dim_; }
  const Matrix& image(int i, int j) const { return images_[i + j * dim_]; }
  Matrix apply(const Matrix& rho) const;
  /// this, then next.
  Channel then(const Channel& next) const;
  /// Restriction to inputs and outputs on the leading k levels.
  Channel restrict(int k) const;

 private:
  int dim_;
  std::vector<Matrix> images_;
};

/// Quasi-static detuning average: trajectory k draws its detuning from a
/// generator seeded with rng_seed + k. Trajectories run in parallel and are
/// summed in index order, so the result does not depend on thread count.
Channel monte_carlo_channel(const Waveform& w, const NoiseModel& noise, int n_traj, int steps);

/// Single-threaded reference for monte_carlo_channel; bit-identical output.
Channel monte_carlo_channel_serial(const Waveform& w, const NoiseModel& noise, int n_traj, int steps);

/// Ramsey fringe contrast on the |a> <-> |0> transition: ideal pi/2 pulses
/// around a free evolution of length `delay`, averaged over quasi-static
/// detuning.
double ramsey_contrast(double delay, const NoiseModel& noise, int n_traj);

/// Zero-amplitude waveform of the given duration.
Waveform idle_waveform(double duration, int n_samples = 64);

}  // namespace holosim
