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

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <random>

#include "holosim/dynamics.hpp"
#include "holosim/gates.hpp"

namespace holosim {
namespace {

Waveform constant_drive(double omega, double tau, int n = 64) {
  return Waveform(tau, std::vector<double>(n, omega), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                  std::vector<double>(n, 0.0), Scheme::kCustom);
}

StateVector embed(const StateVector& q) {
  Vector v = Vector::Zero(3);
  v.head(2) = q.amplitudes();
  return StateVector(v);
}

TEST(Hamiltonian, HermitianWithScaledCouplings) {
  const GateSpec s = gate_by_name("Y/2", 0.4);
  const Waveform w = synthesize_nhqc_plus(s, 256);
  NoiseModel noise;
  noise.alpha = 0.1;
  for (double u : {0.1, 0.33, 0.5, 0.71}) {
    const HermitianOperator h = hamiltonian_at(w, u * s.tau, noise, 2.0e6);
    const auto f = w.fields_at(u * s.tau);
    EXPECT_LT(std::abs(h.matrix()(0, 2) - 0.55 * f[0]), 1e-6);
    EXPECT_LT(std::abs(h.matrix()(1, 2) - 0.55 * f[1]), 1e-6);
    EXPECT_EQ(h.matrix()(2, 2), Complex(2.0e6));
    EXPECT_EQ(h.matrix()(0, 1), Complex(0.0));
  }
  EXPECT_THROW(hamiltonian_at(w, 2.0 * s.tau, noise, 0.0), std::out_of_range);
}

TEST(PropagateUnitary, ConstantDriveMatchesRabiFormula) {
  const double omega = kTwoPi * 3e6, tau = 0.2e-6;
  const Waveform w = constant_drive(omega, tau);
  const auto r = propagate_unitary(w, NoiseModel{}, 64, TrajectoryRequest{StateVector::basis(3, 0), {StateVector::basis(3, 2)}});
  ASSERT_EQ(r.trajectory.t.size(), 65u);
  for (std::size_t k = 0; k < r.trajectory.t.size(); k += 8) {
    const double expected = std::pow(std::sin(0.5 * omega * r.trajectory.t[k]), 2);
    EXPECT_NEAR(r.trajectory.populations[0][k], expected, 1e-12);
  }
}

TEST(PropagateUnitary, FinalPropagatorIsUnitary) {
  for (const auto& name : library_gate_names()) {
    const Waveform w = synthesize_nhqc_plus(gate_by_name(name), 1024);
    const auto r = propagate_unitary(w, NoiseModel{}, 2048);
    EXPECT_LT(r.final_unitary->unitarity_defect(), tol::kPropagatedUnitary);
  }
}

TEST(PropagateUnitary, DarkStateStaysDecoupled) {
  const GateSpec s = gate_by_name("Y/2", 0.4);
  const Waveform w = synthesize_nhqc_plus(s, 1024);
  const StateVector d = embed(dark_state(s.theta, s.phi));
  NoiseModel noise;
  noise.alpha = 0.15;
  const auto r = propagate_unitary(w, noise, 1024, TrajectoryRequest{d, {d}});
  for (double p : r.trajectory.populations[0]) EXPECT_NEAR(p, 1.0, 1e-12);
}

TEST(PropagateUnitary, RejectsBadStepCounts) {
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X"), 128);
  EXPECT_THROW(propagate_unitary(w, NoiseModel{}, 64), std::invalid_argument);
  EXPECT_THROW(propagate_unitary(w, NoiseModel{}, 129), std::invalid_argument);
  NoiseModel dephasing;
  dephasing.dephasing_rate = 1e3;
  EXPECT_THROW(propagate_unitary(w, dephasing, 128), std::invalid_argument);
}

TEST(PropagateLindblad, AgreesWithUnitaryWithoutDephasing) {
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X/2"), 512);
  const StateVector in = StateVector::basis(3, 0);
  const auto u = propagate_unitary(w, NoiseModel{}, 512);
  const auto l = propagate_lindblad(w, NoiseModel{}, 512, in.projector());
  const Vector out = u.final_unitary->matrix() * in.amplitudes();
  EXPECT_LT((l.final_density->matrix() - out * out.adjoint()).norm(), 1e-12);
}

TEST(PropagateLindblad, IdleCoherenceDecaysAtTwiceTheRate) {
  const double rate = 2e5, tau = 3e-6;
  NoiseModel noise;
  noise.dephasing_rate = rate;
  Vector v = Vector::Zero(3);
  v(0) = v(1) = 1.0 / std::sqrt(2.0);
  const auto r = propagate_lindblad(idle_waveform(tau, 64), noise, 256, StateVector(v).projector());
  const Matrix& rho = r.final_density->matrix();
  EXPECT_NEAR(std::abs(rho(0, 1)), 0.5 * std::exp(-2.0 * rate * tau), 1e-12);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
}

TEST(PropagateLindblad, TracePreservedUnderDrive) {
  NoiseModel noise;
  noise.dephasing_rate = 5e5;
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X"), 512);
  const auto r = propagate_lindblad(w, noise, 1024, StateVector::basis(3, 1).projector(), {StateVector::basis(3, 0)});
  EXPECT_NEAR(r.final_density->matrix().trace().real(), 1.0, tol::kPropagatedTrace);
  EXPECT_LT(r.final_density->purity(), 1.0);
}

TEST(Channel, UnitaryImagesAndComposition) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Matrix h(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) = Complex(g(rng), g(rng));
  h = (0.5 * (h + h.adjoint())).eval();
  const Matrix u = detail::expm_hermitian(h, 0.8);
  const Matrix v = detail::expm_hermitian(h, -0.3);
  const Channel cu = Channel::from_unitary(u), cv = Channel::from_unitary(v);
  const Matrix rho = StateVector::basis(3, 1).projector().matrix();
  EXPECT_LT((cu.apply(rho) - u * rho * u.adjoint()).norm(), 1e-12);
  const Matrix vu = v * u;
  EXPECT_LT((cu.then(cv).apply(rho) - vu * rho * vu.adjoint()).norm(), 1e-12);
  const Channel r = cu.restrict(2);
  EXPECT_EQ(r.dim(), 2);
  EXPECT_LT((r.image(0, 1) - u.topLeftCorner(2, 2).col(0) * u.topLeftCorner(2, 2).col(1).adjoint()).norm(), 1e-12);
}

TEST(MonteCarlo, ParallelMatchesSerialBitForBit) {
  NoiseModel noise;
  noise.detuning_sigma = detuning_sigma_from_t2star(kT2Star);
  noise.alpha = 0.02;
  noise.rng_seed = 99;
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X"), 256);
  const Channel serial = monte_carlo_channel_serial(w, noise, 37, 256);
  for (int threads : {1, 3, 4}) {
    omp_set_num_threads(threads);
    const Channel parallel = monte_carlo_channel(w, noise, 37, 256);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_TRUE(parallel.image(i, j) == serial.image(i, j)) << threads;
  }
}

TEST(MonteCarlo, DephasingBranchIsTracePreserving) {
  NoiseModel noise;
  noise.detuning_sigma = 1e6;
  noise.dephasing_rate = 1e5;
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X"), 256);
  const Channel c = monte_carlo_channel(w, noise, 8, 256);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(c.image(i, i).trace().real(), 1.0, 1e-10);
    for (int j = 0; j < 3; ++j)
      if (i != j) EXPECT_NEAR(std::abs(c.image(i, j).trace()), 0.0, 1e-10);
  }
}

TEST(MonteCarlo, NoiselessChannelIsTheUnitary) {
  const Waveform w = synthesize_nhqc_plus(gate_by_name("Y/2"), 256);
  const Matrix u = propagate_unitary(w, NoiseModel{}, 256).final_unitary->matrix();
  const Channel c = monte_carlo_channel(w, NoiseModel{}, 1, 256);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_LT((c.image(i, j) - u.col(i) * u.col(j).adjoint()).norm(), 1e-12);
}

TEST(Ramsey, MatchesSampleAverageOfPhases) {
  NoiseModel noise;
  noise.detuning_sigma = detuning_sigma_from_t2star(kT2Star);
  noise.rng_seed = 17;
  const int n = 400;
  for (double t : {2e-6, 6e-6, 10e-6}) {
    double expected = 0.0;
    for (int k = 0; k < n; ++k) {
      std::mt19937_64 rng(noise.rng_seed + k);
      std::normal_distribution<double> g(0.0, 1.0);
      expected += std::cos(noise.detuning_sigma * g(rng) * t);
    }
    EXPECT_NEAR(ramsey_contrast(t, noise, n), expected / n, 1e-10);
  }
}

TEST(Ramsey, EnvelopeFollowsT2Star) {
  NoiseModel noise;
  noise.detuning_sigma = detuning_sigma_from_t2star(kT2Star);
  noise.rng_seed = 5;
  for (double t : {4e-6, 8e-6, 12e-6}) {
    EXPECT_NEAR(ramsey_contrast(t, noise, 4000), std::exp(-std::pow(t / kT2Star, 2)), 0.03) << t;
  }
}

TEST(NoiseModel, RejectsInvalidValues) {
  NoiseModel n;
  n.alpha = -1.5;
  EXPECT_THROW(n.validate(), std::invalid_argument);
  n = NoiseModel{};
  n.detuning_sigma = -1.0;
  EXPECT_THROW(n.validate(), std::invalid_argument);
  n = NoiseModel{};
  n.per_gate_p = 0.7;
  EXPECT_THROW(n.validate(), std::invalid_argument);
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X"), 128);
  EXPECT_THROW(monte_carlo_channel(w, NoiseModel{}, 0, 128), std::invalid_argument);
}

}  // namespace
}  // namespace holosim
