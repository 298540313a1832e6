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

#include <cmath>
#include <random>

#include "holosim/gates.hpp"

namespace holosim {
namespace {

// Phase-insensitive overlap |Tr(A^dag B)| / 2 of two unitaries.
double overlap(const Matrix& a, const Matrix& b) { return std::abs((a.adjoint() * b).trace()) / 2.0; }

TEST(IdealUnitary, ZeroHolonomyIsExactIdentity) {
  EXPECT_TRUE(ideal_unitary(0.7, 1.3, 0.0).matrix() == Matrix::Identity(2, 2));
}

TEST(IdealUnitary, XGateIsSigmaX) {
  EXPECT_NEAR(overlap(ideal_unitary(kPi / 2, 0.0, kPi).matrix(), pauli::x()), 1.0, 1e-14);
}

TEST(IdealUnitary, DarkAndBrightEigenstates) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = kPi * u(rng), phi = kTwoPi * u(rng), gamma = kTwoPi * u(rng) - kPi;
    const Matrix g = ideal_unitary(theta, phi, gamma).matrix();
    const Vector d = dark_state(theta, phi).amplitudes();
    const Vector b = bright_state(theta, phi).amplitudes();
    EXPECT_LT((g * d - d).norm(), 1e-12);
    EXPECT_LT((g * b - std::exp(kI * gamma) * b).norm(), 1e-12);
    EXPECT_NEAR(std::abs(d.dot(b)), 0.0, 1e-14);
  }
}

TEST(IdealUnitary, SpectrumIsOneAndHolonomyPhase) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double gamma = kTwoPi * u(rng) - kPi;
    const Matrix g = ideal_unitary(kPi * u(rng), kTwoPi * u(rng), gamma).matrix();
    Eigen::ComplexEigenSolver<Matrix> es(g);
    const Complex l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
    const Complex ratio = l0 / l1;
    const bool matches = std::abs(ratio - std::exp(kI * gamma)) < 1e-10 || std::abs(ratio - std::exp(-kI * gamma)) < 1e-10;
    EXPECT_TRUE(matches) << "gamma=" << gamma;
  }
}

TEST(IdealUnitary, SameAxisHolonomiesCompose) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = kPi * u(rng), phi = kTwoPi * u(rng);
    const double g1 = kPi * u(rng), g2 = kPi * u(rng);
    const QubitGate product(ideal_unitary(theta, phi, g1).matrix() * ideal_unitary(theta, phi, g2).matrix());
    EXPECT_NEAR(gate_fidelity(product, ideal_unitary(theta, phi, g1 + g2)), 1.0, 1e-10);
  }
}

TEST(GateByName, LibraryParameters) {
  const GateSpec i = gate_by_name("I");
  EXPECT_EQ(i.gamma, 0.0);
  EXPECT_EQ(i.eta, kQptEta);
  const GateSpec y = gate_by_name("Y/2", kRobustnessEta);
  EXPECT_DOUBLE_EQ(y.phi, kPi / 2);
  EXPECT_DOUBLE_EQ(y.gamma, kPi / 2);
  EXPECT_EQ(y.eta, 1.0);
  EXPECT_GT(y.tau, 0.0);
  EXPECT_NEAR(overlap(ideal_gate(gate_by_name("X")).matrix(), pauli::x()), 1.0, 1e-14);
  EXPECT_THROW(gate_by_name("H"), std::invalid_argument);
}

TEST(ExtractQubitGate, IdentityAndFullLeak) {
  const ExtractedGate id = extract_qubit_gate(UnitaryOperator::identity(3));
  EXPECT_EQ(id.leakage, 0.0);
  EXPECT_TRUE(id.gate.matrix() == Matrix::Identity(2, 2));
  Matrix swap0a = Matrix::Zero(3, 3);
  swap0a(2, 0) = swap0a(0, 2) = swap0a(1, 1) = 1.0;
  EXPECT_NEAR(extract_qubit_gate(UnitaryOperator(swap0a)).leakage, 0.5, 1e-15);
  EXPECT_THROW(extract_qubit_gate(UnitaryOperator::identity(2)), std::invalid_argument);
}

TEST(GateFidelity, IdenticalOrthogonalAndPhaseInvariant) {
  const QubitGate x = QubitGate::ideal(pauli::x());
  const QubitGate i = QubitGate::ideal(pauli::identity());
  EXPECT_NEAR(gate_fidelity(x, x), 1.0, 1e-10);
  EXPECT_NEAR(gate_fidelity(x, i), 0.0, 1e-10);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int trial = 0; trial < 20; ++trial) {
    const QubitGate g = ideal_unitary(u(rng) / 2, u(rng), u(rng) - kPi);
    const QubitGate shifted(std::exp(kI * u(rng)) * g.matrix());
    EXPECT_NEAR(gate_fidelity(shifted, x), gate_fidelity(g, x), 1e-14);
    EXPECT_NEAR(gate_fidelity(shifted, g), 1.0, 1e-12);
  }
}

TEST(GatePipeline, LibraryGatesNoiseFree) {
  for (double eta : {kQptEta, kRobustnessEta}) {
    for (const auto& name : library_gate_names()) {
      const GateRun run = simulate_gate(gate_by_name(name, eta));
      EXPECT_GE(run.fidelity, 0.9999) << name;
      EXPECT_LE(run.extracted.leakage, 1e-4) << name;
    }
  }
  const GateRun base = simulate_gate(gate_by_name("X", 1.0), Scheme::kNhqcBaseline);
  EXPECT_GE(base.fidelity, 0.9999);
  EXPECT_LE(base.extracted.leakage, 1e-4);
}

TEST(GatePipeline, AmplitudeErrorHurtsBaselineMore) {
  const GateRun plus = simulate_gate(gate_by_name("X", 1.0), Scheme::kNhqcPlus, 0.1);
  const GateRun base = simulate_gate(gate_by_name("X", 1.0), Scheme::kNhqcBaseline, 0.1);
  EXPECT_GT(plus.fidelity, base.fidelity);
}

TEST(Decay, InjectedPerGateErrorAtHundredGates) {
  NoiseModel noise;
  noise.per_gate_p = 0.0039;
  const DecayCurve c = repeated_gate_decay(gate_by_name("Y/2"), noise, 120);
  EXPECT_NEAR(c.fidelity[99], 0.5 + 0.5 * std::pow(0.9922, 100), 1e-12);
  EXPECT_NEAR(c.fidelity[99], 0.7285, 1e-3);
}

TEST(Decay, NoErrorKeepsUnitFidelity) {
  const DecayCurve c = repeated_gate_decay(gate_by_name("X/2"), NoiseModel{}, 50);
  for (double f : c.fidelity) EXPECT_NEAR(f, 1.0, 1e-12);
  EXPECT_NEAR(c.fit.p, 0.0, 1e-9);
}

TEST(Decay, FitRecoversInjectedErrorAndSpam) {
  for (double p : {0.001, 0.0039, 0.02}) {
    NoiseModel noise;
    noise.per_gate_p = p;
    const DecayCurve c = repeated_gate_decay(gate_by_name("Y/2"), noise, 500);
    EXPECT_NEAR(c.fit.p / p, 1.0, 0.05);
    for (double f : c.fidelity) {
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
  }
  std::vector<int> n;
  std::vector<double> f;
  for (int k = 1; k <= 300; ++k) {
    n.push_back(k);
    f.push_back(decay_model(0.004, 0.08, k));
  }
  const DecayFit fit = fit_decay(n, f);
  EXPECT_NEAR(fit.p, 0.004, 1e-8);
  EXPECT_NEAR(fit.spam, 0.08, 1e-6);
}

TEST(Decay, DynamicalBranchWithoutNoiseMatchesAnalytic) {
  NoiseModel noise;
  noise.per_gate_p = 0.002;
  DecayOptions dyn;
  dyn.branch = DecayBranch::kDynamical;
  dyn.n_samples = dyn.steps = 1024;
  const DecayCurve a = repeated_gate_decay(gate_by_name("Y/2"), noise, 60);
  const DecayCurve d = repeated_gate_decay(gate_by_name("Y/2"), noise, 60, dyn);
  for (std::size_t k = 0; k < a.fidelity.size(); ++k) EXPECT_NEAR(a.fidelity[k], d.fidelity[k], 1e-6);
}

TEST(Decay, RejectsBadInputs) {
  EXPECT_THROW(repeated_gate_decay(gate_by_name("X"), NoiseModel{}, 5), std::invalid_argument);
  EXPECT_THROW(fit_decay({1}, {0.9}), FitError);
  EXPECT_THROW(fit_decay({1, 2}, {0.9}), FitError);
  EXPECT_THROW(fit_decay({1, 2}, {0.9, std::nan("")}), FitError);
}

}  // namespace
}  // namespace holosim
