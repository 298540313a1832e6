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

// Target holonomic gates, gate extraction from Lambda-system propagators,
// and repeated-gate fidelity decay.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "holosim/core.hpp"
#include "holosim/dynamics.hpp"
#include "holosim/pulse.hpp"
#include "holosim/tomography.hpp"

namespace holosim {

inline constexpr double kQptEta = 0.4;
inline constexpr double kRobustnessEta = 1.0;

/// 2x2 operator on {|0>, |1>}. Unitary when built through `ideal`.
class QubitGate {
 public:
  explicit QubitGate(Matrix m);
  /// Requires unitarity within 1e-8.
  static QubitGate ideal(Matrix u);

  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// e^{i gamma/2} exp(-i (gamma/2) n.sigma), n = (sin t cos p, sin t sin p, cos t).
/// Equals |d><d| + e^{i gamma}|b><b| with the dark state as the +1
/// eigenvector of n.sigma.
QubitGate ideal_unitary(double theta, double phi, double gamma);

/// Bright and dark states of the drive for the given (theta, phi).
StateVector bright_state(double theta, double phi);
StateVector dark_state(double theta, double phi);

/// One of "I", "X", "X/2", "Y/2". tau is set by amplitude normalization.
GateSpec gate_by_name(std::string_view name, double eta = kQptEta, double omega_max = kDefaultOmegaMax);
const std::vector<std::string>& library_gate_names();
QubitGate ideal_gate(const GateSpec& spec);

struct ExtractedGate {
  QubitGate gate;
  double leakage;  // 1 - |block|_F^2 / 2
};

ExtractedGate extract_qubit_gate(const UnitaryOperator& u3);

/// |Tr(chi_a chi_b^dag)| with both chi from exact-expectation tomography.
double gate_fidelity(const ExtractedGate& extracted, const QubitGate& ideal);
double gate_fidelity(const QubitGate& a, const QubitGate& b);

struct GateRun {
  Waveform waveform;
  ExtractedGate extracted;
  double fidelity;
};

/// Synthesize, propagate (noise-free except for the amplitude error) and
/// compare with the target.
GateRun simulate_gate(const GateSpec& spec, Scheme scheme = Scheme::kNhqcPlus, double alpha = 0.0,
                      int n_samples = kDefaultSamples, int steps = kDefaultSamples);

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecayFit {
  double p;     // per-gate error
  double spam;  // epsilon_if
  double sse;
};

/// Least squares for F = [1 + (1 - spam)(1 - 2p)^N] / 2 with p in [0, 0.1],
/// spam in [0, 0.2].
DecayFit fit_decay(const std::vector<int>& n, const std::vector<double>& fidelity);

inline double decay_model(double p, double spam, int n) {
  return 0.5 * (1.0 + (1.0 - spam) * std::pow(1.0 - 2.0 * p, n));
}

enum class DecayBranch {
  kAnalytic,    // ideal gate followed by depolarizing per_gate_p
  kDynamical,   // Monte Carlo channel of the synthesized pulse, then per_gate_p
};

struct DecayOptions {
  DecayBranch branch = DecayBranch::kAnalytic;
  int n_samples = kDefaultSamples;
  int steps = kDefaultSamples;
  int n_traj = 1;
};

struct DecayCurve {
  std::vector<int> n;
  std::vector<double> fidelity;
  DecayFit fit;
};

/// Mean fidelity over the six Pauli eigenstates after N = 1..n_max gates,
/// each compared with N applications of the ideal gate.
DecayCurve repeated_gate_decay(const GateSpec& spec, const NoiseModel& noise, int n_max,
                               const DecayOptions& options = {});

}  // namespace holosim
