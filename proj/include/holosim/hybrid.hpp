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

// Electron-nuclear register of an NV centre with a 14N nucleus: static
// Hamiltonian, transition table, and the holonomic CROT gate with an
// electron spin echo.
//
// Product basis index 3 e + n. Both spins use the level order
// {m = -1, m = +1, m = 0}, i.e. qubit |0>, qubit |1>, ancilla |a>.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holosim/core.hpp"
#include "holosim/dynamics.hpp"
#include "holosim/pulse.hpp"

namespace holosim {

inline constexpr int kHybridDim = 9;
inline constexpr std::array<int, 3> kLevelProjection{-1, 1, 0};
inline constexpr double kCrotDuration = 42e-6;  // s
inline constexpr double kCrotEta = 0.4;

constexpr int hybrid_index(int electron, int nuclear) { return 3 * electron + nuclear; }

/// All frequencies in Hz, field in G.
struct HybridParams {
  double zero_field = 2870e6;    // D
  double gamma_e = 2.8025e6;     // Hz/G
  double field = 378.0;          // B
  double quadrupole = -4.945e6;  // P
  double gamma_n = 307.7;        // Hz/G
  double hyperfine = -2.16e6;    // A_zz

  void validate() const;
};

/// Diagonal, in Hz.
HermitianOperator static_hamiltonian(const HybridParams& p);

struct Transition {
  char species;     // 'e' or 'n'
  int fixed_level;  // level index of the spectator spin
  int lower_level;  // level indices of the flipping spin
  int upper_level;
  std::string label;
  double frequency;  // Hz, |E_upper - E_lower|
};

/// Six electron and six nuclear single-quantum transitions, sorted by frequency.
std::vector<Transition> transition_table(const HybridParams& p);

enum class Selectivity {
  kIdeal,    // RF tones act only in their target electron manifold
  kSecular,  // tones also drive the other manifolds, off resonance
};

enum class StepKind { kRf, kElectronPi, kElectronPhase };

struct CrotStep {
  StepKind kind;
  int manifold;     // RF target manifold, or the manifold receiving a phase
  double start;     // s
  double duration;  // s; zero for the idealized electron steps
  double phase;     // rad, kElectronPhase only
};

struct CrotSequence {
  std::vector<CrotStep> steps;
  double duration = 0.0;
  bool echo = false;
  Selectivity selectivity = Selectivity::kSecular;
  int substeps = 4;  // propagation steps per waveform sample
  HybridParams params;
  GateSpec rf_spec;
  std::shared_ptr<const Waveform> waveform;  // spans [0, duration)

  void validate() const;
};

/// Peak RF Rabi frequency allowed by the selectivity bound |A_zz| / 5, rad/s.
double rf_selectivity_bound(const HybridParams& p);

/// (theta, phi, gamma) = (pi/2, pi/2, pi): e^{i pi/2} R_y(pi) on the nuclear qubit.
GateSpec crot_rf_spec(const HybridParams& p, double duration = kCrotDuration, double eta = kCrotEta);

struct CrotOptions {
  Selectivity selectivity = Selectivity::kSecular;
  int n_samples = kDefaultSamples;
  int substeps = 4;
};

/// RF loop in the m_s = -1 manifold. With echo, ideal electron pi pulses at
/// the midpoint and the end swap the electron qubit levels, and the RF
/// tones follow the swapped population during the second half. A final
/// virtual phase on the control manifold removes the holonomic e^{i gamma/2}.
/// Zero duration gives an empty sequence.
CrotSequence build_crot(const GateSpec& rf, const HybridParams& p, bool echo, const CrotOptions& options = {});

/// diag(R_y(pi), 1) on the control manifold, identity elsewhere.
Matrix ideal_crot();

/// Noise-free sequence propagator with RF amplitude error alpha and a
/// static electron detuning (rad/s).
Matrix crot_unitary(const CrotSequence& seq, double alpha = 0.0, double electron_detuning = 0.0);

struct CrotResult {
  DensityMatrix rho;
  std::vector<double> fidelities;  // per trajectory, when a target is given
  double mean_fidelity = 0.0;
  double stderr_fidelity = 0.0;
};

/// Trajectory k draws the electron detuning from a generator seeded with
/// rng_seed + k, so runs with equal seeds are paired. Electron Lindblad
/// dephasing uses S_z (x) I at dephasing_rate.
CrotResult simulate_crot(const CrotSequence& seq, const DensityMatrix& input, const NoiseModel& noise,
                         int n_traj, const std::optional<StateVector>& target = std::nullopt);
CrotResult simulate_crot_serial(const CrotSequence& seq, const DensityMatrix& input,
                                const NoiseModel& noise, int n_traj,
                                const std::optional<StateVector>& target = std::nullopt);

/// (|0>_e - |1>_e)/sqrt2 (x) |1>_n and its ideal image (|00> + |11>)/sqrt2.
StateVector bell_input();
StateVector bell_target();

StateVector product_state(const Vector& electron, const Vector& nuclear);

struct SurveyInput {
  std::string label;
  StateVector state;
};

/// {|0>, |1>, |+>, |->, |+i>, |-i>}_e (x) |1>_n.
std::vector<SurveyInput> default_survey_inputs();

struct SurveyRow {
  std::string label;
  double fidelity;
  double stderr_fidelity;
};

std::vector<SurveyRow> crot_survey(const CrotSequence& seq, const NoiseModel& noise, int n_traj,
                                   const std::vector<SurveyInput>& inputs = default_survey_inputs());

inline constexpr const char* kSurveyCsvHeader = "input_label,fidelity,stderr";
std::string survey_csv(const std::vector<SurveyRow>& rows);

std::string crot_sequence_json(const CrotSequence& seq);

/// 4x4 block on the electron and nuclear qubit levels.
Matrix computational_block(const Matrix& rho9);

}  // namespace holosim
