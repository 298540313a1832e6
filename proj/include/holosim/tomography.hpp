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

// Single-qubit state and process tomography with a fluorescence readout
// model, plus positivity repair of reconstructed process matrices.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holosim/core.hpp"

namespace holosim {

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {I, sigma_x, sigma_y, sigma_z}.
const std::array<Matrix, 4>& pauli_basis();
inline constexpr std::array<const char*, 4> kChiBasisLabels{"I", "X", "Y", "Z"};

/// Process matrix in the Pauli basis: E(rho) = sum_ij chi_ij A_i rho A_j^dag.
class ChiMatrix {
 public:
  /// Requires a Hermitian 4x4 (within 1e-8); stores the symmetrized matrix.
  explicit ChiMatrix(Matrix chi);

  static ChiMatrix from_unitary(const Matrix& u);

  const Matrix& matrix() const { return chi_; }
  double trace() const { return chi_.trace().real(); }
  double min_eigenvalue() const;
  /// sum_ij chi_ij A_j^dag A_i, which equals I for a trace-preserving map.
  Matrix trace_map() const;
  double trace_preservation_residual() const;
  Matrix apply(const Matrix& rho) const;

 private:
  Matrix chi_;
};

/// |Tr(chi_a chi_b^dag)|.
double process_fidelity(const ChiMatrix& a, const ChiMatrix& b);

struct ReadoutParams {
  double contrast = 0.25;
  double counts_bright = 0.3;  // expected photons per readout of the bright state
  std::int64_t repeats = 10'000'000;
  double readout_window = 300e-9;  // s

  double counts_dark() const { return counts_bright * (1.0 - contrast); }
  void validate() const;
};

/// Accumulated photon counts over all repeats. Poisson when `sample` is
/// true, otherwise the mean itself.
double simulate_readout(double p0, const ReadoutParams& params, std::uint64_t seed, bool sample = true);

struct ReadoutEstimate {
  double p0;
  bool clipped;
};

/// P0 = (I - I_min) / (I_max - I_min) with I the counts per repeat, clipped
/// to [0, 1].
ReadoutEstimate invert_readout(double counts, const ReadoutParams& params);

enum class ReadoutMode {
  kExact,    // expectation values taken directly from the state
  kMean,     // through the readout model with noise switched off
  kSampled,  // Poisson photon counts
};

struct TomographySettings {
  ReadoutMode mode = ReadoutMode::kExact;
  ReadoutParams readout;
  std::uint64_t seed = 0;
};

struct ReadoutRecord {
  std::string setting;
  double counts;
};

/// Linear-inversion estimate from the three Pauli expectations followed by
/// eigenvalue clipping. In exact mode the trace of `rho` is kept (so loss
/// out of the qubit shows up); in readout modes it is renormalized to 1.
/// `stream` separates the random streams of different preparations.
Matrix estimate_qubit_state(const Matrix& rho, const TomographySettings& settings,
                            std::uint64_t stream, std::vector<ReadoutRecord>* trace = nullptr);

/// Reconstructs a qubit density matrix from a known state.
DensityMatrix qst_qubit(const DensityMatrix& rho, const TomographySettings& settings,
                        std::uint64_t stream = 0);

using QubitProcess = std::function<Matrix(const Matrix&)>;

/// The four preparations |0>, |1>, |+>, (|0> - i|1>)/sqrt2.
const std::array<Matrix, 4>& qpt_input_states();

/// Raw chi from state tomography of the four prepared inputs.
ChiMatrix qpt_qubit(const QubitProcess& process, const TomographySettings& settings,
                    std::vector<ReadoutRecord>* trace = nullptr);

/// Exact-expectation two-qubit reconstruction from the 15 nontrivial Pauli
/// products plus the trace, ordered control (x) target.
Matrix qst_two_qubit_exact(const Matrix& rho4);

struct MleReport {
  ChiMatrix chi;
  int iterations;
  double residual;
};

/// Closest positive semidefinite, trace-preserving chi in Frobenius norm,
/// found with Dykstra's alternating projections.
MleReport mle_repair_report(const ChiMatrix& raw);
ChiMatrix mle_repair(const ChiMatrix& raw);

}  // namespace holosim
