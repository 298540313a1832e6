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

#include "holosim/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "holosim/io.hpp"

namespace holosim {

namespace {

using Mat3 = Eigen::Matrix3cd;
using Blocks = std::array<Mat3, 3>;  // nuclear propagator per electron manifold

double level_energy(const HybridParams& p, int e, int n) {
  const double ms = kLevelProjection[e];
  const double mi = kLevelProjection[n];
  return p.zero_field * ms * ms + p.gamma_e * p.field * ms + p.quadrupole * mi * mi +
         p.gamma_n * p.field * mi + p.hyperfine * ms * mi;
}

// Angular frequency of the nuclear |k> <-> |a> transition in manifold e,
// signed as E_a - E_k.
double nuclear_omega(const HybridParams& p, int e, int k) {
  return kTwoPi * (level_energy(p, e, 2) - level_energy(p, e, k));
}

// RF step propagators. In the frame of the static Hamiltonian the tone
// resonant in the target manifold is static there and rotates at
// omega_target - omega_e in manifold e.
Blocks rf_blocks(const CrotSequence& seq, const CrotStep& step, double alpha) {
  const Waveform& w = *seq.waveform;
  const int n_sub = static_cast<int>(std::llround(step.duration / seq.duration * w.size())) * seq.substeps;
  const double dt = step.duration / n_sub;
  const double scale = 0.5 * (1.0 + alpha);
  Blocks blocks;
  for (int e = 0; e < 3; ++e) {
    blocks[e] = Mat3::Identity();
    const bool resonant = e == step.manifold;
    if (!resonant && seq.selectivity == Selectivity::kIdeal) continue;
    const double d0 = nuclear_omega(seq.params, step.manifold, 0) - nuclear_omega(seq.params, e, 0);
    const double d1 = nuclear_omega(seq.params, step.manifold, 1) - nuclear_omega(seq.params, e, 1);
    for (int k = 0; k < n_sub; ++k) {
      const double t = step.start + (k + 0.5) * dt;
      const auto f = w.fields_at(t);
      Mat3 h = Mat3::Zero();
      h(0, 2) = scale * f[0];
      h(1, 2) = scale * f[1];
      if (!resonant) {
        h(0, 2) *= std::polar(1.0, d0 * t);
        h(1, 2) *= std::polar(1.0, d1 * t);
      }
      h(2, 0) = std::conj(h(0, 2));
      h(2, 1) = std::conj(h(1, 2));
      blocks[e] = detail::expm_hermitian3(h, dt) * blocks[e];
    }
  }
  return blocks;
}

std::vector<Blocks> precompute(const CrotSequence& seq, double alpha) {
  std::vector<Blocks> out(seq.steps.size());
  for (std::size_t s = 0; s < seq.steps.size(); ++s)
    if (seq.steps[s].kind == StepKind::kRf) out[s] = rf_blocks(seq, seq.steps[s], alpha);
  return out;
}

// Full propagator of one step for a static electron detuning. Drive and
// detuning commute, both being block-diagonal in the electron index.
Matrix step_unitary(const CrotStep& step, const Blocks& blocks, double detuning) {
  Matrix u = Matrix::Zero(kHybridDim, kHybridDim);
  switch (step.kind) {
    case StepKind::kRf:
      for (int e = 0; e < 3; ++e)
        u.block<3, 3>(3 * e, 3 * e) = std::polar(1.0, -detuning * kLevelProjection[e] * step.duration) * blocks[e];
      break;
    case StepKind::kElectronPi:
      for (int n = 0; n < 3; ++n) {
        u(hybrid_index(0, n), hybrid_index(1, n)) = 1.0;
        u(hybrid_index(1, n), hybrid_index(0, n)) = 1.0;
        u(hybrid_index(2, n), hybrid_index(2, n)) = 1.0;
      }
      break;
    case StepKind::kElectronPhase:
      u.setIdentity();
      for (int n = 0; n < 3; ++n) u(hybrid_index(step.manifold, n), hybrid_index(step.manifold, n)) = std::polar(1.0, step.phase);
      break;
  }
  return u;
}

Matrix run_trajectory(const CrotSequence& seq, const std::vector<Blocks>& blocks, const Matrix& rho0,
                      double detuning, double dephasing_rate) {
  Matrix rho = rho0;
  for (std::size_t s = 0; s < seq.steps.size(); ++s) {
    const CrotStep& step = seq.steps[s];
    const Matrix u = step_unitary(step, blocks[s], detuning);
    rho = u * rho * u.adjoint();
    if (step.duration > 0.0 && dephasing_rate > 0.0) {
      for (int j = 0; j < kHybridDim; ++j)
        for (int i = 0; i < kHybridDim; ++i) {
          const double d = kLevelProjection[i / 3] - kLevelProjection[j / 3];
          rho(i, j) *= std::exp(-0.5 * dephasing_rate * step.duration * d * d);
        }
    }
  }
  return rho;
}

double draw_detuning(const NoiseModel& noise, int k) {
  if (noise.detuning_sigma == 0.0) return 0.0;
  std::mt19937_64 rng(noise.rng_seed + static_cast<std::uint64_t>(k));
  std::normal_distribution<double> normal(0.0, 1.0);
  return noise.detuning_sigma * normal(rng);
}

void check_inputs(const CrotSequence& seq, const DensityMatrix& input, const NoiseModel& noise, int n_traj) {
  seq.validate();
  noise.validate();
  if (input.dim() != kHybridDim) throw std::invalid_argument("simulate_crot: need a 9-level input");
  if (n_traj < 1) throw std::invalid_argument("simulate_crot: n_traj must be >= 1");
}

CrotResult reduce(std::vector<Matrix>& per_traj, const std::optional<StateVector>& target) {
  const int n = static_cast<int>(per_traj.size());
  Matrix sum = Matrix::Zero(kHybridDim, kHybridDim);
  for (const Matrix& r : per_traj) sum += r;
  sum /= static_cast<double>(n);
  sum = 0.5 * (sum + sum.adjoint()).eval();
  CrotResult out{DensityMatrix(sum), {}, 0.0, 0.0};
  if (target) {
    const Vector& psi = target->amplitudes();
    out.fidelities.reserve(n);
    for (const Matrix& r : per_traj) out.fidelities.push_back(std::clamp(psi.dot(r * psi).real(), 0.0, 1.0));
    double mean = 0.0;
    for (double f : out.fidelities) mean += f;
    mean /= n;
    double var = 0.0;
    for (double f : out.fidelities) var += (f - mean) * (f - mean);
    out.mean_fidelity = mean;
    out.stderr_fidelity = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
  }
  return out;
}

Vector qubit(Complex a, Complex b) {
  Vector v = Vector::Zero(3);
  v(0) = a;
  v(1) = b;
  return v;
}

}  // namespace

void HybridParams::validate() const {
  const double vals[] = {zero_field, gamma_e, field, quadrupole, gamma_n, hyperfine};
  for (double v : vals)
    if (!std::isfinite(v)) throw std::invalid_argument("HybridParams: non-finite value");
  if (!(field > 0.0)) throw std::invalid_argument("HybridParams: B must be > 0");
  if (!(zero_field > 0.0)) throw std::invalid_argument("HybridParams: D must be > 0");
}

HermitianOperator static_hamiltonian(const HybridParams& p) {
  p.validate();
  Matrix h = Matrix::Zero(kHybridDim, kHybridDim);
  for (int e = 0; e < 3; ++e)
    for (int n = 0; n < 3; ++n) h(hybrid_index(e, n), hybrid_index(e, n)) = level_energy(p, e, n);
  return HermitianOperator(std::move(h));
}

std::vector<Transition> transition_table(const HybridParams& p) {
  const Matrix h = static_hamiltonian(p).matrix();
  static const char* kM[3] = {"-1", "+1", "0"};
  // Single-quantum pairs in level indices: (m=-1, m=0) and (m=0, m=+1).
  constexpr std::array<std::array<int, 2>, 2> kPairs{{{0, 2}, {2, 1}}};
  std::vector<Transition> out;
  for (int fixed = 0; fixed < 3; ++fixed)
    for (const auto& pr : kPairs) {
      const double e_el = std::abs(h(hybrid_index(pr[1], fixed), hybrid_index(pr[1], fixed)).real() -
                                   h(hybrid_index(pr[0], fixed), hybrid_index(pr[0], fixed)).real());
      out.push_back({'e', fixed, pr[0], pr[1],
                     std::string("e ms ") + kM[pr[0]] + "<->" + kM[pr[1]] + " | mI " + kM[fixed], e_el});
      const double e_nu = std::abs(h(hybrid_index(fixed, pr[1]), hybrid_index(fixed, pr[1])).real() -
                                   h(hybrid_index(fixed, pr[0]), hybrid_index(fixed, pr[0])).real());
      out.push_back({'n', fixed, pr[0], pr[1],
                     std::string("n mI ") + kM[pr[0]] + "<->" + kM[pr[1]] + " | ms " + kM[fixed], e_nu});
    }
  std::stable_sort(out.begin(), out.end(),
                   [](const Transition& a, const Transition& b) { return a.frequency < b.frequency; });
  return out;
}

void CrotSequence::validate() const {
  params.validate();
  if (!(duration >= 0.0)) throw std::invalid_argument("CrotSequence: negative duration");
  if (substeps < 1) throw std::invalid_argument("CrotSequence: substeps must be >= 1");
  if (steps.empty()) {
    if (duration != 0.0) throw std::invalid_argument("CrotSequence: no steps but nonzero duration");
    return;
  }
  if (!waveform) throw std::invalid_argument("CrotSequence: missing waveform");
  double rf_end = 0.0;
  double end = 0.0;
  for (const CrotStep& s : steps) {
    if (s.manifold < 0 || s.manifold > 2) throw std::invalid_argument("CrotSequence: bad manifold");
    if (s.kind == StepKind::kRf) {
      if (s.start < rf_end - 1e-15) throw std::invalid_argument("CrotSequence: overlapping RF steps");
      rf_end = s.start + s.duration;
    } else if (s.duration != 0.0) {
      throw std::invalid_argument("CrotSequence: electron steps are instantaneous");
    }
    end = std::max(end, s.start + s.duration);
  }
  if (std::abs(end - duration) > 1e-12 * std::max(1.0, duration))
    throw std::invalid_argument("CrotSequence: duration differs from last step end");
}

double rf_selectivity_bound(const HybridParams& p) { return kTwoPi * std::abs(p.hyperfine) / 5.0; }

GateSpec crot_rf_spec(const HybridParams& p, double duration, double eta) {
  GateSpec spec;
  spec.theta = kPi / 2;
  spec.phi = kPi / 2;
  spec.gamma = kPi;
  spec.eta = eta;
  spec.tau = duration;
  spec.omega_max = rf_selectivity_bound(p);
  return spec;
}

CrotSequence build_crot(const GateSpec& rf, const HybridParams& p, bool echo, const CrotOptions& options) {
  p.validate();
  CrotSequence seq;
  seq.echo = echo;
  seq.selectivity = options.selectivity;
  seq.substeps = options.substeps;
  seq.params = p;
  seq.rf_spec = rf;
  if (rf.tau == 0.0) return seq;
  rf.validate();
  const double bound = rf_selectivity_bound(p);
  if (rf.omega_max > bound * (1.0 + 1e-12))
    throw std::invalid_argument("build_crot: RF amplitude cap exceeds the selectivity bound |A_zz|/5");
  try {
    seq.waveform = std::make_shared<const Waveform>(synthesize_nhqc_plus(rf, options.n_samples));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("build_crot: duration too short, RF Rabi frequency would exceed the selectivity bound");
  }
  const double half = rf.tau / 2;
  seq.duration = rf.tau;
  seq.steps.push_back({StepKind::kRf, 0, 0.0, half, 0.0});
  if (echo) seq.steps.push_back({StepKind::kElectronPi, 0, half, 0.0, 0.0});
  seq.steps.push_back({StepKind::kRf, echo ? 1 : 0, half, half, 0.0});
  if (echo) seq.steps.push_back({StepKind::kElectronPi, 0, rf.tau, 0.0, 0.0});
  seq.steps.push_back({StepKind::kElectronPhase, 0, rf.tau, 0.0, -rf.gamma / 2});
  seq.validate();
  return seq;
}

Matrix ideal_crot() {
  Matrix u = Matrix::Identity(kHybridDim, kHybridDim);
  u(hybrid_index(0, 0), hybrid_index(0, 0)) = 0.0;
  u(hybrid_index(0, 1), hybrid_index(0, 1)) = 0.0;
  u(hybrid_index(0, 0), hybrid_index(0, 1)) = -1.0;
  u(hybrid_index(0, 1), hybrid_index(0, 0)) = 1.0;
  return u;
}

Matrix crot_unitary(const CrotSequence& seq, double alpha, double electron_detuning) {
  seq.validate();
  const auto blocks = precompute(seq, alpha);
  Matrix u = Matrix::Identity(kHybridDim, kHybridDim);
  for (std::size_t s = 0; s < seq.steps.size(); ++s) u = step_unitary(seq.steps[s], blocks[s], electron_detuning) * u;
  return u;
}

CrotResult simulate_crot(const CrotSequence& seq, const DensityMatrix& input, const NoiseModel& noise,
                         int n_traj, const std::optional<StateVector>& target) {
  check_inputs(seq, input, noise, n_traj);
  const auto blocks = precompute(seq, noise.alpha);
  std::vector<Matrix> per_traj(n_traj);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n_traj; ++k)
    per_traj[k] = run_trajectory(seq, blocks, input.matrix(), draw_detuning(noise, k), noise.dephasing_rate);
  return reduce(per_traj, target);
}

CrotResult simulate_crot_serial(const CrotSequence& seq, const DensityMatrix& input, const NoiseModel& noise,
                                int n_traj, const std::optional<StateVector>& target) {
  check_inputs(seq, input, noise, n_traj);
  const auto blocks = precompute(seq, noise.alpha);
  std::vector<Matrix> per_traj(n_traj);
  for (int k = 0; k < n_traj; ++k)
    per_traj[k] = run_trajectory(seq, blocks, input.matrix(), draw_detuning(noise, k), noise.dephasing_rate);
  return reduce(per_traj, target);
}

StateVector product_state(const Vector& electron, const Vector& nuclear) {
  return StateVector::normalized(tensor(electron, nuclear));
}

StateVector bell_input() {
  const double r = 1.0 / std::sqrt(2.0);
  return product_state(qubit(r, -r), qubit(0.0, 1.0));
}

StateVector bell_target() {
  Vector v = Vector::Zero(kHybridDim);
  v(hybrid_index(0, 0)) = 1.0;
  v(hybrid_index(1, 1)) = 1.0;
  return StateVector::normalized(v);
}

std::vector<SurveyInput> default_survey_inputs() {
  const double r = 1.0 / std::sqrt(2.0);
  const Vector n1 = qubit(0.0, 1.0);
  return {{"0", product_state(qubit(1.0, 0.0), n1)}, {"1", product_state(qubit(0.0, 1.0), n1)},
          {"+", product_state(qubit(r, r), n1)},     {"-", product_state(qubit(r, -r), n1)},
          {"+i", product_state(qubit(r, kI * r), n1)}, {"-i", product_state(qubit(r, -kI * r), n1)}};
}

std::vector<SurveyRow> crot_survey(const CrotSequence& seq, const NoiseModel& noise, int n_traj,
                                   const std::vector<SurveyInput>& inputs) {
  const Matrix ideal = ideal_crot();
  std::vector<SurveyRow> rows;
  for (const SurveyInput& in : inputs) {
    if (in.state.dim() != kHybridDim) throw std::invalid_argument("crot_survey: inputs must be 9-level states");
    const StateVector target(ideal * in.state.amplitudes());
    const CrotResult r = simulate_crot(seq, in.state.projector(), noise, n_traj, target);
    rows.push_back({in.label, r.mean_fidelity, r.stderr_fidelity});
  }
  return rows;
}

std::string survey_csv(const std::vector<SurveyRow>& rows) {
  std::string out = std::string(kSurveyCsvHeader) + "\n";
  for (const SurveyRow& r : rows)
    out += r.label + "," + format_double(r.fidelity) + "," + format_double(r.stderr_fidelity) + "\n";
  return out;
}

std::string crot_sequence_json(const CrotSequence& seq) {
  static const char* kKind[3] = {"rf", "electron_pi", "electron_phase"};
  nlohmann::json j;
  j["schema_version"] = 1;
  j["duration"] = seq.duration;
  j["echo"] = seq.echo;
  j["selectivity"] = seq.selectivity == Selectivity::kIdeal ? "ideal" : "secular";
  j["rf"] = {{"theta", seq.rf_spec.theta}, {"phi", seq.rf_spec.phi},     {"gamma", seq.rf_spec.gamma},
             {"eta", seq.rf_spec.eta},     {"tau", seq.rf_spec.tau},     {"omega_max", seq.rf_spec.omega_max}};
  j["steps"] = nlohmann::json::array();
  for (const CrotStep& s : seq.steps) {
    nlohmann::json step = {{"kind", kKind[static_cast<int>(s.kind)]},
                           {"manifold", s.manifold},
                           {"start", s.start},
                           {"duration", s.duration}};
    if (s.kind == StepKind::kRf) step["waveform"] = "nhqc_plus_rf";
    if (s.kind == StepKind::kElectronPhase) step["phase"] = s.phase;
    j["steps"].push_back(step);
  }
  return j.dump(2) + "\n";
}

Matrix computational_block(const Matrix& rho9) {
  if (rho9.rows() != kHybridDim || rho9.cols() != kHybridDim)
    throw std::invalid_argument("computational_block: need 9x9");
  constexpr int kIdx[4] = {hybrid_index(0, 0), hybrid_index(0, 1), hybrid_index(1, 0), hybrid_index(1, 1)};
  Matrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = rho9(kIdx[i], kIdx[j]);
  return out;
}

}  // namespace holosim
