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

#include "holosim/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace holosim {

namespace {

ChiMatrix exact_chi(const Matrix& m) {
  const TomographySettings exact;
  return qpt_qubit([&m](const Matrix& rho) { return Matrix(m * rho * m.adjoint()); }, exact);
}

Channel depolarize_after(const Channel& gate, double p) {
  std::vector<Matrix> images;
  images.reserve(4);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      const Matrix img = gate.image(i, j);
      images.push_back((1.0 - 2.0 * p) * img + p * img.trace() * Matrix::Identity(2, 2));
    }
  return Channel(2, std::move(images));
}

const std::array<StateVector, 6>& cardinal_states() {
  static const std::array<StateVector, 6> states = [] {
    const double r = 1.0 / std::sqrt(2.0);
    auto make = [](Complex a, Complex b) {
      Vector v(2);
      v << a, b;
      return StateVector::normalized(v);
    };
    return std::array<StateVector, 6>{make(1.0, 0.0), make(0.0, 1.0), make(r, r),
                                      make(r, -r),    make(r, kI * r), make(r, -kI * r)};
  }();
  return states;
}

}  // namespace

QubitGate::QubitGate(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != 2 || m_.cols() != 2) throw InvariantError("QubitGate: must be 2x2");
}

QubitGate QubitGate::ideal(Matrix u) {
  if ((u.adjoint() * u - Matrix::Identity(2, 2)).norm() > tol::kUnitary)
    throw InvariantError("QubitGate: not unitary");
  return QubitGate(std::move(u));
}

QubitGate ideal_unitary(double theta, double phi, double gamma) {
  if (gamma == 0.0) return QubitGate::ideal(Matrix::Identity(2, 2));
  const Matrix n_sigma = std::sin(theta) * std::cos(phi) * pauli::x() +
                         std::sin(theta) * std::sin(phi) * pauli::y() + std::cos(theta) * pauli::z();
  const Matrix rot = std::cos(gamma / 2) * Matrix::Identity(2, 2) - kI * std::sin(gamma / 2) * n_sigma;
  return QubitGate::ideal(std::exp(kI * (gamma / 2)) * rot);
}

StateVector bright_state(double theta, double phi) {
  Vector v(2);
  v << std::sin(theta / 2), -std::cos(theta / 2) * std::exp(kI * phi);
  return StateVector::normalized(v);
}

StateVector dark_state(double theta, double phi) {
  Vector v(2);
  v << std::cos(theta / 2), std::sin(theta / 2) * std::exp(kI * phi);
  return StateVector::normalized(v);
}

const std::vector<std::string>& library_gate_names() {
  static const std::vector<std::string> names{"I", "X/2", "Y/2", "X"};
  return names;
}

GateSpec gate_by_name(std::string_view name, double eta, double omega_max) {
  GateSpec spec;
  spec.theta = kPi / 2;
  spec.eta = eta;
  spec.omega_max = omega_max;
  if (name == "I") {
    spec.phi = 0.0;
    spec.gamma = 0.0;
  } else if (name == "X") {
    spec.phi = 0.0;
    spec.gamma = kPi;
  } else if (name == "X/2") {
    spec.phi = 0.0;
    spec.gamma = kPi / 2;
  } else if (name == "Y/2") {
    spec.phi = kPi / 2;
    spec.gamma = kPi / 2;
  } else {
    throw std::invalid_argument("gate_by_name: unknown gate '" + std::string(name) + "'");
  }
  return normalize_amplitude(spec, Scheme::kNhqcPlus);
}

QubitGate ideal_gate(const GateSpec& spec) { return ideal_unitary(spec.theta, spec.phi, spec.gamma); }

ExtractedGate extract_qubit_gate(const UnitaryOperator& u3) {
  if (u3.dim() != 3) throw std::invalid_argument("extract_qubit_gate: need a 3x3 propagator");
  Matrix block = u3.matrix().topLeftCorner(2, 2);
  const double leakage = std::clamp(1.0 - block.squaredNorm() / 2.0, 0.0, 1.0);
  return {QubitGate(std::move(block)), leakage};
}

double gate_fidelity(const ExtractedGate& extracted, const QubitGate& ideal) {
  return gate_fidelity(extracted.gate, ideal);
}

double gate_fidelity(const QubitGate& a, const QubitGate& b) {
  return std::clamp(process_fidelity(exact_chi(a.matrix()), exact_chi(b.matrix())), 0.0, 1.0);
}

GateRun simulate_gate(const GateSpec& spec, Scheme scheme, double alpha, int n_samples, int steps) {
  const GateSpec sized = spec.tau > 0.0 ? spec : normalize_amplitude(spec, scheme);
  Waveform w = scheme == Scheme::kNhqcBaseline ? synthesize_nhqc_baseline(sized, n_samples)
                                               : synthesize_nhqc_plus(sized, n_samples);
  NoiseModel noise;
  noise.alpha = alpha;
  const auto result = propagate_unitary(w, noise, steps);
  ExtractedGate extracted = extract_qubit_gate(*result.final_unitary);
  const double f = gate_fidelity(extracted, ideal_gate(sized));
  return {std::move(w), std::move(extracted), f};
}

DecayFit fit_decay(const std::vector<int>& n, const std::vector<double>& fidelity) {
  if (n.size() != fidelity.size()) throw FitError("fit_decay: size mismatch");
  if (n.size() < 2) throw FitError("fit_decay: need at least two points");
  for (std::size_t k = 0; k < n.size(); ++k)
    if (n[k] < 0 || !std::isfinite(fidelity[k])) throw FitError("fit_decay: invalid data point");

  constexpr double kPMax = 0.1;
  constexpr double kSpamMax = 0.2;
  // For fixed p the model is linear in (1 - spam): solve it in closed form
  // and clip to the box.
  auto profile = [&](double p) {
    const double lambda = 1.0 - 2.0 * p;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) {
      const double x = std::pow(lambda, n[k]);
      sxy += x * (2.0 * fidelity[k] - 1.0);
      sxx += x * x;
    }
    const double amp = std::clamp(sxx > 0.0 ? sxy / sxx : 1.0, 1.0 - kSpamMax, 1.0);
    double sse = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) {
      const double r = fidelity[k] - 0.5 * (1.0 + amp * std::pow(lambda, n[k]));
      sse += r * r;
    }
    return std::pair{sse, 1.0 - amp};
  };

  constexpr int kGrid = 2000;
  int best = 0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double sse = profile(kPMax * i / kGrid).first;
    if (sse < best_sse) {
      best_sse = sse;
      best = i;
    }
  }
  double lo = kPMax * std::max(best - 1, 0) / kGrid;
  double hi = kPMax * std::min(best + 1, kGrid) / kGrid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = profile(x1).first, f2 = profile(x2).first;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = profile(x1).first;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = profile(x2).first;
    }
  }
  double p = 0.5 * (lo + hi);
  auto [sse, spam] = profile(p);
  if (best_sse < sse) {
    p = kPMax * best / kGrid;
    std::tie(sse, spam) = profile(p);
  }
  if (!std::isfinite(sse)) throw FitError("fit_decay: non-finite residual");
  return {p, spam, sse};
}

DecayCurve repeated_gate_decay(const GateSpec& spec, const NoiseModel& noise, int n_max,
                               const DecayOptions& options) {
  if (n_max < 10) throw std::invalid_argument("repeated_gate_decay: n_max must be >= 10");
  noise.validate();
  if (noise.per_gate_p > 0.5) throw std::invalid_argument("repeated_gate_decay: per_gate_p > 1/2");
  const GateSpec sized = spec.tau > 0.0 ? spec : normalize_amplitude(spec, Scheme::kNhqcPlus);
  const Matrix target = ideal_gate(sized).matrix();

  Channel gate = Channel::from_unitary(target);
  if (options.branch == DecayBranch::kDynamical) {
    const Waveform w = synthesize_nhqc_plus(sized, options.n_samples);
    gate = monte_carlo_channel(w, noise, options.n_traj, options.steps).restrict(2);
  }
  const Channel step = depolarize_after(gate, noise.per_gate_p);

  const auto& inputs = cardinal_states();
  std::vector<std::vector<double>> per_input(inputs.size(), std::vector<double>(n_max));
#pragma omp parallel for schedule(static)
  for (int s = 0; s < static_cast<int>(inputs.size()); ++s) {
    Matrix rho = inputs[s].projector().matrix();
    Vector ideal = inputs[s].amplitudes();
    for (int k = 0; k < n_max; ++k) {
      rho = step.apply(rho);
      ideal = target * ideal;
      per_input[s][k] = std::clamp((ideal.adjoint() * rho * ideal)(0, 0).real(), 0.0, 1.0);
    }
  }

  DecayCurve curve;
  curve.n.resize(n_max);
  curve.fidelity.assign(n_max, 0.0);
  for (int k = 0; k < n_max; ++k) {
    curve.n[k] = k + 1;
    for (const auto& f : per_input) curve.fidelity[k] += f[k];
    curve.fidelity[k] /= static_cast<double>(per_input.size());
  }
  curve.fit = fit_decay(curve.n, curve.fidelity);
  return curve;
}

}  // namespace holosim
