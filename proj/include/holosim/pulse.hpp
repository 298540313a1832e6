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

// NHQC+ single-loop waveform synthesis and the truncated-Gaussian NHQC
// baseline for a three-level Lambda system {|0>, |1>, |a>}.

#include <array>
#include <filesystem>
#include <vector>

#include "holosim/core.hpp"

namespace holosim {

inline constexpr int kDefaultSamples = 4096;
inline constexpr double kDefaultOmegaMax = kTwoPi * 10e6;  // rad/s

/// Holonomic gate parameters plus the loop shape and timing.
struct GateSpec {
  double theta = kPi / 2;  // bright-state polar angle, rad
  double phi = 0.0;        // bright-state azimuth (gate axis), rad
  double gamma = kPi;      // holonomy angle, rad
  double eta = 1.0;        // path parameter of f = eta [2 beta - sin 2 beta]
  double tau = 0.0;        // loop duration, s
  double omega_max = kDefaultOmegaMax;  // peak Rabi frequency cap, rad/s

  void validate() const;
};

enum class Scheme { kNhqcPlus, kNhqcBaseline, kCustom };

const char* scheme_name(Scheme scheme);

/// Plain sampled columns, as written to and read from CSV.
struct WaveformTable {
  std::vector<double> t, omega1, omega2, phi1, phi2;
};

/// Sampled control fields. Samples sit at cell centres t_k = (k + 1/2) tau / n,
/// so every segment boundary (e.g. tau/2) falls between two samples.
/// Interpolation is linear in the complex fields Omega_k exp(-i phi_k) and
/// never crosses a segment boundary.
class Waveform {
 public:
  Waveform(double tau, std::vector<double> omega1, std::vector<double> omega2,
           std::vector<double> phi1, std::vector<double> phi2, Scheme scheme,
           std::vector<int> segment_starts = {0});

  double tau() const { return tau_; }
  int size() const { return static_cast<int>(omega1_.size()); }
  Scheme scheme() const { return scheme_; }
  double time(int k) const { return (k + 0.5) * tau_ / size(); }
  std::vector<double> times() const;
  const std::vector<double>& omega1() const { return omega1_; }
  const std::vector<double>& omega2() const { return omega2_; }
  const std::vector<double>& phi1() const { return phi1_; }
  const std::vector<double>& phi2() const { return phi2_; }
  /// Sample indices where a new segment begins; always starts with 0.
  const std::vector<int>& segment_starts() const { return segment_starts_; }
  /// Times of the interior segment boundaries.
  std::vector<double> breakpoints() const;

  double rabi(int k) const;
  double peak_rabi() const;
  /// Interpolated complex fields {Omega1 e^{-i phi1}, Omega2 e^{-i phi2}}.
  std::array<Complex, 2> fields_at(double t) const;

  WaveformTable table() const;

 private:
  double tau_;
  std::vector<double> omega1_, omega2_, phi1_, phi2_;
  std::vector<Complex> field1_, field2_;
  Scheme scheme_;
  std::vector<int> segment_starts_;
};

/// beta(t), f(t) and the dynamic azimuth varphi(t) on the sample grid.
struct PathProfiles {
  std::vector<double> t, beta, f, varphi;
};

/// Closed-form loop quantities at one instant. At t = tau/2 the values are the
/// right limit, i.e. varphi already includes the gamma jump.
struct LoopPoint {
  double beta, beta_dot, f, f_dot, varphi;
};

LoopPoint loop_point(const GateSpec& spec, double t);
PathProfiles path_profiles(const GateSpec& spec, int n_samples = kDefaultSamples);

/// Closed-form total Rabi frequency of the NHQC+ loop.
double nhqc_plus_rabi(const GateSpec& spec, double t);

Waveform synthesize_nhqc_plus(const GateSpec& spec, int n_samples = kDefaultSamples);
Waveform synthesize_nhqc_baseline(const GateSpec& spec, int n_samples = kDefaultSamples);

/// Rescales tau so the peak Rabi frequency equals omega_max. For the NHQC+
/// loop Omega scales as 1/tau; the baseline's Gaussian peak does too.
GateSpec normalize_amplitude(const GateSpec& spec, Scheme scheme = Scheme::kNhqcPlus);

/// max_t Omega(t) * tau for the NHQC+ loop with the given eta.
double nhqc_plus_peak_factor(double eta);

/// |int_0^{tau/2} e^{-i f} beta_dot sin^2(beta) dt|^2 by composite Simpson
/// quadrature. This is the alpha^2 coefficient of the amplitude-error
/// transition probability at the loop midpoint.
double sensitivity_integral(double eta);
double sensitivity_closed_form(double eta);

inline constexpr const char* kWaveformCsvHeader = "t,omega1,omega2,phi1,phi2";

void export_waveform(const Waveform& w, const std::filesystem::path& destination);
std::string waveform_csv(const Waveform& w);
WaveformTable import_waveform(const std::filesystem::path& source);

}  // namespace holosim
