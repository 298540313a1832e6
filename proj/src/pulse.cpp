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

#include "holosim/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "holosim/io.hpp"

namespace holosim {

namespace {

// Gaussian envelope truncated to a total width of 4 sigma (+-2 sigma).
constexpr double kGaussianHalfWidthSigmas = 2.0;

void require_samples(int n_samples, int minimum) {
  if (n_samples < minimum) throw std::invalid_argument("n_samples below minimum");
  if (n_samples % 2 != 0) {
    throw std::invalid_argument("n_samples must be even so tau/2 lands on a cell boundary");
  }
}

void require_within_cap(double peak, double omega_max) {
  if (peak > omega_max * (1.0 + 1e-6)) {
    std::ostringstream os;
    os << "peak Rabi frequency " << peak << " rad/s exceeds omega_max " << omega_max
       << "; lengthen tau or call normalize_amplitude";
    throw std::invalid_argument(os.str());
  }
}

double beta_of(double s) {
  const double sn = std::sin(kPi * s);
  return kPi * sn * sn;
}

// Omega * tau as a function of the reduced time s = t / tau.
double rabi_shape(double s, double eta) {
  const double b = beta_of(s);
  const double sb = std::sin(b);
  return kPi * kPi * std::abs(std::sin(kTwoPi * s)) *
         std::sqrt(1.0 + 16.0 * eta * eta * sb * sb * sb * sb * sb * sb);
}

double baseline_peak_factor() {
  // Segment length tau/2 = 4 sigma, so sigma = tau/8; unit pulse area pi.
  const double area_per_peak_sigma =
      std::sqrt(kTwoPi) * std::erf(kGaussianHalfWidthSigmas / std::sqrt(2.0));
  return kPi * 8.0 / area_per_peak_sigma;
}

}  // namespace

void GateSpec::validate() const {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::invalid_argument("GateSpec: theta outside [0, pi]");
  if (!std::isfinite(phi)) throw std::invalid_argument("GateSpec: phi not finite");
  if (!(gamma > -kTwoPi && gamma <= kTwoPi)) {
    throw std::invalid_argument("GateSpec: gamma outside (-2pi, 2pi]");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("GateSpec: eta must be > 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("GateSpec: tau must be > 0");
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
    throw std::invalid_argument("GateSpec: omega_max must be > 0");
  }
}

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kNhqcPlus:
      return "nhqc+";
    case Scheme::kNhqcBaseline:
      return "nhqc";
    case Scheme::kCustom:
      return "custom";
  }
  return "unknown";
}

Waveform::Waveform(double tau, std::vector<double> omega1, std::vector<double> omega2,
                   std::vector<double> phi1, std::vector<double> phi2, Scheme scheme,
                   std::vector<int> segment_starts)
    : tau_(tau),
      omega1_(std::move(omega1)),
      omega2_(std::move(omega2)),
      phi1_(std::move(phi1)),
      phi2_(std::move(phi2)),
      scheme_(scheme),
      segment_starts_(std::move(segment_starts)) {
  const std::size_t n = omega1_.size();
  if (!(tau_ > 0.0)) throw std::invalid_argument("Waveform: tau must be > 0");
  if (n == 0 || omega2_.size() != n || phi1_.size() != n || phi2_.size() != n) {
    throw std::invalid_argument("Waveform: sample arrays must be non-empty and equally long");
  }
  if (segment_starts_.empty() || segment_starts_.front() != 0 ||
      !std::is_sorted(segment_starts_.begin(), segment_starts_.end()) ||
      segment_starts_.back() >= static_cast<int>(n)) {
    throw std::invalid_argument("Waveform: bad segment starts");
  }
  field1_.resize(n);
  field2_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (omega1_[k] < 0.0 || omega2_[k] < 0.0) {
      throw std::invalid_argument("Waveform: Rabi amplitudes must be non-negative");
    }
    field1_[k] = std::polar(omega1_[k], -phi1_[k]);
    field2_[k] = std::polar(omega2_[k], -phi2_[k]);
  }
}

std::vector<double> Waveform::times() const {
  std::vector<double> t(size());
  for (int k = 0; k < size(); ++k) t[k] = time(k);
  return t;
}

std::vector<double> Waveform::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segment_starts_.size(); ++i) {
    out.push_back(segment_starts_[i] * tau_ / size());
  }
  return out;
}

double Waveform::rabi(int k) const { return std::hypot(omega1_[k], omega2_[k]); }

double Waveform::peak_rabi() const {
  double peak = 0.0;
  for (int k = 0; k < size(); ++k) peak = std::max(peak, rabi(k));
  return peak;
}

std::array<Complex, 2> Waveform::fields_at(double t) const {
  const int n = size();
  const double h = tau_ / n;
  // Segment containing t; the final segment is closed at tau.
  auto it = std::upper_bound(segment_starts_.begin(), segment_starts_.end(),
                             static_cast<int>(std::floor(t / h)));
  const int lo = *std::prev(it);
  const int hi = it == segment_starts_.end() ? n : *it;
  const double u = t / h - 0.5;
  if (u <= lo) return {field1_[lo], field2_[lo]};
  if (u >= hi - 1) return {field1_[hi - 1], field2_[hi - 1]};
  const int k = static_cast<int>(std::floor(u));
  const double w = u - k;
  return {(1.0 - w) * field1_[k] + w * field1_[k + 1], (1.0 - w) * field2_[k] + w * field2_[k + 1]};
}

WaveformTable Waveform::table() const {
  return {times(), omega1_, omega2_, phi1_, phi2_};
}

LoopPoint loop_point(const GateSpec& spec, double t) {
  const double tau = spec.tau;
  const double s = t / tau;
  const double beta = beta_of(s);
  const double beta_dot = (kPi * kPi / tau) * std::sin(kTwoPi * s);
  const double sb = std::sin(beta);
  const double f = spec.eta * (2.0 * beta - std::sin(2.0 * beta));
  const double f_dot = 4.0 * spec.eta * sb * sb * beta_dot;
  // varphi_dot = f_dot cos(beta) integrates to (4 eta / 3) sin^3(beta) on
  // each half; the second half starts from gamma.
  double varphi = (4.0 * spec.eta / 3.0) * sb * sb * sb;
  if (t >= 0.5 * tau) varphi += spec.gamma;
  return {beta, beta_dot, f, f_dot, varphi};
}

PathProfiles path_profiles(const GateSpec& spec, int n_samples) {
  spec.validate();
  require_samples(n_samples, 64);
  PathProfiles p;
  p.t.resize(n_samples);
  p.beta.resize(n_samples);
  p.f.resize(n_samples);
  p.varphi.resize(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double t = (k + 0.5) * spec.tau / n_samples;
    const LoopPoint lp = loop_point(spec, t);
    p.t[k] = t;
    p.beta[k] = lp.beta;
    p.f[k] = lp.f;
    p.varphi[k] = lp.varphi;
  }
  return p;
}

double nhqc_plus_rabi(const GateSpec& spec, double t) {
  const LoopPoint lp = loop_point(spec, t);
  return std::hypot(lp.beta_dot, lp.f_dot * std::sin(lp.beta));
}

Waveform synthesize_nhqc_plus(const GateSpec& spec, int n_samples) {
  spec.validate();
  require_samples(n_samples, 64);
  const double s1 = std::sin(spec.theta / 2);
  const double c1 = std::cos(spec.theta / 2);
  std::vector<double> o1(n_samples), o2(n_samples), p1(n_samples), p2(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double t = (k + 0.5) * spec.tau / n_samples;
    const LoopPoint lp = loop_point(spec, t);
    const double in_phase = lp.f_dot * std::sin(lp.beta);
    const double omega = std::hypot(lp.beta_dot, in_phase);
    const double chi = std::atan2(lp.beta_dot, in_phase);
    o1[k] = omega * s1;
    o2[k] = omega * c1;
    p1[k] = chi - lp.varphi;
    p2[k] = p1[k] - spec.phi - kPi;
  }
  Waveform w(spec.tau, std::move(o1), std::move(o2), std::move(p1), std::move(p2), Scheme::kNhqcPlus,
             {0, n_samples / 2});
  require_within_cap(w.peak_rabi(), spec.omega_max);
  return w;
}

Waveform synthesize_nhqc_baseline(const GateSpec& spec, int n_samples) {
  spec.validate();
  require_samples(n_samples, 64);
  const double segment = spec.tau / 2;
  const double sigma = segment / (2.0 * kGaussianHalfWidthSigmas);
  const double peak = baseline_peak_factor() / spec.tau;
  const double s1 = std::sin(spec.theta / 2);
  const double c1 = std::cos(spec.theta / 2);
  // Two resonant pi pulses b -> a -> b. A pi pulse with drive phase p maps
  // |b> -> -i e^{ip}|a> and |a> -> -i e^{-ip}|b>, so offsetting the second
  // phase by pi - gamma leaves |b> with e^{i gamma} and |d> untouched.
  const double second_phase = kPi - spec.gamma;
  std::vector<double> o1(n_samples), o2(n_samples), p1(n_samples), p2(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double t = (k + 0.5) * spec.tau / n_samples;
    const bool first = k < n_samples / 2;
    const double centre = first ? 0.5 * segment : 1.5 * segment;
    const double x = (t - centre) / sigma;
    const double omega = peak * std::exp(-0.5 * x * x);
    o1[k] = omega * s1;
    o2[k] = omega * c1;
    p1[k] = first ? 0.0 : second_phase;
    p2[k] = p1[k] - spec.phi - kPi;
  }
  Waveform w(spec.tau, std::move(o1), std::move(o2), std::move(p1), std::move(p2),
             Scheme::kNhqcBaseline, {0, n_samples / 2});
  require_within_cap(peak, spec.omega_max);
  return w;
}

double nhqc_plus_peak_factor(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  // Omega is symmetric about tau/2, so scan the first half and polish the
  // best grid point by golden-section search.
  constexpr int kGrid = 4096;
  int best = 1;
  double best_value = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    const double v = rabi_shape(0.5 * i / kGrid, eta);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = 0.5 * (best - 1) / kGrid;
  double b = 0.5 * (best + 1) / kGrid;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = rabi_shape(c, eta);
  double fd = rabi_shape(d, eta);
  for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = rabi_shape(c, eta);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = rabi_shape(d, eta);
    }
  }
  return std::max({best_value, fc, fd});
}

GateSpec normalize_amplitude(const GateSpec& spec, Scheme scheme) {
  if (!(spec.omega_max > 0.0)) throw std::invalid_argument("normalize_amplitude: omega_max must be > 0");
  GateSpec out = spec;
  switch (scheme) {
    case Scheme::kNhqcPlus:
      out.tau = nhqc_plus_peak_factor(spec.eta) / spec.omega_max;
      break;
    case Scheme::kNhqcBaseline:
      out.tau = baseline_peak_factor() / spec.omega_max;
      break;
    case Scheme::kCustom:
      throw std::invalid_argument("normalize_amplitude: custom waveforms have no closed form");
  }
  return out;
}

double sensitivity_integral(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("sensitivity_integral: eta must be > 0");
  // Work on tau = 1; beta_dot dt is scale free.
  GateSpec spec;
  spec.eta = eta;
  spec.tau = 1.0;
  constexpr int kIntervals = 8192;
  const double h = 0.5 / kIntervals;
  auto integrand = [&](double t) {
    const LoopPoint lp = loop_point(spec, t);
    const double sb = std::sin(lp.beta);
    return std::polar(lp.beta_dot * sb * sb, -lp.f);
  };
  Complex sum = integrand(0.0) + integrand(0.5);
  for (int i = 1; i < kIntervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * h);
  const Complex integral = sum * (h / 3.0);
  return std::norm(integral);
}

double sensitivity_closed_form(double eta) {
  const double s = std::sin(eta * kPi);
  return s * s / (4.0 * eta * eta);
}

std::string waveform_csv(const Waveform& w) {
  std::string out = kWaveformCsvHeader;
  out += '\n';
  for (int k = 0; k < w.size(); ++k) {
    out += format_double(w.time(k));
    out += ',';
    out += format_double(w.omega1()[k]);
    out += ',';
    out += format_double(w.omega2()[k]);
    out += ',';
    out += format_double(w.phi1()[k]);
    out += ',';
    out += format_double(w.phi2()[k]);
    out += '\n';
  }
  return out;
}

void export_waveform(const Waveform& w, const std::filesystem::path& destination) {
  write_text_file(destination, waveform_csv(w));
}

WaveformTable import_waveform(const std::filesystem::path& source) {
  std::istringstream in(read_text_file(source));
  std::string line;
  if (!std::getline(in, line) || line != kWaveformCsvHeader) {
    throw std::invalid_argument("import_waveform: unexpected header in " + source.string());
  }
  WaveformTable table;
  std::vector<double>* columns[] = {&table.t, &table.omega1, &table.omega2, &table.phi1, &table.phi2};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    for (auto* column : columns) {
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("import_waveform: short row");
      column->push_back(parse_double(cell));
    }
  }
  return table;
}

}  // namespace holosim
