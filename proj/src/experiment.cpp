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

#include "holosim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "holosim/dynamics.hpp"
#include "holosim/gates.hpp"
#include "holosim/hybrid.hpp"
#include "holosim/io.hpp"
#include "holosim/pulse.hpp"
#include "holosim/tomography.hpp"

namespace holosim {

using nlohmann::json;

namespace {

void merge_into(json& target, const json& source, const std::string& prefix) {
  if (!source.is_object()) throw ConfigError("config: '" + (prefix.empty() ? "<root>" : prefix) + "' must be an object");
  for (const auto& [key, value] : source.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!target.contains(key)) throw ConfigError("config: unknown key '" + path + "'");
    json& slot = target[key];
    if (slot.is_object()) {
      merge_into(slot, value, path);
    } else if (slot.is_number_float()) {
      if (!value.is_number()) throw ConfigError("config: '" + path + "' must be a number");
      slot = value.get<double>();
    } else if (slot.is_number_unsigned()) {
      if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() && value.get<std::int64_t>() < 0))
        throw ConfigError("config: '" + path + "' must be a non-negative integer");
      slot = value.get<std::uint64_t>();
    } else if (slot.is_number_integer()) {
      if (!value.is_number_integer()) throw ConfigError("config: '" + path + "' must be an integer");
      slot = value.get<std::int64_t>();
    } else if (slot.is_boolean()) {
      if (!value.is_boolean()) throw ConfigError("config: '" + path + "' must be a boolean");
      slot = value;
    } else if (slot.is_string()) {
      if (!value.is_string()) throw ConfigError("config: '" + path + "' must be a string");
      slot = value;
    }
  }
}

json parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + text + "' is not key=value");
  const std::string key = text.substr(0, eq);
  const std::string raw = text.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("override '" + text + "' has an empty key segment");
    parts.push_back(part);
  }
  json out = value;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) out = json{{*it, out}};
  return out;
}

std::vector<double> grid(double lo, double hi, double step) {
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = std::round((lo + i * step) * 1e12) / 1e12;
  return out;
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string gate_tag(const std::string& name) {
  std::string tag;
  for (char c : name)
    if (c != '/') tag += c;
  return tag;
}

std::string csv_line(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ',';
    line += format_double(v);
  }
  return line + "\n";
}

json complex_matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json real_part_json(const Matrix& m, bool imag) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(row);
  }
  return rows;
}

json chi_json(const ChiMatrix& chi) {
  return {{"basis", {kChiBasisLabels[0], kChiBasisLabels[1], kChiBasisLabels[2], kChiBasisLabels[3]}},
          {"matrix", complex_matrix_json(chi.matrix())}};
}

// Typed views of the configuration.
struct View {
  const json& v;
  double d(const char* a, const char* b = nullptr) const {
    return b ? v.at(a).at(b).get<double>() : v.at(a).get<double>();
  }
  std::int64_t i(const char* a, const char* b = nullptr) const {
    return b ? v.at(a).at(b).get<std::int64_t>() : v.at(a).get<std::int64_t>();
  }
  std::string s(const char* a, const char* b) const { return v.at(a).at(b).get<std::string>(); }
  bool flag(const char* a, const char* b) const { return v.at(a).at(b).get<bool>(); }
  std::uint64_t seed() const { return v.at("rng_seed").get<std::uint64_t>(); }
  int n_samples() const { return static_cast<int>(i("n_samples")); }
  int steps() const { return static_cast<int>(i("steps")); }
  int n_traj() const { return static_cast<int>(i("n_traj")); }
  double omega_max() const { return kTwoPi * d("rabi_max_hz"); }

  GateSpec gate(double eta) const {
    GateSpec g;
    g.theta = d("gate", "theta");
    g.phi = d("gate", "phi");
    g.gamma = d("gate", "gamma");
    g.eta = eta;
    g.omega_max = omega_max();
    return g;
  }
  NoiseModel noise() const {
    NoiseModel n;
    n.alpha = d("noise", "alpha");
    n.detuning_sigma = d("noise", "detuning_sigma");
    n.dephasing_rate = d("noise", "dephasing_rate");
    n.rng_seed = seed();
    return n;
  }
  ReadoutParams readout() const {
    ReadoutParams r;
    r.contrast = d("readout", "contrast");
    r.counts_bright = d("readout", "counts_bright");
    r.readout_window = d("readout", "window");
    r.repeats = i("shots");
    return r;
  }
  ReadoutMode readout_mode() const {
    const std::string m = s("qpt", "readout");
    if (m == "exact") return ReadoutMode::kExact;
    if (m == "mean") return ReadoutMode::kMean;
    if (m == "sampled") return ReadoutMode::kSampled;
    throw ConfigError("config: qpt.readout must be exact, mean or sampled");
  }
  HybridParams hybrid() const {
    HybridParams p;
    p.zero_field = d("hybrid", "zero_field");
    p.gamma_e = d("hybrid", "gamma_e");
    p.field = d("hybrid", "field");
    p.quadrupole = d("hybrid", "quadrupole");
    p.gamma_n = d("hybrid", "gamma_n");
    p.hyperfine = d("hybrid", "hyperfine");
    return p;
  }
  CrotSequence crot() const {
    CrotOptions o;
    const std::string sel = s("hybrid", "selectivity");
    if (sel == "ideal") o.selectivity = Selectivity::kIdeal;
    else if (sel == "secular") o.selectivity = Selectivity::kSecular;
    else throw ConfigError("config: hybrid.selectivity must be ideal or secular");
    o.n_samples = n_samples();
    o.substeps = static_cast<int>(i("hybrid", "substeps"));
    const HybridParams p = hybrid();
    return build_crot(crot_rf_spec(p, d("hybrid", "duration"), d("hybrid", "eta")), p, flag("hybrid", "echo"), o);
  }
  NoiseModel crot_noise() const {
    NoiseModel n;
    const double t2s = d("hybrid", "t2star");
    const double t2e = d("hybrid", "t2_echo");
    if (t2s < 0.0 || t2e < 0.0) throw ConfigError("config: coherence times must be >= 0");
    n.detuning_sigma = t2s > 0.0 ? detuning_sigma_from_t2star(t2s) : 0.0;
    // Bell coherence spans Delta m_s = 2, so it decays as exp(-2 rate t).
    n.dephasing_rate = t2e > 0.0 ? 1.0 / (2.0 * t2e) : 0.0;
    n.rng_seed = seed();
    return n;
  }
  DecayBranch decay_branch() const {
    const std::string b = s("decay", "branch");
    if (b == "analytic") return DecayBranch::kAnalytic;
    if (b == "dynamical") return DecayBranch::kDynamical;
    throw ConfigError("config: decay.branch must be analytic or dynamical");
  }
};

Waveform synthesize(const GateSpec& spec, Scheme scheme, int n) {
  const GateSpec sized = normalize_amplitude(spec, scheme);
  return scheme == Scheme::kNhqcBaseline ? synthesize_nhqc_baseline(sized, n) : synthesize_nhqc_plus(sized, n);
}

Vector embed(const StateVector& q) {
  Vector v = Vector::Zero(3);
  v.head(2) = q.amplitudes();
  return v;
}

ExperimentResult run_trajectory(const View& c) {
  const GateSpec spec = c.gate(c.d("trajectory", "eta"));
  const Waveform w = synthesize(spec, Scheme::kNhqcPlus, c.n_samples());
  const StateVector a = StateVector::basis(3, 2);
  const StateVector b(embed(bright_state(spec.theta, spec.phi)));
  const StateVector dk(embed(dark_state(spec.theta, spec.phi)));
  const NoiseModel noise = c.noise();
  Trajectory traj;
  if (noise.dephasing_rate > 0.0) {
    traj = propagate_lindblad(w, noise, c.steps(), b.projector(), {a, b, dk}).trajectory;
  } else {
    traj = propagate_unitary(w, noise, c.steps(), TrajectoryRequest{b, {a, b, dk}}).trajectory;
  }
  std::string csv = "t,p_a,p_b,p_d\n";
  for (std::size_t k = 0; k < traj.t.size(); ++k)
    csv += csv_line({traj.t[k], traj.populations[0][k], traj.populations[1][k], traj.populations[2][k]});
  return {"trajectory", "", {{"trajectory.csv", csv}}};
}

ExperimentResult run_robustness(const View& c) {
  const std::vector<double> alphas =
      grid(c.d("robustness", "alpha_min"), c.d("robustness", "alpha_max"), c.d("robustness", "alpha_step"));
  const GateSpec spec = c.gate(c.d("robustness", "eta"));
  const int n = c.n_samples(), steps = c.steps();
  std::vector<std::array<double, 2>> p1(alphas.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(alphas.size()); ++i) {
    const auto plus = simulate_gate(spec, Scheme::kNhqcPlus, alphas[i], n, steps);
    const auto base = simulate_gate(spec, Scheme::kNhqcBaseline, alphas[i], n, steps);
    p1[i] = {std::norm(plus.extracted.gate.matrix()(1, 0)), std::norm(base.extracted.gate.matrix()(1, 0))};
  }
  std::string csv = "alpha,p1_nhqcplus,p1_nhqc\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) csv += csv_line({alphas[i], p1[i][0], p1[i][1]});
  return {"robustness", "", {{"robustness.csv", csv}}};
}

ExperimentResult run_qpt(const View& c) {
  ExperimentResult out{"qpt", "", {}};
  const double eta = c.d("qpt", "eta");
  const NoiseModel noise = c.noise();
  std::string summary = "gate,fidelity_raw,fidelity_mle,leakage\n";
  const auto& names = library_gate_names();
  for (std::size_t g = 0; g < names.size(); ++g) {
    const GateSpec spec = gate_by_name(names[g], eta, c.omega_max());
    const Waveform w = synthesize_nhqc_plus(spec, c.n_samples());
    const Channel channel = monte_carlo_channel(w, noise, c.n_traj(), c.steps()).restrict(2);
    const double leakage =
        std::clamp(1.0 - 0.5 * (channel.image(0, 0).trace().real() + channel.image(1, 1).trace().real()), 0.0, 1.0);
    TomographySettings settings;
    settings.mode = c.readout_mode();
    settings.readout = c.readout();
    settings.seed = c.seed() + 1000 * g;
    std::vector<ReadoutRecord> records;
    const ChiMatrix raw = qpt_qubit([&](const Matrix& rho) { return channel.apply(rho); }, settings, &records);
    const MleReport mle = mle_repair_report(raw);
    const ChiMatrix ideal = ChiMatrix::from_unitary(ideal_gate(spec).matrix());
    const double f_raw = process_fidelity(raw, ideal);
    const double f_mle = process_fidelity(mle.chi, ideal);
    const std::string tag = gate_tag(names[g]);
    json j{{"schema_version", kSchemaVersion},
           {"gate", names[g]},
           {"eta", eta},
           {"tau", spec.tau},
           {"readout", c.s("qpt", "readout")},
           {"chi_ideal", chi_json(ideal)},
           {"chi_raw", chi_json(raw)},
           {"chi_mle", chi_json(mle.chi)},
           {"mle_iterations", mle.iterations},
           {"fidelity_raw", f_raw},
           {"fidelity_mle", f_mle},
           {"leakage", leakage}};
    out.files.push_back({"qpt_" + tag + ".json", j.dump(2) + "\n"});
    if (!records.empty()) {
      std::string trace = "setting,counts\n";
      for (const auto& r : records) trace += r.setting + "," + format_double(r.counts) + "\n";
      out.files.push_back({"readout_" + tag + ".csv", trace});
    }
    summary += names[g] + "," + format_double(f_raw) + "," + format_double(f_mle) + "," + format_double(leakage) + "\n";
  }
  out.files.push_back({"qpt_summary.csv", summary});
  return out;
}

ExperimentResult run_decay(const View& c) {
  const std::string name = c.s("decay", "gate");
  const GateSpec spec = gate_by_name(name, c.d("decay", "eta"), c.omega_max());
  NoiseModel noise = c.noise();
  noise.per_gate_p = c.d("decay", "per_gate_p");
  DecayOptions opts;
  opts.branch = c.decay_branch();
  opts.n_samples = c.n_samples();
  opts.steps = c.steps();
  opts.n_traj = c.n_traj();
  const DecayCurve curve = repeated_gate_decay(spec, noise, static_cast<int>(c.i("decay", "n_max")), opts);
  std::string csv = "n,fidelity\n";
  for (std::size_t k = 0; k < curve.n.size(); ++k)
    csv += std::to_string(curve.n[k]) + "," + format_double(curve.fidelity[k]) + "\n";
  json fit{{"schema_version", kSchemaVersion},
           {"gate", name},
           {"branch", c.s("decay", "branch")},
           {"per_gate_p_injected", noise.per_gate_p},
           {"p", curve.fit.p},
           {"spam", curve.fit.spam},
           {"sse", curve.fit.sse},
           {"average_gate_fidelity", 1.0 - curve.fit.p}};
  return {"decay", "", {{"decay.csv", csv}, {"decay_fit.json", fit.dump(2) + "\n"}}};
}

ExperimentResult run_crot(const View& c) {
  const CrotSequence seq = c.crot();
  const NoiseModel noise = c.crot_noise();
  const int n_traj = static_cast<int>(c.i("hybrid", "n_traj"));
  const CrotResult bell = simulate_crot(seq, bell_input().projector(), noise, n_traj, bell_target());
  const Matrix rho = qst_two_qubit_exact(computational_block(bell.rho.matrix()));
  json j{{"schema_version", kSchemaVersion},
         {"echo", seq.echo},
         {"n_traj", n_traj},
         {"basis", {"00", "01", "10", "11"}},
         {"rho_real", real_part_json(rho, false)},
         {"rho_imag", real_part_json(rho, true)},
         {"fidelity", bell.mean_fidelity},
         {"stderr", bell.stderr_fidelity}};
  const auto rows = crot_survey(seq, noise, n_traj);
  return {"crot", "", {{"bell.json", j.dump(2) + "\n"}, {"survey.csv", survey_csv(rows)},
                       {"sequence.json", crot_sequence_json(seq)}}};
}

ExperimentResult run_sensitivity(const View& c) {
  const auto etas = grid(c.d("sensitivity", "eta_min"), c.d("sensitivity", "eta_max"), c.d("sensitivity", "eta_step"));
  std::vector<double> values(etas.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < static_cast<int>(etas.size()); ++i) values[i] = sensitivity_integral(etas[i]);
  std::string csv = "eta,integral,closed_form\n";
  for (std::size_t i = 0; i < etas.size(); ++i) csv += csv_line({etas[i], values[i], sensitivity_closed_form(etas[i])});
  return {"sensitivity", "", {{"sensitivity.csv", csv}}};
}

ExperimentResult run_waveform(const View& c) {
  ExperimentResult out{"waveform", "", {}};
  for (const std::string& name : split_names(c.s("waveform", "gates"))) {
    GateSpec spec = gate_by_name(name, c.d("waveform", "eta"), c.omega_max());
    out.files.push_back({"waveform_" + gate_tag(name) + "_nhqc_plus.csv",
                         waveform_csv(synthesize_nhqc_plus(spec, c.n_samples()))});
    out.files.push_back({"waveform_" + gate_tag(name) + "_nhqc.csv",
                         waveform_csv(synthesize(spec, Scheme::kNhqcBaseline, c.n_samples()))});
  }
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"trajectory", "robustness", "qpt", "decay",
                                              "crot",       "sensitivity", "waveform"};
  return names;
}

json default_config() {
  const HybridParams hp;
  const ReadoutParams rp;
  return json{
      {"experiment", "trajectory"},
      {"rng_seed", std::uint64_t{0}},
      {"n_samples", std::int64_t{kDefaultSamples}},
      {"steps", std::int64_t{kDefaultSamples}},
      {"n_traj", std::int64_t{1}},
      {"shots", std::int64_t{rp.repeats}},
      {"rabi_max_hz", kDefaultOmegaMax / kTwoPi},
      {"gate", {{"theta", kPi / 2}, {"phi", 0.0}, {"gamma", kPi}}},
      {"noise", {{"alpha", 0.0}, {"detuning_sigma", 0.0}, {"dephasing_rate", 0.0}}},
      {"readout", {{"contrast", rp.contrast}, {"counts_bright", rp.counts_bright}, {"window", rp.readout_window}}},
      {"trajectory", {{"eta", kRobustnessEta}}},
      {"robustness", {{"eta", kRobustnessEta}, {"alpha_min", -0.2}, {"alpha_max", 0.2}, {"alpha_step", 0.04}}},
      {"qpt", {{"eta", kQptEta}, {"readout", "sampled"}}},
      {"decay",
       {{"gate", "Y/2"}, {"eta", kQptEta}, {"n_max", std::int64_t{500}}, {"branch", "analytic"}, {"per_gate_p", 0.0039}}},
      {"sensitivity", {{"eta_min", 0.1}, {"eta_max", 2.0}, {"eta_step", 0.1}}},
      {"waveform", {{"gates", "X,Y/2"}, {"eta", kQptEta}}},
      {"hybrid",
       {{"zero_field", hp.zero_field},
        {"gamma_e", hp.gamma_e},
        {"field", hp.field},
        {"quadrupole", hp.quadrupole},
        {"gamma_n", hp.gamma_n},
        {"hyperfine", hp.hyperfine},
        {"duration", kCrotDuration},
        {"eta", kCrotEta},
        {"echo", true},
        {"selectivity", "secular"},
        {"substeps", std::int64_t{4}},
        {"t2star", kT2Star},
        {"t2_echo", kT2Echo},
        {"n_traj", std::int64_t{1000}}}},
  };
}

ExperimentConfig make_config(const std::string& experiment, const json& user,
                             const std::vector<std::string>& overrides, std::optional<std::uint64_t> seed) {
  json values = default_config();
  if (!user.is_null()) merge_into(values, user, "");
  for (const auto& o : overrides) merge_into(values, parse_override(o), "");
  if (!experiment.empty()) values["experiment"] = experiment;
  if (seed) values["rng_seed"] = *seed;
  const std::string id = values["experiment"].get<std::string>();
  if (std::find(experiment_names().begin(), experiment_names().end(), id) == experiment_names().end())
    throw UnknownExperimentError("unknown experiment '" + id + "'");
  ExperimentConfig config{std::move(values)};
  validate_config(config);
  return config;
}

json load_config_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: " + path.string() + " is not valid JSON");
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  return j;
}

std::uint64_t config_hash(const json& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const json& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config_hash(config)));
  return buf;
}

void validate_config(const ExperimentConfig& config) {
  const View c{config.values};
  try {
    const int n = c.n_samples();
    if (n < 64 || n % 2 != 0) throw ConfigError("config: n_samples must be even and >= 64");
    if (c.steps() < n || c.steps() % 2 != 0) throw ConfigError("config: steps must be even and >= n_samples");
    if (c.n_traj() < 1) throw ConfigError("config: n_traj must be >= 1");
    if (!(c.omega_max() > 0.0)) throw ConfigError("config: rabi_max_hz must be > 0");
    c.noise().validate();
    c.readout().validate();
    c.readout_mode();
    normalize_amplitude(c.gate(c.d("trajectory", "eta")), Scheme::kNhqcPlus).validate();
    normalize_amplitude(c.gate(c.d("robustness", "eta")), Scheme::kNhqcBaseline).validate();
    if (!(c.d("robustness", "alpha_step") > 0.0) || c.d("robustness", "alpha_min") > c.d("robustness", "alpha_max") ||
        !(c.d("robustness", "alpha_min") > -1.0))
      throw ConfigError("config: invalid robustness grid");
    if (!(c.d("sensitivity", "eta_step") > 0.0) || !(c.d("sensitivity", "eta_min") > 0.0) ||
        c.d("sensitivity", "eta_min") > c.d("sensitivity", "eta_max"))
      throw ConfigError("config: invalid sensitivity grid");
    gate_by_name(c.s("decay", "gate"), c.d("decay", "eta"), c.omega_max());
    c.decay_branch();
    if (c.i("decay", "n_max") < 10) throw ConfigError("config: decay.n_max must be >= 10");
    const double p = c.d("decay", "per_gate_p");
    if (!(p >= 0.0 && p <= 0.5)) throw ConfigError("config: decay.per_gate_p outside [0, 1/2]");
    gate_by_name("X", c.d("qpt", "eta"), c.omega_max());
    const auto names = split_names(c.s("waveform", "gates"));
    if (names.empty()) throw ConfigError("config: waveform.gates is empty");
    for (const auto& name : names) gate_by_name(name, c.d("waveform", "eta"), c.omega_max());
    c.hybrid().validate();
    if (c.i("hybrid", "n_traj") < 1) throw ConfigError("config: hybrid.n_traj must be >= 1");
    c.crot_noise();
    if (config.experiment() == "crot") c.crot();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const View c{config.values};
  const std::string id = config.experiment();
  ExperimentResult r;
  if (id == "trajectory") r = run_trajectory(c);
  else if (id == "robustness") r = run_robustness(c);
  else if (id == "qpt") r = run_qpt(c);
  else if (id == "decay") r = run_decay(c);
  else if (id == "crot") r = run_crot(c);
  else if (id == "sensitivity") r = run_sensitivity(c);
  else if (id == "waveform") r = run_waveform(c);
  else throw UnknownExperimentError("unknown experiment '" + id + "'");
  r.config_hash = config_hash_hex(config.values);
  return r;
}

void write_result(const ExperimentResult& result, const ExperimentConfig& config,
                  const std::filesystem::path& out_dir, double wall_seconds, int threads) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  json files = json::array();
  for (const auto& f : result.files) {
    write_text_file(out_dir / f.name, f.contents);
    files.push_back(f.name);
  }
  json meta{{"schema_version", kSchemaVersion},
            {"experiment", result.experiment},
            {"config_hash", result.config_hash},
            {"config", config.values},
            {"code_version", kCodeVersion},
            {"wall_time_s", wall_seconds},
            {"threads", threads},
            {"files", files}};
  write_text_file(out_dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace holosim
